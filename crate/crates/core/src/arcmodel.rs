//! Circular-arc model synthesis and verification.
//!
//! The synthesis direction reads an interval model of the companion graph
//! and folds it around the circle: outside vertices keep their intervals,
//! members merge their two copies, and members whose reach wraps get the
//! arc running from their right copy through the point 1 into their left
//! copy.  Chordal positives take a shortcut, embedding an interval model
//! of the host directly with the point 1 left uncovered.
//!
//! The verification direction is independent of synthesis: it rechecks a
//! model against the host graph edge by edge and hunts for one, two, or
//! three arcs covering the whole circle, which is exactly what separates
//! a plain circular-arc model from a normal Helly one.

use num::rational::Ratio;
use num::{One, Zero};
use serde_json::{json, Value};

use crate::auxgraph::{AuxGraph, Side};
use crate::graph::Graph;
use crate::interval::IntervalModel;

type Q = Ratio<i64>;

/// Closed arcs `[ccw[v], cw[v]]`, run clockwise from the counterclockwise
/// end; an arc with `cw < ccw` wraps through the point 1.  All endpoints
/// lie in `(0, 1]` and are pairwise distinct; vertices are adjacent
/// exactly when their arcs intersect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularArcModel {
    pub ccw: Vec<Q>,
    pub cw: Vec<Q>,
}

/// Outcome of checking a model against its host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelCheck {
    /// Intersection graph matches and no three or fewer arcs cover the
    /// circle: the model is a normal Helly one.
    Ok,
    /// The named arcs cover the whole circle; pairs are reported before
    /// any triple, ascending.
    Cover(Vec<u32>),
    /// Adjacency and arc intersection disagree on this vertex pair.
    Mismatch(u32, u32),
}

fn mod1(x: Q) -> Q {
    x - x.floor()
}

impl CircularArcModel {
    /// Arc length measured clockwise, in `(0, 1)`.
    fn len(&self, v: usize) -> Q {
        mod1(self.cw[v] - self.ccw[v])
    }

    /// Whether the closed arc of `v` contains the point `p`.
    pub fn contains(&self, v: u32, p: Q) -> bool {
        mod1(p - self.ccw[v as usize]) <= self.len(v as usize)
    }

    /// Whether the arcs of `a` and `b` intersect.  Two closed arcs meet
    /// exactly when one contains the start of the other.
    pub fn intersects(&self, a: u32, b: u32) -> bool {
        self.contains(a, self.ccw[b as usize]) || self.contains(b, self.ccw[a as usize])
    }

    /// Serializes the model in the exchange shape
    /// `{"circle": 1, "arcs": [{"v": id, "ccw": "p/q", "cw": "p/q"}]}`.
    pub fn to_json(&self) -> Value {
        let arcs: Vec<Value> = (0..self.ccw.len())
            .map(|v| {
                json!({
                    "v": v,
                    "ccw": format!("{}/{}", self.ccw[v].numer(), self.ccw[v].denom()),
                    "cw": format!("{}/{}", self.cw[v].numer(), self.cw[v].denom()),
                })
            })
            .collect();
        json!({ "circle": 1, "arcs": arcs })
    }
}

/// Reorients and rescales an interval model of the companion graph so the
/// canonical anchor-to-right-copies path runs left to right, the anchor
/// interval ends at 0, and the rightmost outside interval ends at 1.
///
/// The remap is a rank map on endpoints, so it is order-preserving and
/// keeps all endpoints distinct; the result deliberately extends beyond
/// `(0, 1)` on both sides, which is why it must not be range-checked.
pub fn normalize_interval_model(aux: &AuxGraph, im: &IntervalModel) -> IntervalModel {
    let nn = im.lp.len();
    debug_assert_eq!(nn, aux.omega.n());
    let w = aux.w as usize;
    let h0r = aux.right_of(aux.center()) as usize;
    let (mut lp, mut rp) = (im.lp.clone(), im.rp.clone());
    if lp[w] > lp[h0r] {
        // Mirrored: the anchor sits right of the far copies, flip the axis.
        for v in 0..nn {
            let (l, r) = (lp[v], rp[v]);
            lp[v] = -r;
            rp[v] = -l;
        }
    }
    let mut ends: Vec<Q> = lp.iter().chain(rp.iter()).copied().collect();
    ends.sort_unstable();
    let rank = |x: Q| ends.binary_search(&x).expect("endpoint vanished") as i64;
    let r0 = rank(rp[w]);
    let r1 = (0..nn)
        .filter(|&v| aux.side[v] == Side::Tbar)
        .map(|v| rank(rp[v]))
        .max()
        .expect("no outside vertex");
    debug_assert!(r0 < r1);
    let map = |x: Q| Q::new(rank(x) - r0, r1 - r0);
    IntervalModel {
        lp: lp.iter().map(|&x| map(x)).collect(),
        rp: rp.iter().map(|&x| map(x)).collect(),
    }
}

/// Builds a circular-arc model of the host graph from an aligned interval
/// model of its companion graph.  The anchor interval is dropped; outside
/// vertices keep their intervals, wrapping members run from their right
/// copy's start through 1 to their left copy's end, and all other members
/// keep their left copy's interval.
///
/// Panics if the aligned model violates the placement facts the folding
/// relies on; that indicates a misbuilt companion model, not bad input.
pub fn build_ca_model(aux: &AuxGraph, im: &IntervalModel) -> CircularArcModel {
    let n = aux.t.len();
    let zero = Q::zero();
    let one = Q::one();
    let a = im.rp[aux.left_of(aux.center()) as usize];
    assert!(zero < a && a < one, "center copy out of place");
    let mut ccw = Vec::with_capacity(n);
    let mut cw = Vec::with_capacity(n);
    for x in 0..n as u32 {
        let (s, e) = if !aux.t[x as usize] {
            let u = aux.kept_of(x) as usize;
            assert!(a < im.lp[u] && im.rp[u] <= one, "outside interval escapes (a, 1]");
            (im.lp[u], im.rp[u])
        } else if aux.tcc[x as usize] {
            let (l, r) = (aux.left_of(x) as usize, aux.right_of(x) as usize);
            assert!(im.lp[l] < zero, "wrapping member does not reach the anchor");
            assert!(zero < im.rp[l] && im.lp[r] < one, "wrapping member out of place");
            assert!(im.rp[l] < im.lp[r], "member copies out of order");
            (im.lp[r], im.rp[l])
        } else {
            let l = aux.left_of(x) as usize;
            assert!(zero < im.lp[l] && im.rp[l] < one, "member interval out of place");
            (im.lp[l], im.rp[l])
        };
        ccw.push(s);
        cw.push(e);
    }
    CircularArcModel { ccw, cw }
}

/// Embeds an interval model as a circular-arc model; the point 1 stays
/// uncovered, so the result is trivially normal and Helly.
pub fn interval_to_ca(im: &IntervalModel) -> CircularArcModel {
    CircularArcModel { ccw: im.lp.clone(), cw: im.rp.clone() }
}

/// Checks a model against the host graph: adjacency must equal arc
/// intersection, and no one, two, or three arcs may cover the circle.
/// Cover sets come back smallest first, each ascending; an adjacency
/// disagreement is reported before any cover search.
pub fn verify_model(g: &Graph, model: &CircularArcModel) -> ModelCheck {
    let n = g.n();
    assert_eq!(n, model.ccw.len(), "model size does not match the graph");
    if n == 0 {
        return ModelCheck::Ok;
    }
    let s: Vec<Q> = (0..n).map(|v| mod1(model.ccw[v])).collect();
    let e: Vec<Q> = (0..n).map(|v| s[v] + model.len(v)).collect();
    let c: Vec<Q> = (0..n).map(|v| mod1(model.cw[v])).collect();
    {
        let mut all: Vec<&Q> = s.iter().chain(c.iter()).collect();
        all.sort_unstable();
        assert!(
            all.windows(2).all(|w| w[0] != w[1]),
            "model endpoints must be pairwise distinct"
        );
    }

    // Adjacency against intersection.  Two closed arcs meet exactly when
    // one contains the start of the other, so scanning the sorted start
    // list over each arc's span enumerates every intersecting pair while
    // charging the work to graph edges (any non-edge aborts the scan).
    let mut starts: Vec<(Q, u32)> = s.iter().cloned().zip(0..n as u32).collect();
    starts.sort_unstable();
    let one = Q::from_integer(1);
    let zero = Q::from_integer(0);
    let mut found: Vec<(u32, u32)> = Vec::new();
    for u in 0..n as u32 {
        let (lo, hi) = (s[u as usize], e[u as usize]);
        // A wrapping span splits into two sorted ranges; starts never
        // reach 1, so `one` is a safe inclusive bound for the first.
        let ranges: [(Q, Q); 2] =
            if hi < one { [(lo, hi), (one, zero)] } else { [(lo, one), (zero, hi - 1)] };
        for (a, b) in ranges {
            if a > b {
                continue;
            }
            let i0 = starts.partition_point(|(x, _)| *x < a);
            for (x, v) in &starts[i0..] {
                if *x > b {
                    break;
                }
                if *v != u {
                    if !g.adjacent(u, *v) {
                        return ModelCheck::Mismatch(u.min(*v), u.max(*v));
                    }
                    found.push((u.min(*v), u.max(*v)));
                }
            }
        }
    }
    found.sort_unstable();
    found.dedup();
    if found.len() != g.m() {
        for (u, v) in g.edges() {
            if found.binary_search(&(u, v)).is_err() {
                return ModelCheck::Mismatch(u, v);
            }
        }
    }

    // Farthest clockwise reach over each gap start.  Arcs are unrolled to
    // two linear copies on [0, 2); a sweep with a lazy max-heap answers,
    // for every point cw[u], which arc containing it reaches farthest.
    // All reported reaches are distinct (ends have distinct residues), so
    // the table is deterministic.
    let mut ev: Vec<(Q, u8, u32)> = Vec::with_capacity(4 * n);
    for v in 0..n as u32 {
        for k in 0..2i64 {
            ev.push((s[v as usize] + k, 0, v));
            ev.push((c[v as usize] + k, 1, v));
        }
    }
    ev.sort_unstable();
    let mut heap: std::collections::BinaryHeap<(Q, u32)> = std::collections::BinaryHeap::new();
    let mut reach: Vec<Option<(Q, u32)>> = vec![None; n];
    for (x, kind, v) in ev {
        if kind == 0 {
            let k: i64 = if x >= one { 1 } else { 0 };
            heap.push((e[v as usize] + k, v));
        } else {
            while heap.peek().is_some_and(|(top, _)| *top < x) {
                heap.pop();
            }
            if let Some((top, owner)) = heap.peek() {
                let r = top - &x;
                if reach[v as usize].as_ref().is_none_or(|(best, _)| *best < r) {
                    reach[v as usize] = Some((r, *owner));
                }
            }
        }
    }

    // A pair covers exactly when one arc spans the other's gap; pairs are
    // reported before any triple, by ascending gap owner.
    for u in 0..n {
        if let Some((r, v)) = &reach[u] {
            if *r >= one - model.len(u) && *v != u as u32 {
                let mut set = vec![u as u32, *v];
                set.sort_unstable();
                return ModelCheck::Cover(set);
            }
        }
    }
    // Greedy two-jump closure of each gap; the max-reach table makes the
    // second jump a lookup at the first jump's landing point cw[v1].
    for u in 0..n {
        let Some((r1, v1)) = &reach[u] else { continue };
        if *v1 == u as u32 || *r1 == Q::from_integer(0) {
            continue;
        }
        let Some((r2, v2)) = &reach[*v1 as usize] else { continue };
        if *v2 == *v1 || *v2 == u as u32 {
            continue;
        }
        if r1 + r2 >= one - model.len(u) {
            let mut set = vec![u as u32, *v1, *v2];
            set.sort_unstable();
            return ModelCheck::Cover(set);
        }
    }
    ModelCheck::Ok
}
