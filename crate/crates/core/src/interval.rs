//! Interval-graph recognition with certificates: a model with rational
//! endpoints inside (0, 1) for yes-instances, an inclusion-minimal
//! obstruction otherwise.
//!
//! Non-chordal inputs fail fast with a hole, which is already minimal. For
//! chordal inputs the maximal cliques are read off the elimination order and
//! a PQ-tree searches for a clique order in which every vertex's cliques are
//! consecutive; endpoints are then assigned in one walk over that order, so
//! the model is integral before scaling and adjacency matches overlap
//! exactly.

use crate::chordal;
use crate::graph::{induced_subgraph, minimalize_set, Graph};
use crate::pq::PqTree;
use num::rational::Ratio;

/// Closed intervals `[lp[v], rp[v]]`, all `2n` endpoints distinct and
/// strictly inside `(0, 1)`; vertices are adjacent exactly when their
/// intervals intersect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    pub lp: Vec<Ratio<i64>>,
    pub rp: Vec<Ratio<i64>>,
}

/// Inclusion-minimal non-interval set: either a chordless cycle, listed in
/// cyclic order, or a chordal set containing an asteroidal triple, listed in
/// ascending id order. Deleting any single vertex leaves an interval graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonIntervalWitness {
    Hole(Vec<u32>),
    Asteroidal(Vec<u32>),
}

impl IntervalModel {
    /// Checks this model against `g`: endpoints sane and pairwise distinct,
    /// and adjacency equivalent to interval overlap, established by a sweep
    /// that charges every overlapping pair to an edge. O((n + m) log n).
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let n = g.n();
        if self.lp.len() != n || self.rp.len() != n {
            return Err("endpoint vectors do not match the vertex count".into());
        }
        let zero = Ratio::new(0, 1);
        let one = Ratio::new(1, 1);
        for v in 0..n {
            if self.lp[v] <= zero || self.rp[v] >= one {
                return Err(format!("interval of {v} leaves (0, 1)"));
            }
            if self.lp[v] >= self.rp[v] {
                return Err(format!("interval of {v} is empty"));
            }
        }
        let mut events: Vec<(Ratio<i64>, bool, u32)> = Vec::with_capacity(2 * n);
        for v in 0..n {
            events.push((self.lp[v], false, v as u32));
            events.push((self.rp[v], true, v as u32));
        }
        events.sort();
        for w in events.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(format!("endpoints of {} and {} coincide", w[0].2, w[1].2));
            }
        }
        // An interval overlaps exactly the intervals active at its left
        // endpoint plus those opened before it closes, so enumerating active
        // sets at openings visits every overlapping pair once.
        let mut active: Vec<u32> = Vec::new();
        let mut where_in_active = vec![u32::MAX; n];
        let mut pairs: usize = 0;
        for &(_, closes, v) in &events {
            if closes {
                let i = where_in_active[v as usize] as usize;
                active.swap_remove(i);
                if i < active.len() {
                    where_in_active[active[i] as usize] = i as u32;
                }
            } else {
                pairs += active.len();
                if pairs > g.m() {
                    return Err("more overlapping pairs than edges".into());
                }
                for &u in &active {
                    if !g.adjacent(u, v) {
                        return Err(format!("{u} and {v} overlap without an edge"));
                    }
                }
                where_in_active[v as usize] = active.len() as u32;
                active.push(v);
            }
        }
        if pairs < g.m() {
            for (u, v) in g.edges() {
                let (ui, vi) = (u as usize, v as usize);
                if self.lp[ui] > self.rp[vi] || self.lp[vi] > self.rp[ui] {
                    return Err(format!("{u} and {v} are adjacent but disjoint"));
                }
            }
            unreachable!("pair count below m requires a disjoint edge");
        }
        Ok(())
    }
}

/// True exactly when `g` is an interval graph.
pub fn is_interval(g: &Graph) -> bool {
    try_model(g).is_ok()
}

/// Decides interval-ness, producing a model or a minimal obstruction.
pub fn recognize_interval(g: &Graph) -> Result<IntervalModel, NonIntervalWitness> {
    match try_model(g) {
        Ok(model) => {
            debug_assert!(model.check(g).is_ok());
            Ok(model)
        }
        Err(Fail::Chordless(w)) => Err(NonIntervalWitness::Hole(chordal::find_hole(g, &w))),
        Err(Fail::Cliques) => {
            let all: Vec<u32> = g.vertices().collect();
            let keep = minimalize_set(g, &all, &mut |sub| !is_interval(sub));
            debug_assert!(chordal::check_chordal(&induced_subgraph(g, &keep).0).is_ok());
            Err(NonIntervalWitness::Asteroidal(keep))
        }
    }
}

enum Fail {
    Chordless(chordal::ChordalWitness),
    Cliques,
}

fn try_model(g: &Graph) -> Result<IntervalModel, Fail> {
    let peo = chordal::check_chordal(g).map_err(Fail::Chordless)?;
    let cliques = maximal_cliques(g, &peo);
    let n = g.n();
    let k = cliques.len();
    let mut cliques_of: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            cliques_of[v as usize].push(i as u32);
        }
    }
    let mut tree = PqTree::new(k);
    for v in 0..n {
        if !tree.reduce(&cliques_of[v]) {
            return Err(Fail::Cliques);
        }
    }
    let order = tree.frontier();
    let mut slot = vec![0u32; k];
    for (i, &c) in order.iter().enumerate() {
        slot[c as usize] = i as u32;
    }
    let mut first = vec![u32::MAX; n];
    let mut last = vec![0u32; n];
    for v in 0..n {
        debug_assert!(!cliques_of[v].is_empty(), "every vertex lies in a maximal clique");
        for &c in &cliques_of[v] {
            first[v] = first[v].min(slot[c as usize]);
            last[v] = last[v].max(slot[c as usize]);
        }
        // The reductions above force each vertex's slots to be consecutive.
        debug_assert_eq!((last[v] - first[v]) as usize + 1, cliques_of[v].len());
    }
    let mut starts: Vec<Vec<u32>> = vec![Vec::new(); k];
    let mut ends: Vec<Vec<u32>> = vec![Vec::new(); k];
    for v in 0..n {
        starts[first[v] as usize].push(v as u32);
        ends[last[v] as usize].push(v as u32);
    }
    // Integer endpoints 1..=2n, slot by slot, left ends before right ends
    // within a slot: vertices sharing a clique get nested or crossing
    // integers there, vertices in disjoint slot ranges stay disjoint.
    let den = 2 * n as i64 + 1;
    let q = |x: i64| Ratio::new(x, den);
    let mut lp = vec![q(0); n];
    let mut rp = vec![q(0); n];
    let mut next: i64 = 1;
    for j in 0..k {
        for &v in &starts[j] {
            lp[v as usize] = q(next);
            next += 1;
        }
        for &v in &ends[j] {
            rp[v as usize] = q(next);
            next += 1;
        }
    }
    debug_assert_eq!(next, 2 * n as i64 + 1);
    Ok(IntervalModel { lp, rp })
}

/// Maximal cliques of a chordal graph, one candidate `{v} ∪ madj(v)` per
/// vertex with subsumed candidates discarded: candidate `p` is contained in
/// candidate `v` exactly when `p` is the earliest-eliminated member of
/// `madj(v)` and `madj(v)` has one more vertex than `madj(p)`. Members are
/// ascending; cliques are listed by reverse elimination position of their
/// defining vertex. Total size is at most n + m.
fn maximal_cliques(g: &Graph, peo: &[u32]) -> Vec<Vec<u32>> {
    let n = g.n();
    debug_assert_eq!(peo.len(), n);
    let mut pos = vec![0u32; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    let pos = &pos;
    let later = move |v: u32| {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| pos[u as usize] > pos[v as usize])
    };
    let mut discard = vec![false; n];
    for v in g.vertices() {
        let Some(p) = later(v).min_by_key(|&u| pos[u as usize]) else {
            continue;
        };
        if later(v).count() == later(p).count() + 1 {
            discard[p as usize] = true;
        }
    }
    let mut cliques = Vec::new();
    for &v in peo.iter().rev() {
        if discard[v as usize] {
            continue;
        }
        let mut c: Vec<u32> = later(v).collect();
        c.push(v);
        c.sort_unstable();
        cliques.push(c);
    }
    debug_assert!(cliques.iter().map(Vec::len).sum::<usize>() <= n + g.m());
    cliques
}
