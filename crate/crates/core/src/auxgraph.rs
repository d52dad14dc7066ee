//! The companion graph that reduces hole-centred recognition to interval
//! recognition.
//!
//! Fixing a hole and its frame, the closed neighborhood of `h_0` is the
//! member set `T`; everything else keeps a single copy.  Each `v ∈ T` is
//! split into a left copy `v^l` holding its clockwise contacts and a right
//! copy `v^r` holding the counterclockwise ones, and an anchor vertex `w`
//! is attached to the left copies of members whose reach wraps past the
//! far side of the hole.  On intended inputs the companion graph is an
//! interval graph precisely when the host graph has a normal Helly
//! circular-arc model, and every structural failure met along the way is
//! converted into a minimal forbidden induced subgraph.
//!
//! Besides the builder, this module houses the two structural guards the
//! companion graph is subject to: members linked counterclockwise (or
//! clockwise) must be pairwise adjacent, and no left copy may come within
//! distance 3 of its right copy.  Violations of either are turned into
//! witnesses here, close to the frame arithmetic they depend on.

use crate::catalog::{small_fis_search, FisWitness};
use crate::graph::Graph;
use crate::holeframe::{checked_wheel, cover_to_wheel, disjoint_pair_fis, HoleFrame};

/// Role of a companion-graph vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Left copy `v^l` of a member of `T`.
    L,
    /// Right copy `v^r` of a member of `T`.
    R,
    /// A vertex outside `T`, carried over as it is.
    Tbar,
    /// The anchor vertex `w`.
    W,
}

/// Direction of an edge between a member of `T` and an outside vertex,
/// relative to the hole orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeDir {
    /// The outside endpoint meets `{h_1, ..., h_head(v)}`.
    Clockwise,
    /// The outside endpoint meets `{h_tail(v), ..., h_-1}`.
    Counterclockwise,
}

/// The companion graph together with its back-maps onto the host graph.
#[derive(Debug)]
pub struct AuxGraph {
    /// The companion graph itself.
    pub omega: Graph,
    /// Host vertex each companion vertex is derived from; `u32::MAX` for `w`.
    pub phi: Vec<u32>,
    /// Role of each companion vertex.
    pub side: Vec<Side>,
    /// Host-indexed membership in `T = N[h_0]`.
    pub t: Vec<bool>,
    /// Members of `T` with a clockwise outside link.
    pub tc: Vec<bool>,
    /// Members of `T` with a counterclockwise outside link; their arcs
    /// must wrap, so their left copies are tied to the anchor.
    pub tcc: Vec<bool>,
    /// Clockwise edges as `(member, outside)` pairs, in host-edge order.
    pub ec: Vec<(u32, u32)>,
    /// Counterclockwise edges as `(member, outside)` pairs.
    pub ecc: Vec<(u32, u32)>,
    /// The anchor vertex of the companion graph.
    pub w: u32,
    kept: Vec<u32>,
    left: Vec<u32>,
    right: Vec<u32>,
    h0: u32,
}

impl AuxGraph {
    /// Companion id of `v^l`; panics if `v` is not a member of `T`.
    pub fn left_of(&self, v: u32) -> u32 {
        assert!(self.t[v as usize], "{v} has no left copy");
        self.left[v as usize]
    }

    /// Companion id of `v^r`; panics if `v` is not a member of `T`.
    pub fn right_of(&self, v: u32) -> u32 {
        assert!(self.t[v as usize], "{v} has no right copy");
        self.right[v as usize]
    }

    /// Companion id of an outside vertex; panics for members of `T`.
    pub fn kept_of(&self, u: u32) -> u32 {
        assert!(!self.t[u as usize], "{u} was split, not kept");
        self.kept[u as usize]
    }

    /// Host vertex behind a companion vertex, if it has one.
    pub fn phi_of(&self, x: u32) -> Option<u32> {
        (x != self.w).then(|| self.phi[x as usize])
    }

    /// The hole vertex the member set is centered on.
    pub fn center(&self) -> u32 {
        self.h0
    }
}

/// Classifies the edge between member `v` and outside vertex `u` by which
/// side of `v`'s reach the outside vertex touches.  Touching both sides
/// means the two closed hole neighborhoods cover the whole hole, touching
/// neither means they are disjoint; both degenerations certify a forbidden
/// subgraph instead of a direction.
pub fn classify_edge(g: &Graph, frame: &HoleFrame, v: u32, u: u32) -> Result<EdgeDir, FisWitness> {
    debug_assert!(g.adjacent(u, v) && frame.in_center(v) && !frame.in_center(u));
    let k = frame.len() as i64;
    let cw = (frame.tail(u) as i64) <= frame.head(v) as i64;
    let ccw = (frame.head(u) as i64) >= frame.tail(v) as i64 + k;
    match (cw, ccw) {
        (true, true) => Err(cover_to_wheel(g, frame, &[v, u])
            .expect("reaches meeting on both sides close a verified wheel")),
        (false, false) => Err(disjoint_pair_fis(g, frame, u, v)),
        (true, false) => Ok(EdgeDir::Clockwise),
        (false, true) => Ok(EdgeDir::Counterclockwise),
    }
}

/// Builds the companion graph over a normalized frame, or reports the
/// forbidden subgraph found while classifying the member-to-outside edges.
///
/// The vertex layout is deterministic: outside vertices in ascending host
/// order, then all left copies, then all right copies, then the anchor.
pub fn build_aux(g: &Graph, frame: &HoleFrame) -> Result<AuxGraph, FisWitness> {
    let n = g.n();
    // A vertex reaching both cyclic sides of h_0 reaches nothing else:
    // the frame must have been normalized.
    debug_assert!((0..n as u32).all(|v| {
        frame.tail(v) > -1 || frame.head(v) < 1 || (frame.tail(v), frame.head(v)) == (-1, 1)
    }));
    let t: Vec<bool> = (0..n as u32).map(|v| frame.in_center(v)).collect();
    let mut tc = vec![false; n];
    let mut tcc = vec![false; n];
    let mut ec = Vec::new();
    let mut ecc = Vec::new();
    let mut inner = 0usize;
    for (a, b) in g.edges() {
        match (t[a as usize], t[b as usize]) {
            (true, true) => inner += 1,
            (false, false) => {}
            _ => {
                let (v, u) = if t[a as usize] { (a, b) } else { (b, a) };
                match classify_edge(g, frame, v, u)? {
                    EdgeDir::Clockwise => {
                        tc[v as usize] = true;
                        ec.push((v, u));
                    }
                    EdgeDir::Counterclockwise => {
                        tcc[v as usize] = true;
                        ecc.push((v, u));
                    }
                }
            }
        }
    }
    // h_0 has no outside neighbor at all, and the canonical index ranges
    // pin the link directions of its two hole neighbors.
    let (h0, h1, hm1) = (frame.at(0), frame.at(1), frame.at(-1));
    debug_assert!(!tc[h0 as usize] && !tcc[h0 as usize]);
    debug_assert!(tc[h1 as usize] && !tcc[h1 as usize]);
    debug_assert!(tcc[hm1 as usize] && !tc[hm1 as usize]);

    let nt = t.iter().filter(|&&x| x).count();
    let mut phi: Vec<u32> = Vec::with_capacity(n + nt + 1);
    let mut side: Vec<Side> = Vec::with_capacity(n + nt + 1);
    let mut kept = vec![u32::MAX; n];
    let mut left = vec![u32::MAX; n];
    let mut right = vec![u32::MAX; n];
    for u in 0..n as u32 {
        if !t[u as usize] {
            kept[u as usize] = phi.len() as u32;
            phi.push(u);
            side.push(Side::Tbar);
        }
    }
    for v in 0..n as u32 {
        if t[v as usize] {
            left[v as usize] = phi.len() as u32;
            phi.push(v);
            side.push(Side::L);
        }
    }
    for v in 0..n as u32 {
        if t[v as usize] {
            right[v as usize] = phi.len() as u32;
            phi.push(v);
            side.push(Side::R);
        }
    }
    let w = phi.len() as u32;
    phi.push(u32::MAX);
    side.push(Side::W);

    let mut omega = Graph::new(phi.len());
    for (a, b) in g.edges() {
        match (t[a as usize], t[b as usize]) {
            (true, true) => {
                omega.add_edge(left[a as usize], left[b as usize]);
                omega.add_edge(right[a as usize], right[b as usize]);
            }
            (false, false) => omega.add_edge(kept[a as usize], kept[b as usize]),
            _ => {}
        }
    }
    for &(v, u) in &ec {
        omega.add_edge(kept[u as usize], left[v as usize]);
    }
    for &(v, u) in &ecc {
        omega.add_edge(kept[u as usize], right[v as usize]);
    }
    for v in 0..n {
        if tcc[v] {
            omega.add_edge(w, left[v]);
        }
    }

    debug_assert!(omega.n() <= 2 * n && omega.m() <= 2 * g.m());
    debug_assert_eq!(omega.m(), g.m() + inner + tcc.iter().filter(|&&x| x).count());
    #[cfg(debug_assertions)]
    for v in 0..n {
        if t[v] {
            // The copies share no neighbor, which keeps them at distance 3
            // or more in the companion graph.
            let rv = right[v];
            debug_assert!(!omega.neighbors(left[v]).iter().any(|&x| omega.adjacent(x, rv)));
        }
    }
    Ok(AuxGraph { omega, phi, side, t, tc, tcc, ec, ecc, w, kept, left, right, h0 })
}

/// Outcome of the sector clique guard.
#[derive(Debug)]
pub enum SectorCheck {
    /// Both link sectors are cliques; the companion construction stands.
    Clean,
    /// A sector violation was converted into a forbidden subgraph.
    Witness(FisWitness),
    /// A sector violation exists between the named members but no local
    /// witness verified; the caller must fall back to a global search.
    Violated(u32, u32),
}

/// Checks that the counterclockwise-linked and the clockwise-linked
/// members each induce a clique in the host graph.  A nonadjacent pair in
/// a sector refutes any normal Helly model, and the guard pins that down
/// to a forbidden subgraph among the pair, one outside partner of each,
/// and a four-vertex window of the hole around `h_0`.
pub fn check_sector_cliques(g: &Graph, frame: &HoleFrame, aux: &AuxGraph) -> SectorCheck {
    for ccw_sector in [true, false] {
        let mask = if ccw_sector { &aux.tcc } else { &aux.tc };
        let members: Vec<u32> = (0..g.n() as u32).filter(|&v| mask[v as usize]).collect();
        let mut bad = None;
        'scan: for (i, &u) in members.iter().enumerate() {
            for &x in &members[i + 1..] {
                if !g.adjacent(u, x) {
                    bad = Some((u, x));
                    break 'scan;
                }
            }
        }
        let Some((u, x)) = bad else { continue };
        let links = if ccw_sector { &aux.ecc } else { &aux.ec };
        let partners = |m: u32| {
            let mut ps: Vec<u32> = links.iter().filter(|&&(v, _)| v == m).map(|&(_, p)| p).collect();
            ps.sort_unstable();
            ps
        };
        let (pu, px) = (partners(u), partners(x));
        let common = pu.iter().find(|p| px.binary_search(p).is_ok());
        let (v, y) = match common {
            Some(&c) => (c, c),
            None => (pu[0], px[0]),
        };
        // Members reaching both cyclic neighbors of h_0 reach exactly
        // those, so the pair with the hole window closes a wheel on h_0.
        if [u, x].iter().all(|&m| frame.covers(m, -1) && frame.covers(m, 1)) {
            let cyc = vec![u, frame.at(-1), x, frame.at(1)];
            if let Some(wit) = checked_wheel(g, cyc, frame.at(0)) {
                return SectorCheck::Witness(wit);
            }
        }
        let window: [i64; 4] = if ccw_sector { [-1, 0, 1, 2] } else { [-2, -1, 0, 1] };
        let mut cands = vec![u, x, v, y];
        cands.extend(window.iter().map(|&i| frame.at(i)));
        return match small_fis_search(g, &cands) {
            Some(wit) => SectorCheck::Witness(wit),
            None => SectorCheck::Violated(u, x),
        };
    }
    SectorCheck::Clean
}

/// Resolves an induced companion path `(v^l, p1, p2, v^r)` of length 3
/// into a forbidden subgraph.  Such a path refutes any normal Helly model
/// because the two copies of `v` would have to meet around the circle.
///
/// Panics if the slice is not an induced path between the two copies of
/// one member, or if it runs through the anchor.
pub fn short_path_fis(g: &Graph, frame: &HoleFrame, aux: &AuxGraph, p: &[u32; 4]) -> FisWitness {
    let k = frame.len() as i64;
    assert!(p.iter().all(|&x| x != aux.w), "path through the anchor");
    assert!(
        aux.side[p[0] as usize] == Side::L
            && aux.side[p[3] as usize] == Side::R
            && aux.phi[p[0] as usize] == aux.phi[p[3] as usize],
        "endpoints are not the two copies of one member"
    );
    let om = &aux.omega;
    assert!(
        om.adjacent(p[0], p[1])
            && om.adjacent(p[1], p[2])
            && om.adjacent(p[2], p[3])
            && !om.adjacent(p[0], p[2])
            && !om.adjacent(p[1], p[3])
            && !om.adjacent(p[0], p[3]),
        "not an induced path"
    );
    let v = aux.phi[p[0] as usize];
    let (tv, hv) = (frame.tail(v) as i64, frame.head(v) as i64);
    match (aux.side[p[1] as usize], aux.side[p[2] as usize]) {
        (Side::Tbar, Side::Tbar) => {
            // Links on both sides force the tight straddle around h_0, and
            // the classification bounds both outside reaches away from it.
            let (x, y) = (aux.phi[p[1] as usize], aux.phi[p[2] as usize]);
            debug_assert_eq!((tv, hv), (-1, 1));
            let (hx, ty) = (frame.head(x) as i64, frame.tail(y) as i64);
            debug_assert!(hx < k - 1 && ty > 1);
            if hx < ty {
                disjoint_pair_fis(g, frame, x, y)
            } else {
                // The far stretch from x's end closes a hole through v and
                // x, and y sees all of it.
                rim_wheel(g, frame, &[v, x], hx, k - 1, &[], y)
                    .expect("overlapping side reaches close a wheel on the far stretch")
            }
        }
        (Side::Tbar, Side::R) => {
            let (x, u) = (aux.phi[p[1] as usize], aux.phi[p[2] as usize]);
            let (tu, hu) = (frame.tail(u) as i64, frame.head(u) as i64);
            debug_assert!(tu < tv && hu < hv);
            if joint_cover(frame, u, v) {
                if let Some(wit) = cover_to_wheel(g, frame, &[v, u]) {
                    return wit;
                }
            }
            debug_assert!(hv < tu + k);
            rim_wheel(g, frame, &[v], hv, tu + k, &[u], x)
                .expect("the stretch between the two heads closes a wheel under x")
        }
        (Side::L, Side::Tbar) => {
            let (u, y) = (aux.phi[p[1] as usize], aux.phi[p[2] as usize]);
            let (tu, hu) = (frame.tail(u) as i64, frame.head(u) as i64);
            debug_assert!(tu > tv && hu > hv);
            if joint_cover(frame, u, v) {
                if let Some(wit) = cover_to_wheel(g, frame, &[v, u]) {
                    return wit;
                }
            }
            debug_assert!(hu < tv + k);
            rim_wheel(g, frame, &[u], hu, tv + k, &[v], y)
                .expect("the stretch between the two tails closes a wheel under y")
        }
        _ => unreachable!("no induced copy-to-copy path has this shape"),
    }
}

/// Whether the closed hole neighborhoods of `a` and `b` jointly cover the
/// hole, tested as `a` containing the stretch `b` leaves open.
pub(crate) fn joint_cover(frame: &HoleFrame, a: u32, b: u32) -> bool {
    let k = frame.len() as i64;
    frame.covers_range(a, frame.head(b) as i64 + 1, frame.tail(b) as i64 + k - 1)
}

/// Wheel attempt over the cycle `pre + hole[from..=to] + post` with `hub`.
fn rim_wheel(
    g: &Graph,
    frame: &HoleFrame,
    pre: &[u32],
    from: i64,
    to: i64,
    post: &[u32],
    hub: u32,
) -> Option<FisWitness> {
    debug_assert!(from <= to);
    let mut cyc = pre.to_vec();
    cyc.extend((from..=to).map(|i| frame.at(i)));
    cyc.extend_from_slice(post);
    checked_wheel(g, cyc, hub)
}

/// DOT rendering of the companion graph, labeling each vertex with its
/// host vertex and side, for debugging dumps.
pub fn aux_dot(aux: &AuxGraph) -> String {
    let mut out = String::from("graph companion {\n");
    for x in aux.omega.vertices() {
        let label = match aux.side[x as usize] {
            Side::W => "w".to_string(),
            s => {
                let tag = match s {
                    Side::L => "L",
                    Side::R => "R",
                    _ => "Tbar",
                };
                format!("g:{}/{}", aux.phi[x as usize], tag)
            }
        };
        out.push_str(&format!("  v{x} [label=\"{label}\"];\n"));
    }
    for (a, b) in aux.omega.edges() {
        out.push_str(&format!("  v{a} -- v{b};\n"));
    }
    out.push_str("}\n");
    out
}
