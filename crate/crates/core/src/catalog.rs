//! The catalog of minimal forbidden induced subgraphs: ten fixed finite
//! graphs embedded from a data file, plus two parameterized shapes detected
//! structurally (a chordless cycle with a completely nonadjacent extra
//! vertex, and a chordless cycle with a dominating hub). The `other-LB` tag
//! covers minimal obstructions outside the fixed list; they are always
//! chordal non-interval graphs and are never produced by [`classify_fis`],
//! only assigned by callers that have verified minimality themselves.
//!
//! The edge lists are pinned by [`validate_catalog`] through their defining
//! properties (chordality, minimality, simplicial counts, the whipping-top
//! distance profile), so the data file is the single place to correct a
//! transcription without touching code.

use crate::chordal;
use crate::graph::{induced_subgraph, is_isomorphic_small, Graph};
use crate::interval::is_interval;
use std::collections::VecDeque;
use std::sync::OnceLock;

/// Family tags for minimal forbidden induced subgraphs. The first ten are
/// fixed finite graphs; `CStar` and `Wheel` are parameterized by a hole;
/// `OtherLb` covers the remaining chordal obstructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FisFamily {
    LongClaw,
    WhippingTop,
    DaggerNet,
    DoubleDagger,
    K23,
    TwinC5,
    Domino,
    C6Complement,
    Fis1,
    Fis2,
    CStar,
    Wheel,
    OtherLb,
}

impl FisFamily {
    /// Stable string form used in data files and JSON output.
    pub fn tag(self) -> &'static str {
        match self {
            FisFamily::LongClaw => "long-claw",
            FisFamily::WhippingTop => "whipping-top",
            FisFamily::DaggerNet => "dagger-net",
            FisFamily::DoubleDagger => "double-dagger",
            FisFamily::K23 => "K23",
            FisFamily::TwinC5 => "twin-C5",
            FisFamily::Domino => "domino",
            FisFamily::C6Complement => "C6-complement",
            FisFamily::Fis1 => "FIS-1",
            FisFamily::Fis2 => "FIS-2",
            FisFamily::CStar => "C-star",
            FisFamily::Wheel => "wheel",
            FisFamily::OtherLb => "other-LB",
        }
    }

    pub fn from_tag(tag: &str) -> Option<FisFamily> {
        FisFamily::all().into_iter().find(|f| f.tag() == tag)
    }

    pub fn all() -> [FisFamily; 13] {
        [
            FisFamily::LongClaw,
            FisFamily::WhippingTop,
            FisFamily::DaggerNet,
            FisFamily::DoubleDagger,
            FisFamily::K23,
            FisFamily::TwinC5,
            FisFamily::Domino,
            FisFamily::C6Complement,
            FisFamily::Fis1,
            FisFamily::Fis2,
            FisFamily::CStar,
            FisFamily::Wheel,
            FisFamily::OtherLb,
        ]
    }

    pub fn finite() -> [FisFamily; 10] {
        [
            FisFamily::LongClaw,
            FisFamily::WhippingTop,
            FisFamily::DaggerNet,
            FisFamily::DoubleDagger,
            FisFamily::K23,
            FisFamily::TwinC5,
            FisFamily::Domino,
            FisFamily::C6Complement,
            FisFamily::Fis1,
            FisFamily::Fis2,
        ]
    }
}

/// A classified forbidden set. `vertices` is ascending. For `CStar` the
/// `hole` lists the cycle in cyclic order and `apex` is the vertex with no
/// neighbor on it; for `Wheel` the `apex` is adjacent to the whole `hole`;
/// both are empty otherwise. Minimality is not established here: it holds
/// by construction for `CStar` and `Wheel`, by [`validate_catalog`] for the
/// finite families, and must be checked by whoever assigns `OtherLb`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FisWitness {
    pub family: FisFamily,
    pub vertices: Vec<u32>,
    pub hole: Vec<u32>,
    pub apex: Option<u32>,
}

static DATA: &str = include_str!("../data/catalog.txt");
static CATALOG: OnceLock<Vec<(FisFamily, Graph)>> = OnceLock::new();

fn entries() -> &'static [(FisFamily, Graph)] {
    CATALOG.get_or_init(|| parse_catalog(DATA))
}

fn parse_catalog(text: &str) -> Vec<(FisFamily, Graph)> {
    let mut toks = text.split_whitespace();
    let mut out: Vec<(FisFamily, Graph)> = Vec::new();
    while let Some(tag) = toks.next() {
        let family = FisFamily::from_tag(tag)
            .unwrap_or_else(|| panic!("catalog data: unknown tag {tag}"));
        let mut num = || -> usize {
            toks.next()
                .unwrap_or_else(|| panic!("catalog data: truncated record {tag}"))
                .parse()
                .unwrap_or_else(|_| panic!("catalog data: bad number in {tag}"))
        };
        let n = num();
        let m = num();
        let mut g = Graph::new(n);
        for _ in 0..m {
            let (u, v) = (num() as u32, num() as u32);
            g.add_edge(u, v);
        }
        assert_eq!(g.m(), m, "catalog data: duplicate edge in {tag}");
        assert!(out.iter().all(|(f, _)| *f != family), "catalog data: repeated tag {tag}");
        out.push((family, g));
    }
    out
}

/// The stored graph of a finite family, in its data-file numbering.
/// Panics for `CStar`, `Wheel`, and `OtherLb`, which have no fixed graph.
pub fn catalog_graph(family: FisFamily) -> &'static Graph {
    entries()
        .iter()
        .find(|(f, _)| *f == family)
        .map(|(_, g)| g)
        .unwrap_or_else(|| panic!("{} is parameterized, no fixed graph", family.tag()))
}

/// Classifies the subgraph of `g` induced by `s` as a catalog member, or
/// returns None. Finite families are matched by isomorphism, the two
/// parameterized shapes by degree pattern plus a chordless-cycle walk.
pub fn classify_fis(g: &Graph, s: &[u32]) -> Option<FisWitness> {
    let (sub, map) = induced_subgraph(g, s);
    let n = sub.n();
    if n <= 7 {
        for (family, member) in entries() {
            if member.n() == n && member.m() == sub.m() && is_isomorphic_small(&sub, member) {
                return Some(FisWitness {
                    family: *family,
                    vertices: map,
                    hole: Vec::new(),
                    apex: None,
                });
            }
        }
    }
    if n >= 5 {
        // A hole plus one vertex seeing none of it: the extra vertex is
        // isolated in the induced subgraph.
        let mut isolated = sub.vertices().filter(|&v| sub.degree(v) == 0);
        if let (Some(u), None) = (isolated.next(), isolated.next()) {
            let rest: Vec<u32> = sub.vertices().filter(|&v| v != u).collect();
            if let Some(cycle) = cycle_order(&sub, &rest) {
                return Some(FisWitness {
                    family: FisFamily::CStar,
                    hole: cycle.iter().map(|&v| map[v as usize]).collect(),
                    apex: Some(map[u as usize]),
                    vertices: map,
                });
            }
        }
        // A hole plus one vertex seeing all of it.
        for hub in 0..n as u32 {
            if sub.degree(hub) != n - 1 {
                continue;
            }
            let rest: Vec<u32> = sub.vertices().filter(|&v| v != hub).collect();
            if let Some(cycle) = cycle_order(&sub, &rest) {
                return Some(FisWitness {
                    family: FisFamily::Wheel,
                    hole: cycle.iter().map(|&v| map[v as usize]).collect(),
                    apex: Some(map[hub as usize]),
                    vertices: map,
                });
            }
        }
    }
    None
}

/// If `set` induces a single chordless cycle spanning it, returns the cycle
/// order starting at the smallest vertex, toward its smaller neighbor.
fn cycle_order(g: &Graph, set: &[u32]) -> Option<Vec<u32>> {
    let (c, cmap) = induced_subgraph(g, set);
    let k = c.n();
    if k < 4 || c.m() != k || c.vertices().any(|v| c.degree(v) != 2) {
        return None;
    }
    let mut order = vec![0u32];
    let mut prev = 0u32;
    let mut cur = c.neighbors(0)[0];
    while cur != 0 {
        order.push(cur);
        let nb = c.neighbors(cur);
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    if order.len() != k {
        return None; // two disjoint cycles
    }
    debug_assert!(chordal::is_hole(&c, &order));
    Some(order.iter().map(|&v| cmap[v as usize]).collect())
}

/// Checks every pinned property of the embedded catalog: record counts and
/// sizes, self-classification, chordality split, minimal non-intervality
/// and the three simplicial terminals of the four chordal families, and the
/// whipping-top distance profile. Errors name the family and the property.
pub fn validate_catalog() -> Result<(), String> {
    let expect: [(FisFamily, usize, usize); 10] = [
        (FisFamily::LongClaw, 7, 6),
        (FisFamily::WhippingTop, 7, 10),
        (FisFamily::DaggerNet, 6, 6),
        (FisFamily::DoubleDagger, 7, 8),
        (FisFamily::K23, 5, 6),
        (FisFamily::TwinC5, 6, 7),
        (FisFamily::Domino, 6, 7),
        (FisFamily::C6Complement, 6, 9),
        (FisFamily::Fis1, 6, 8),
        (FisFamily::Fis2, 7, 8),
    ];
    if entries().len() != expect.len() {
        return Err(format!("catalog holds {} records, want {}", entries().len(), expect.len()));
    }
    let chordal_four = [
        FisFamily::LongClaw,
        FisFamily::WhippingTop,
        FisFamily::DaggerNet,
        FisFamily::DoubleDagger,
    ];
    for (family, n, m) in expect {
        let tag = family.tag();
        let g = catalog_graph(family);
        if g.n() != n || g.m() != m {
            return Err(format!("{tag}: stored as {}/{} vertices/edges, want {n}/{m}", g.n(), g.m()));
        }
        let all: Vec<u32> = g.vertices().collect();
        match classify_fis(g, &all) {
            Some(w) if w.family == family => {}
            other => return Err(format!("{tag}: classified as {other:?}")),
        }
        if chordal_four.contains(&family) {
            if chordal::check_chordal(g).is_err() {
                return Err(format!("{tag}: expected chordal"));
            }
            if is_interval(g) {
                return Err(format!("{tag}: expected non-interval"));
            }
            for v in g.vertices() {
                let rest: Vec<u32> = g.vertices().filter(|&x| x != v).collect();
                if !is_interval(&induced_subgraph(g, &rest).0) {
                    return Err(format!("{tag}: still non-interval after deleting {v}"));
                }
            }
            let simplicial = g
                .vertices()
                .filter(|&v| g.is_clique(g.neighbors(v)))
                .count();
            if simplicial != 3 {
                return Err(format!("{tag}: {simplicial} simplicial vertices, want 3"));
            }
        } else if chordal::check_chordal(g).is_ok() {
            return Err(format!("{tag}: expected a hole"));
        }
    }
    // Whipping-top distance profile: diameter 3, attained exactly by the
    // terminal pairs {0,2} and {1,2} in the stored numbering.
    let wt = catalog_graph(FisFamily::WhippingTop);
    let mut far = Vec::new();
    let mut diameter = 0;
    for u in wt.vertices() {
        let d = bfs_dist(wt, u);
        for v in wt.vertices().filter(|&v| v > u) {
            diameter = diameter.max(d[v as usize]);
            if d[v as usize] >= 3 {
                far.push((u, v));
            }
        }
    }
    if diameter != 3 || far != [(0, 2), (1, 2)] {
        return Err(format!("whipping-top: diameter {diameter} attained by {far:?}"));
    }
    Ok(())
}

fn bfs_dist(g: &Graph, s: u32) -> Vec<u32> {
    let mut d = vec![u32::MAX; g.n()];
    d[s as usize] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if d[y as usize] == u32::MAX {
                d[y as usize] = d[x as usize] + 1;
                queue.push_back(y);
            }
        }
    }
    d
}

/// Searches the subsets of `cands` for a forbidden subgraph, smallest
/// first, and returns the first one [`classify_fis`] recognizes.  Within a
/// size, subsets are tried in lexicographic order of the sorted candidate
/// list, so the result is deterministic.  Meant for small candidate sets
/// around an already-located violation; at most 16 candidates are allowed.
pub fn small_fis_search(g: &Graph, cands: &[u32]) -> Option<FisWitness> {
    let mut pool: Vec<u32> = cands.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let n = pool.len();
    assert!(n <= 16, "candidate pool too large for subset search");
    let mut subset = Vec::new();
    // No forbidden subgraph has fewer than 5 vertices.
    for size in 5..=n.min(9) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            subset.clear();
            subset.extend(idx.iter().map(|&i| pool[i]));
            if let Some(w) = classify_fis(g, &subset) {
                return Some(w);
            }
            // Advance to the next combination.
            let mut i = size;
            while i > 0 {
                i -= 1;
                if idx[i] != i + n - size {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    idx.clear();
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    None
}

/// Checks that `w` really is a forbidden subgraph of `g` of the claimed
/// family, including the minimality that family membership implies.  The
/// finite families are re-derived by classification; `CStar` and `Wheel`
/// are checked against their hole and apex; `OtherLb` must be chordal,
/// non-interval, minimally so, and not isomorphic to any named family.
pub fn validate_fis(g: &Graph, w: &FisWitness) -> Result<(), String> {
    let tag = w.family.tag();
    let mut vs = w.vertices.clone();
    vs.sort_unstable();
    vs.dedup();
    if vs != w.vertices {
        return Err(format!("{tag}: vertex list not sorted and unique"));
    }
    if vs.iter().any(|&v| v as usize >= g.n()) {
        return Err(format!("{tag}: vertex out of range"));
    }
    match w.family {
        FisFamily::CStar | FisFamily::Wheel => {
            let Some(apex) = w.apex else {
                return Err(format!("{tag}: missing apex"));
            };
            if w.hole.contains(&apex) {
                return Err(format!("{tag}: apex lies on the hole"));
            }
            let mut expect: Vec<u32> = w.hole.clone();
            expect.push(apex);
            expect.sort_unstable();
            expect.dedup();
            if expect != vs {
                return Err(format!("{tag}: vertices differ from hole plus apex"));
            }
            if w.hole.len() < 4 || !chordal::is_chordless_cycle(g, &w.hole) {
                return Err(format!("{tag}: listed hole is not a chordless cycle"));
            }
            let on_hole = w.hole.iter().filter(|&&x| g.adjacent(apex, x)).count();
            match w.family {
                FisFamily::CStar if on_hole != 0 => {
                    return Err(format!("{tag}: apex sees {on_hole} hole vertices"))
                }
                FisFamily::Wheel if on_hole != w.hole.len() => {
                    return Err(format!("{tag}: apex misses part of the hole"))
                }
                _ => {}
            }
        }
        FisFamily::OtherLb => {
            if classify_fis(g, &vs).is_some() {
                return Err(format!("{tag}: matches a named family"));
            }
            let (sub, _) = induced_subgraph(g, &vs);
            if chordal::check_chordal(&sub).is_err() {
                return Err(format!("{tag}: not chordal"));
            }
            if is_interval(&sub) {
                return Err(format!("{tag}: interval, hence not forbidden"));
            }
            for v in sub.vertices() {
                let rest: Vec<u32> = sub.vertices().filter(|&x| x != v).collect();
                if !is_interval(&induced_subgraph(&sub, &rest).0) {
                    return Err(format!("{tag}: not minimal, still forbidden without a vertex"));
                }
            }
        }
        _ => match classify_fis(g, &vs) {
            Some(got) if got.family == w.family => {}
            Some(got) => {
                return Err(format!("{tag}: classifies as {}", got.family.tag()));
            }
            None => return Err(format!("{tag}: does not classify as any family")),
        },
    }
    Ok(())
}
