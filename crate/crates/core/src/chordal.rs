//! Chordality testing with certificates: a perfect elimination order for
//! chordal inputs, and for non-chordal inputs a vertex with two nonadjacent
//! neighbors that stay connected outside its closed neighborhood, from which
//! a hole is extracted.

use crate::graph::Graph;
use std::collections::VecDeque;

/// Failure certificate: `a, b` are nonadjacent neighbors of `v`, and `a` and
/// `b` are connected in `G - (N[v] \ {a, b})`, so `v` lies on a hole.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChordalWitness {
    pub v: u32,
    pub a: u32,
    pub b: u32,
}

/// Counts how often the primary witness triple had to be abandoned; stays 0
/// unless the maximum-cardinality-search triple fails its connectivity check.
pub static WITNESS_FALLBACKS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);

/// Returns a perfect elimination order (reverse of the visit order) or a
/// witness triple. The order is only meaningful for chordal inputs.
pub fn check_chordal(g: &Graph) -> Result<Vec<u32>, ChordalWitness> {
    let order = mcs_order(g);
    match verify_peo(g, &order) {
        None => {
            let mut peo = order;
            peo.reverse();
            Ok(peo)
        }
        Some(w) => Some(w)
            .filter(|w| connects(g, w))
            .or_else(|| {
                WITNESS_FALLBACKS.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                exhaustive_witness(g)
            })
            .map(Err)
            .expect("non-chordal graph must contain a hole"),
    }
}

/// Maximum cardinality search visit order.
fn mcs_order(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    // Bucket queue over weights; each vertex's weight only grows until visited.
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    buckets[0] = (0..n as u32).rev().collect();
    let mut top = 0usize;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !visited[v as usize] && weight[v as usize] == top => break v,
                Some(_) => continue,
                None => {
                    top = top.checked_sub(1).expect("bucket queue exhausted early");
                }
            }
        };
        visited[v as usize] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u as usize] {
                weight[u as usize] += 1;
                let w = weight[u as usize];
                buckets[w].push(u);
                top = top.max(w);
            }
        }
    }
    order
}

/// Checks the elimination property of the visit order: for each vertex, its
/// earlier-visited neighbors minus the latest one must all be adjacent to the
/// latest one. Any violation yields a witness triple candidate.
fn verify_peo(g: &Graph, order: &[u32]) -> Option<ChordalWitness> {
    let n = g.n();
    let mut pos = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    for &v in order.iter() {
        let before: Vec<u32> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u as usize] < pos[v as usize])
            .collect();
        let Some(&p) = before.iter().max_by_key(|&&u| pos[u as usize]) else {
            continue;
        };
        for &u in &before {
            if u != p && !g.adjacent(u, p) {
                return Some(ChordalWitness { v, a: u, b: p });
            }
        }
    }
    None
}

/// True if `w.a` and `w.b` are connected in `G - (N[w.v] \ {a, b})`.
fn connects(g: &Graph, w: &ChordalWitness) -> bool {
    bfs_path(g, w).is_some()
}

/// Shortest `a`-`b` path in `G - (N[v] \ {a, b})`, inclusive of endpoints.
fn bfs_path(g: &Graph, w: &ChordalWitness) -> Option<Vec<u32>> {
    let n = g.n();
    let mut banned = vec![false; n];
    banned[w.v as usize] = true;
    for &u in g.neighbors(w.v) {
        banned[u as usize] = true;
    }
    banned[w.a as usize] = false;
    banned[w.b as usize] = false;
    let mut prev = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    prev[w.a as usize] = w.a;
    queue.push_back(w.a);
    while let Some(x) = queue.pop_front() {
        if x == w.b {
            let mut path = vec![w.b];
            let mut cur = w.b;
            while cur != w.a {
                cur = prev[cur as usize];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if !banned[y as usize] && prev[y as usize] == u32::MAX {
                prev[y as usize] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Last-resort witness scan: every hole supplies a valid triple, so this
/// succeeds on any non-chordal graph.
fn exhaustive_witness(g: &Graph) -> Option<ChordalWitness> {
    for v in g.vertices() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.adjacent(a, b) {
                    let w = ChordalWitness { v, a, b };
                    if connects(g, &w) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// Builds a hole through `w.v` from a valid witness triple: the shortest
/// `a`-`b` path outside `N[v]` has no chords, and `v` sees only its ends.
pub fn find_hole(g: &Graph, w: &ChordalWitness) -> Vec<u32> {
    let path = bfs_path(g, w).expect("witness triple must connect");
    debug_assert!(path.len() >= 3);
    let mut hole = vec![w.v];
    hole.extend(path);
    debug_assert!(is_hole(g, &hole));
    hole
}

/// True if `cycle` lists a chordless cycle of length >= 4 in order.
pub fn is_hole(g: &Graph, cycle: &[u32]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut seen = cycle.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.adjacent(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Same predicate as [`is_hole`], but in time linear in the degrees of the
/// cycle vertices: the cycle edges must exist and be the only edges the
/// subgraph induces.
pub fn is_chordless_cycle(g: &Graph, cycle: &[u32]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut seen = cycle.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != k {
        return false;
    }
    if (0..k).any(|i| !g.adjacent(cycle[i], cycle[(i + 1) % k])) {
        return false;
    }
    let (sub, _) = crate::graph::induced_subgraph(g, cycle);
    debug_assert!(sub.m() >= k);
    sub.m() == k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::induced_subgraph;

    fn cycle(k: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..k).map(|i| (i as u32, ((i + 1) % k) as u32)).collect();
        Graph::from_edges(k, &edges)
    }

    /// Reference chordality test by repeated simplicial elimination.
    fn chordal_brute(g: &Graph) -> bool {
        let mut alive: Vec<u32> = g.vertices().collect();
        while !alive.is_empty() {
            let pick = alive.iter().position(|&v| {
                let nb: Vec<u32> = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|u| alive.contains(u))
                    .collect();
                g.is_clique(&nb)
            });
            match pick {
                Some(i) => {
                    alive.swap_remove(i);
                }
                None => return false,
            }
        }
        true
    }

    #[test]
    fn chordal_positive_gets_valid_peo() {
        // Two triangles sharing an edge plus a pendant.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3), (3, 4)]);
        let peo = check_chordal(&g).unwrap();
        assert_eq!(peo.len(), 5);
    }

    #[test]
    fn holes_are_detected_and_extracted() {
        for k in 4..9 {
            let g = cycle(k);
            let w = check_chordal(&g).unwrap_err();
            assert!(!g.adjacent(w.a, w.b));
            assert!(g.adjacent(w.v, w.a) && g.adjacent(w.v, w.b));
            let hole = find_hole(&g, &w);
            assert_eq!(hole.len(), k);
            assert!(is_hole(&g, &hole));
        }
    }

    #[test]
    fn hole_in_larger_graph() {
        // C5 with a pendant tree and a chorded C4 attached.
        let mut g = Graph::new(9);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (2, 7), (7, 8), (8, 2)] {
            g.add_edge(u, v);
        }
        let w = check_chordal(&g).unwrap_err();
        let hole = check_witness_then_hole(&g, w);
        assert!(hole.len() >= 4);
    }

    fn check_witness_then_hole(g: &Graph, w: ChordalWitness) -> Vec<u32> {
        assert!(g.adjacent(w.v, w.a) && g.adjacent(w.v, w.b) && !g.adjacent(w.a, w.b));
        find_hole(g, &w)
    }

    #[test]
    fn agrees_with_brute_force_small() {
        // All graphs on 5 vertices, plus a random sample on 7.
        for mask in 0u32..1 << 10 {
            let mut g = Graph::new(5);
            let mut bit = 0;
            for u in 0..5u32 {
                for v in u + 1..5 {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(u, v);
                    }
                    bit += 1;
                }
            }
            let expect = chordal_brute(&g);
            match check_chordal(&g) {
                Ok(_) => assert!(expect, "claimed chordal: {g:?}"),
                Err(w) => {
                    assert!(!expect, "claimed non-chordal: {g:?}");
                    let hole = find_hole(&g, &w);
                    assert!(is_hole(&g, &hole));
                    // Holes really are induced subgraphs of g.
                    let (sub, _) = induced_subgraph(&g, &hole);
                    assert_eq!(sub.m(), hole.len());
                }
            }
        }
    }
}
