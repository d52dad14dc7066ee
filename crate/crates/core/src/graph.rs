//! Undirected simple graphs with dense ids and sorted adjacency lists.

use std::fmt;

/// Undirected simple graph on vertices `0..n`. Neighbor lists are sorted, so
/// adjacency queries are binary searches and all iteration orders are fixed.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds from an edge list. Panics on loops, duplicates, or out-of-range
    /// endpoints; callers constructing from untrusted text use [`parse_graph`].
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Inserts edge `uv`, keeping neighbor lists sorted.
    pub fn add_edge(&mut self, u: u32, v: u32) {
        assert!(u != v, "loop at {u}");
        assert!((u as usize) < self.adj.len() && (v as usize) < self.adj.len());
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a as usize];
            let i = list.partition_point(|&x| x < b);
            assert!(list.get(i) != Some(&b), "duplicate edge {u} {v}");
            list.insert(i, b);
        }
        self.m += 1;
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.n() as u32
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u).iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// True if every pair in `set` is adjacent.
    pub fn is_clique(&self, set: &[u32]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n(), self.m(), self.edges().collect::<Vec<_>>())
    }
}

/// Error from [`parse_graph`]; messages name the offending line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

/// Parses the plain edge-list format: a header line `n m`, then `m` lines
/// `u v` with `0 <= u, v < n`. Loops and duplicate edges are errors.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError("line 1: expected header \"n m\"".into()))?;
    let (n, m) = parse_pair(header)
        .ok_or_else(|| ParseError("line 1: expected header \"n m\"".into()))?;
    let (n, m) = (n as usize, m as usize);
    let mut g = Graph::new(n);
    let mut seen = 0usize;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (u, v) =
            parse_pair(line).ok_or_else(|| ParseError(format!("line {lineno}: expected two integers")))?;
        if u == v {
            return Err(ParseError(format!("loop at line {lineno}")));
        }
        if u as usize >= n || v as usize >= n {
            return Err(ParseError(format!("vertex out of range at line {lineno}")));
        }
        if g.adjacent(u, v) {
            return Err(ParseError(format!("duplicate edge at line {lineno}")));
        }
        g.add_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(ParseError(format!("expected {m} edges, found {seen}")));
    }
    Ok(g)
}

fn parse_pair(line: &str) -> Option<(u32, u32)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Serializes in the format accepted by [`parse_graph`], edges in
/// lexicographic order; `parse_graph(&emit_graph(g))` reproduces `g` exactly.
pub fn emit_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Subgraph induced by `s` (deduplicated). Returns the new graph and the
/// new-to-old vertex map; new ids follow the sorted order of `s`, so the
/// labeling is deterministic.
pub fn induced_subgraph(g: &Graph, s: &[u32]) -> (Graph, Vec<u32>) {
    let mut to_old: Vec<u32> = s.to_vec();
    to_old.sort_unstable();
    to_old.dedup();
    let mut to_new = vec![u32::MAX; g.n()];
    for (new, &old) in to_old.iter().enumerate() {
        to_new[old as usize] = new as u32;
    }
    let mut sub = Graph::new(to_old.len());
    for (new, &old) in to_old.iter().enumerate() {
        for &nb in g.neighbors(old) {
            let nb_new = to_new[nb as usize];
            if nb_new != u32::MAX && (new as u32) < nb_new {
                sub.add_edge(new as u32, nb_new);
            }
        }
    }
    (sub, to_old)
}

/// Prunes `set` to an inclusion-minimal subset whose induced subgraph still
/// satisfies `bad`, trying deletions once in ascending id order. Assumes
/// `bad` holds on `set` itself and that graphs free of `bad` stay free of it
/// under further vertex deletion; one pass then suffices for minimality.
pub fn minimalize_set(g: &Graph, set: &[u32], bad: &mut dyn FnMut(&Graph) -> bool) -> Vec<u32> {
    let mut keep: Vec<u32> = set.to_vec();
    keep.sort_unstable();
    keep.dedup();
    for v in keep.clone() {
        let cand: Vec<u32> = keep.iter().copied().filter(|&x| x != v).collect();
        let (sub, _) = induced_subgraph(g, &cand);
        if bad(&sub) {
            keep = cand;
        }
    }
    keep
}

/// Isomorphism test for graphs of at most 12 vertices, by backtracking with
/// degree pruning. Intended for witness classification, not general use.
pub fn is_isomorphic_small(a: &Graph, b: &Graph) -> bool {
    isomorphism_small(a, b).is_some()
}

/// Like [`is_isomorphic_small`] but returns the vertex map `a -> b`.
pub fn isomorphism_small(a: &Graph, b: &Graph) -> Option<Vec<u32>> {
    assert!(a.n() <= 12 && b.n() <= 12, "isomorphism test limited to 12 vertices");
    if a.n() != b.n() || a.m() != b.m() {
        return None;
    }
    let degs = |g: &Graph| {
        let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degs(a) != degs(b) {
        return None;
    }
    let n = a.n();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    fn go(a: &Graph, b: &Graph, v: usize, map: &mut Vec<u32>, used: &mut Vec<bool>) -> bool {
        if v == a.n() {
            return true;
        }
        for w in 0..b.n() as u32 {
            if used[w as usize] || a.degree(v as u32) != b.degree(w) {
                continue;
            }
            let ok = (0..v as u32).all(|p| a.adjacent(p, v as u32) == b.adjacent(map[p as usize], w));
            if ok {
                map[v] = w;
                used[w as usize] = true;
                if go(a, b, v + 1, map, used) {
                    return true;
                }
                used[w as usize] = false;
                map[v] = u32::MAX;
            }
        }
        false
    }
    if go(a, b, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
impl Graph {
    /// Chordless cycle 0-1-...-(k-1)-0, shared by test modules.
    pub(crate) fn cycle(k: usize) -> Graph {
        let edges: Vec<(u32, u32)> =
            (0..k).map(|i| (i as u32, ((i + 1) % k) as u32)).collect();
        Graph::from_edges(k, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.adjacent(0, 1) && g.adjacent(1, 2) && !g.adjacent(0, 2));
    }

    #[test]
    fn parse_errors_name_lines() {
        assert_eq!(parse_graph("2 1\n1 1\n").unwrap_err().0, "loop at line 2");
        assert_eq!(
            parse_graph("3 2\n0 1\n0 1\n").unwrap_err().0,
            "duplicate edge at line 3"
        );
        assert_eq!(
            parse_graph("2 1\n0 2\n").unwrap_err().0,
            "vertex out of range at line 2"
        );
        assert_eq!(
            parse_graph("2 1\nx y\n").unwrap_err().0,
            "line 2: expected two integers"
        );
        assert_eq!(parse_graph("").unwrap_err().0, "line 1: expected header \"n m\"");
        assert_eq!(parse_graph("2 2\n0 1\n").unwrap_err().0, "expected 2 edges, found 1");
    }

    #[test]
    fn emit_sorted_and_roundtrip() {
        let g = Graph::from_edges(4, &[(2, 3), (0, 3), (0, 1)]);
        let text = emit_graph(&g);
        assert_eq!(text, "4 3\n0 1\n0 3\n2 3\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn induced_keeps_structure() {
        let g = Graph::cycle(5);
        let (sub, map) = induced_subgraph(&g, &[4, 0, 1]);
        assert_eq!(map, vec![0, 1, 4]);
        assert_eq!(sub.m(), 2);
        assert!(sub.adjacent(0, 1) && sub.adjacent(0, 2) && !sub.adjacent(1, 2));
    }

    #[test]
    fn iso_distinguishes() {
        let c5 = Graph::cycle(5);
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert!(!is_isomorphic_small(&c5, &p5));
        let c5b = Graph::from_edges(5, &[(2, 4), (4, 1), (1, 3), (3, 0), (0, 2)]);
        assert!(is_isomorphic_small(&c5, &c5b));
    }

    #[test]
    fn iso_needs_edges_not_just_degrees() {
        // C6 vs two triangles: same degree sequence, different graphs.
        let c6 = Graph::cycle(6);
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(!is_isomorphic_small(&c6, &tt));
    }
}
