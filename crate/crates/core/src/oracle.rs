//! Independent reference deciders and generators for the test suites.
//!
//! [`oracle_nhca`] decides small graphs by scanning every vertex subset for
//! a forbidden configuration; it shares the catalog and the interval checker
//! with the recognizer but none of its pipeline.  [`oracle_model_enum`]
//! decides tiny graphs from first principles, by enumerating every circular
//! order of arc endpoints and testing the defining model properties
//! directly.  [`gen_random_nhca`] samples recognizable graphs from random
//! short-arc diagrams.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::classify_fis;
use crate::chordal::check_chordal;
use crate::graph::{induced_subgraph, Graph};
use crate::interval::is_interval;

/// Whether the graph stands on its own as a forbidden configuration: a
/// chordal non-interval graph, or a spanning hole-plus-vertex or finite
/// catalog member.
fn obstructed(sub: &Graph) -> bool {
    if check_chordal(sub).is_ok() {
        !is_interval(sub)
    } else {
        let all: Vec<u32> = sub.vertices().collect();
        classify_fis(sub, &all).is_some()
    }
}

/// Decides recognizability by exhaustive subset scan; limited to 10
/// vertices.  The graph is recognizable exactly when no subset of at least
/// five vertices induces a forbidden configuration.
pub fn oracle_nhca(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 10, "subset oracle is exhaustive");
    for mask in 0u32..1 << n {
        if mask.count_ones() < 5 {
            continue;
        }
        let s: Vec<u32> = (0..n as u32).filter(|i| mask >> i & 1 == 1).collect();
        if obstructed(&induced_subgraph(g, &s).0) {
            return false;
        }
    }
    true
}

/// Cells of an endpoint order: cell `2p` is the endpoint at position `p`,
/// cell `2p + 1` the open gap after it.  An arc is the cyclic run of cells
/// between its two endpoint cells, so arcs intersect exactly when they
/// share a cell and a family has a common point exactly when it has a
/// common cell.
fn arc_cells(pos: &[usize], v: usize, total: usize) -> u64 {
    let a = 2 * pos[2 * v];
    let b = 2 * pos[2 * v + 1];
    let mut bits = 0u64;
    let mut c = a;
    loop {
        bits |= 1 << c;
        if c == b {
            break;
        }
        c = (c + 1) % total;
    }
    bits
}

fn realizes(g: &Graph, order: &[u32]) -> bool {
    let n = g.n();
    let m = 2 * n;
    let total = 2 * m;
    let mut pos = vec![0usize; m];
    for (p, &lab) in order.iter().enumerate() {
        pos[lab as usize] = p;
    }
    let covered: Vec<u64> = (0..n).map(|v| arc_cells(&pos, v, total)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if (covered[u] & covered[v] != 0) != g.adjacent(u as u32, v as u32) {
                return false;
            }
        }
    }
    let full: u64 = (1u64 << total) - 1;
    for u in 0..n {
        if covered[u] == full {
            return false;
        }
        for v in u + 1..n {
            if covered[u] | covered[v] == full {
                return false;
            }
            for w in v + 1..n {
                if covered[u] | covered[v] | covered[w] == full {
                    return false;
                }
            }
        }
    }
    // Helly on every pairwise-intersecting family of three or more arcs.
    for mask in 1u32..1 << n {
        if mask.count_ones() < 3 {
            continue;
        }
        let mem: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let pairwise = mem
            .iter()
            .enumerate()
            .all(|(i, &u)| mem[i + 1..].iter().all(|&v| covered[u] & covered[v] != 0));
        if pairwise && mem.iter().fold(full, |acc, &v| acc & covered[v]) == 0 {
            return false;
        }
    }
    true
}

fn search_orders(g: &Graph, order: &mut Vec<u32>, k: usize) -> bool {
    if k == order.len() {
        return realizes(g, order);
    }
    for i in k..order.len() {
        order.swap(k, i);
        if search_orders(g, order, k + 1) {
            order.swap(k, i);
            return true;
        }
        order.swap(k, i);
    }
    false
}

/// Decides recognizability from first principles: enumerates every circular
/// order of the `2n` arc endpoints (label `2v` is the counterclockwise end
/// of `v`) and accepts if some order realizes the graph with no one, two or
/// three arcs covering the circle and every pairwise-intersecting family
/// sharing a point.  Factorial in `n`; limited to 5 vertices.
pub fn oracle_model_enum(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 5, "endpoint enumeration is factorial");
    if n <= 1 {
        return true;
    }
    // Fix label 0 first to quotient out rotations.
    let mut order: Vec<u32> = (0..2 * n as u32).collect();
    search_orders(g, &mut order, 1)
}

/// Samples a recognizable graph on `n` vertices from a random arc diagram
/// on a `4n`-slot grid with every arc spanning at most a quarter of the
/// circle.  No three such arcs can cover the circle, and a family of them
/// that intersects pairwise behaves like intervals, so the diagram is
/// automatically a valid model and its intersection graph recognizable by
/// construction.  Spans are also capped at 24 slots, which keeps the
/// expected degree constant as `n` grows.  Deterministic in `seed`.
pub fn gen_random_nhca(seed: u64, n: usize) -> Graph {
    if n == 0 {
        return Graph::new(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = 4 * n as i64;
    let hi = (t / 4).clamp(2, 24);
    let mut used = std::collections::HashSet::new();
    let mut ends: Vec<(i64, i64)> = Vec::with_capacity(n);
    for _ in 0..n {
        // Resample the single arc until its endpoints land on free slots.
        let arc = loop {
            let s = rng.gen_range(0..t);
            let e = (s + rng.gen_range(2..=hi)) % t;
            if !used.contains(&s) && !used.contains(&e) {
                break (s, e);
            }
        };
        used.insert(arc.0);
        used.insert(arc.1);
        ends.push(arc);
    }
    // Two short arcs intersect exactly when one holds an endpoint of the
    // other, so a sorted sweep over endpoints finds every edge without
    // examining all pairs.
    let mut pts: Vec<(i64, u32)> = Vec::with_capacity(2 * n);
    for (i, &(s, e)) in ends.iter().enumerate() {
        pts.push((s, i as u32));
        pts.push((e, i as u32));
    }
    pts.sort_unstable();
    let mut edges = Vec::new();
    for (i, &(s, e)) in ends.iter().enumerate() {
        let start = pts.partition_point(|&(x, _)| x < s);
        for k in 0..pts.len() {
            let (x, owner) = pts[(start + k) % pts.len()];
            let off = (x - s).rem_euclid(t);
            if off > (e - s).rem_euclid(t) {
                break;
            }
            if owner != i as u32 {
                let (a, b) = (owner.min(i as u32), owner.max(i as u32));
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, &edges)
}

/// Long cycle with the remaining vertices attached as random pendants of
/// rim vertices.  Pendant arcs nest inside their rim arc's private
/// stretch, so the graph is recognizable, yet it drives the whole
/// non-chordal pipeline with a hole of length about `n / 2`.
/// Deterministic in `seed`; `n` must be at least 4.
pub fn gen_pendant_cycle(seed: u64, n: usize) -> Graph {
    assert!(n >= 4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = (n / 2).max(4) as u32;
    let mut edges: Vec<(u32, u32)> = (0..k).map(|i| (i.min((i + 1) % k), i.max((i + 1) % k))).collect();
    for x in k..n as u32 {
        edges.push((rng.gen_range(0..k), x));
    }
    Graph::from_edges(n, &edges)
}

/// Random graph with each edge drawn independently; deterministic in `seed`.
pub fn gen_random_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::{recognize, recognize_bool, verify_certificate, Answer};

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(u32, u32)> =
            (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
        (0..1u64 << pairs.len()).map(move |mask| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges)
        })
    }

    #[test]
    fn tiny_graphs_all_realizable() {
        // No forbidden configuration fits in four vertices, and the
        // first-principles enumeration agrees.
        for n in 0..=4 {
            for g in all_graphs(n) {
                assert!(oracle_model_enum(&g));
                assert!(oracle_nhca(&g));
                assert!(recognize_bool(&g));
            }
        }
    }

    #[test]
    fn five_vertex_obstructions_have_no_model() {
        let c4 = [(0u32, 1u32), (1, 2), (2, 3), (3, 0)];
        let mut wheel = c4.to_vec();
        wheel.extend((0..4).map(|i| (i, 4)));
        let k23 = [(0u32, 2u32), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
        for g in [
            Graph::from_edges(5, &c4),
            Graph::from_edges(5, &wheel),
            Graph::from_edges(5, &k23),
        ] {
            assert!(!oracle_model_enum(&g));
            assert!(!oracle_nhca(&g));
            assert!(!recognize_bool(&g));
        }
    }

    #[test]
    fn sampled_five_vertex_graphs_agree_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..12 {
            let mask: u64 = rng.gen_range(0..1 << 10);
            let pairs: Vec<(u32, u32)> =
                (0..5u32).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(5, &edges);
            let by_model = oracle_model_enum(&g);
            assert_eq!(by_model, oracle_nhca(&g), "mask {mask}");
            assert_eq!(by_model, recognize_bool(&g), "mask {mask}");
        }
    }

    #[test]
    fn generated_graphs_recognize_with_models() {
        for seed in 0..40 {
            let n = 5 + (seed as usize % 12);
            let g = gen_random_nhca(seed, n);
            let c = recognize(&g);
            assert!(matches!(c.answer, Answer::Model(_)), "seed {seed}: {:?}", c.trace);
            assert!(verify_certificate(&g, &c).is_ok());
            if n <= 10 {
                assert!(oracle_nhca(&g), "seed {seed}");
            }
        }
    }

    #[test]
    fn pendant_cycles_recognize_with_models() {
        for seed in 0..6u64 {
            let g = gen_pendant_cycle(seed, 40 + 7 * seed as usize);
            let c = recognize(&g);
            assert!(matches!(c.answer, Answer::Model(_)), "seed {seed}: {:?}", c.trace);
            assert!(verify_certificate(&g, &c).is_ok());
        }
    }

    #[test]
    fn random_graphs_agree_with_subset_oracle() {
        let mut checked_negative = 0;
        for seed in 0..160 {
            let n = 6 + (seed as usize % 4);
            let p = [0.25, 0.4, 0.55, 0.7][(seed / 4) as usize % 4];
            let g = gen_random_graph(seed, n, p);
            let c = recognize(&g);
            assert!(verify_certificate(&g, &c).is_ok(), "seed {seed}: {:?}", c.trace);
            let expect = oracle_nhca(&g);
            assert_eq!(matches!(c.answer, Answer::Model(_)), expect, "seed {seed}");
            assert_eq!(recognize_bool(&g), expect, "seed {seed}");
            if !expect {
                checked_negative += 1;
            }
        }
        assert!(checked_negative >= 40, "corpus too easy: {checked_negative} negatives");
    }
}
