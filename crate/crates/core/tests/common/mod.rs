//! Test-only graph families and oracles that do not go through the library's
//! own algorithms.

#![allow(dead_code)]

use gkset::generators::{gnp, random_tree, seeded_rng, SeededRng};
use gkset::Graph;
use rand::Rng;

pub fn bowtie() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
}

/// Random graph whose cycles are pairwise vertex-disjoint: random pieces
/// (cycles of length 3..=max_cycle or single vertices) joined by single edges
/// along a random forest on the pieces.
pub fn random_disjoint_cycle_graph(rng: &mut SeededRng, max_n: usize, max_cycle: usize) -> Graph {
    let mut edges = Vec::new();
    let mut pieces: Vec<(usize, usize)> = Vec::new();
    let mut n = 0;
    while n < max_n {
        let room = max_n - n;
        let size = if room >= 3 && rng.gen_bool(0.4) { rng.gen_range(3..=max_cycle.min(room)) } else { 1 };
        if size >= 3 {
            for i in 0..size {
                edges.push((n + i, n + (i + 1) % size));
            }
        }
        pieces.push((n, size));
        n += size;
        if rng.gen_bool(0.15) {
            break;
        }
    }
    for p in 1..pieces.len() {
        if rng.gen_bool(0.9) {
            let q = rng.gen_range(0..p);
            let a = pieces[p].0 + rng.gen_range(0..pieces[p].1);
            let b = pieces[q].0 + rng.gen_range(0..pieces[q].1);
            edges.push((a, b));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Whether `x` lies on some cycle: some incident edge `xy` has `x` and `y`
/// still connected once the edge is removed.
pub fn on_some_cycle(g: &Graph, x: usize) -> bool {
    g.neighbors(x).iter().any(|&y| {
        let mut seen = vec![false; g.n()];
        let mut stack = vec![x];
        seen[x] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if (v == x && w == y) || (v == y && w == x) || seen[w] {
                    continue;
                }
                seen[w] = true;
                stack.push(w);
            }
        }
        seen[y]
    })
}

/// Exhaustive check that a tree splits into connected `k`-vertex parts:
/// try every set of `n/k - 1` edges to cut.
pub fn partition_oracle(t: &Graph, k: usize) -> bool {
    let n = t.n();
    if !n.is_multiple_of(k) {
        return false;
    }
    let cuts = n / k - 1;
    let edges = t.edges();
    let m = edges.len();
    let mut chosen = Vec::new();
    fn rec(
        edges: &[(usize, usize)],
        n: usize,
        k: usize,
        start: usize,
        left: usize,
        m: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if left == 0 {
            let kept: Vec<(usize, usize)> = (0..m).filter(|i| !chosen.contains(i)).map(|i| edges[i]).collect();
            let g = Graph::from_edges(n, kept).unwrap();
            return g.components().sizes().iter().all(|&s| s == k);
        }
        for i in start..m {
            chosen.push(i);
            if rec(edges, n, k, i + 1, left - 1, m, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(edges, n, k, 0, cuts, m, &mut chosen)
}

/// Seeded graphs for oracle comparisons: `G(n, p)` with the given edge
/// probabilities, `n` uniform in `lo..=hi`.
pub fn random_graphs(count: usize, lo: usize, hi: usize, probs: &[f64], seed: u64) -> Vec<Graph> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(lo..=hi);
            gnp(n, probs[i % probs.len()], &mut rng)
        })
        .collect()
}

pub fn random_trees(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Graph> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(lo..=hi);
            random_tree(n, &mut rng)
        })
        .collect()
}

/// Adds one fresh vertex adjacent to a uniformly chosen existing vertex.
pub fn add_leaf(g: &Graph, rng: &mut SeededRng) -> Graph {
    let anchor = rng.gen_range(0..g.n());
    g.with_vertices(1).with_edges([(g.n(), anchor)]).unwrap()
}
