//! Fixture and random graph constructors. All randomness flows from a
//! caller-owned seeded ChaCha stream so outputs are reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The worked example graph for parameter `k`: a path `u_1..u_k`, a cycle
/// `v_1..v_{k+1}`, a path `w_1..w_k` and a cycle `x_1..x_{2k+1}`, joined by
/// the edges `u_k v_1`, `v_1 w_1` and `w_k x_1`.
///
/// Vertex ids: `u_i = i-1`, `v_i = k+i-1`, `w_i = 2k+i`, `x_i = 3k+i`.
pub fn figure1_graph(k: usize) -> Graph {
    assert!(k >= 2, "k must be at least 2");
    let u = |i: usize| i - 1;
    let v = |i: usize| k + i - 1;
    let w = |i: usize| 2 * k + i;
    let x = |i: usize| 3 * k + i;
    let mut edges = Vec::new();
    for i in 1..k {
        edges.push((u(i), u(i + 1)));
        edges.push((w(i), w(i + 1)));
    }
    for i in 1..=k + 1 {
        edges.push((v(i), v(i % (k + 1) + 1)));
    }
    for i in 1..=2 * k + 1 {
        edges.push((x(i), x(i % (2 * k + 1) + 1)));
    }
    edges.push((u(k), v(1)));
    edges.push((v(1), w(1)));
    edges.push((w(k), x(1)));
    Graph::from_edges(5 * k + 2, edges).expect("example graph is simple")
}

/// Uniform labelled tree on `n` vertices, decoded from a random Prüfer
/// sequence. Returns edges on `0..n`.
pub fn random_tree_edges<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &code)
}

/// Decodes a Prüfer sequence of length `n - 2` into the edges of its tree.
pub fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Linear-time decoding: `ptr` scans for the smallest leaf, `leaf` is the
    // current one.
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &c in code {
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 && c < ptr {
            leaf = c;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    Graph::from_edges(n, random_tree_edges(n, rng)).expect("Prüfer trees are simple")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("G(n,p) is simple")
}

/// Sparse random graph with exactly `m` distinct edges, sampled by rejection.
/// Intended for `m` well below `n^2 / 4`.
pub fn sparse_random<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(n >= 2 && m <= n * (n - 1) / 4, "sparse_random needs m << n^2");
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if seen.insert(e) {
            edges.push(e);
        }
    }
    Graph::from_edges(n, edges).expect("deduplicated edges")
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}
