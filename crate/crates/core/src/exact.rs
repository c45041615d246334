//! Exact `α_k` and `τ_k = n - α_k`.
//!
//! Forest components are solved by the post-order pruning greedy. Other
//! components go to a branch-and-bound over vertex deletions. A plain subset
//! enumeration serves as the test oracle.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bounds::check_k;
use crate::constructor::{construct_set, tree_clip};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ForestGreedy,
    BranchBound,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub alpha: usize,
    pub tau: usize,
    /// Sorted.
    pub witness: Vec<usize>,
    pub method: Method,
    pub nodes_explored: u64,
    /// False only inside [`Error::BudgetExhausted`].
    pub optimal: bool,
}

/// Exact solution on a forest.
pub fn forest_tau(g: &Graph, k: usize) -> Result<ExactResult> {
    check_k(k)?;
    let n = g.n();
    let removed = tree_clip(g, &vec![true; n], k)?;
    let mut keep = vec![true; n];
    for &v in &removed {
        keep[v] = false;
    }
    Ok(ExactResult {
        alpha: n - removed.len(),
        tau: removed.len(),
        witness: (0..n).filter(|&v| keep[v]).collect(),
        method: Method::ForestGreedy,
        nodes_explored: 0,
        optimal: true,
    })
}

/// Exact `α_k` with a node budget shared across components.
pub fn exact_alpha(g: &Graph, k: usize, budget: u64) -> Result<ExactResult> {
    check_k(k)?;
    let comps = g.components().members();
    let mut witness = Vec::with_capacity(g.n());
    let mut nodes = 0u64;
    let mut method = Method::ForestGreedy;
    let mut exhausted = false;

    for comp in comps {
        if comp.len() < k {
            witness.extend_from_slice(&comp);
            continue;
        }
        let sub = g.induced_subgraph(&comp)?;
        let local = if sub.graph.is_forest() {
            forest_tau(&sub.graph, k)?.witness
        } else {
            method = Method::BranchBound;
            let remaining = budget.saturating_sub(nodes);
            let mut search = Search::new(&sub.graph, k, remaining)?;
            search.run();
            nodes += search.nodes;
            exhausted |= search.exhausted;
            search.best_kept()
        };
        witness.extend(sub.to_original(&local));
    }
    witness.sort_unstable();
    let result = ExactResult {
        alpha: witness.len(),
        tau: g.n() - witness.len(),
        witness,
        method,
        nodes_explored: nodes,
        optimal: !exhausted,
    };
    if exhausted {
        return Err(Error::BudgetExhausted { best: Box::new(result) });
    }
    Ok(result)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Free,
    Kept,
    Deleted,
}

/// Depth-first branch-and-bound on one connected component.
struct Search<'g> {
    g: &'g Graph,
    k: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    state: Vec<State>,
    deleted: usize,
    best: Vec<usize>,
    // scratch
    seen: Vec<bool>,
    acc: Vec<usize>,
    parent: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, k: usize, budget: u64) -> Result<Self> {
        let seed = construct_set(g, k)?;
        let mut in_seed = vec![false; g.n()];
        for &v in &seed.vertices {
            in_seed[v] = true;
        }
        let best = (0..g.n()).filter(|&v| !in_seed[v]).collect();
        Ok(Search {
            g,
            k,
            budget,
            nodes: 0,
            exhausted: false,
            state: vec![State::Free; g.n()],
            deleted: 0,
            best,
            seen: vec![false; g.n()],
            acc: vec![0; g.n()],
            parent: vec![0; g.n()],
            queue: VecDeque::new(),
        })
    }

    fn best_kept(&self) -> Vec<usize> {
        let mut del = vec![false; self.g.n()];
        for &v in &self.best {
            del[v] = true;
        }
        (0..self.g.n()).filter(|&v| !del[v]).collect()
    }

    fn run(&mut self) {
        self.branch();
    }

    fn branch(&mut self) {
        if self.exhausted {
            return;
        }
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;

        let Some((lower, pick)) = self.bound_and_pick() else {
            // Every live component is small: a feasible solution.
            if self.deleted < self.best.len() {
                self.best = (0..self.g.n()).filter(|&v| self.state[v] == State::Deleted).collect();
            }
            return;
        };
        if self.deleted + lower >= self.best.len() {
            return;
        }
        let Some(v) = pick else {
            // An oversized component made only of kept vertices.
            return;
        };

        self.state[v] = State::Deleted;
        self.deleted += 1;
        self.branch();
        self.deleted -= 1;

        self.state[v] = State::Kept;
        let mut forced = Vec::new();
        if self.propagate_keep(v, &mut forced) {
            self.deleted += forced.len();
            self.branch();
            self.deleted -= forced.len();
        }
        for u in forced {
            self.state[u] = State::Free;
        }
        self.state[v] = State::Free;
    }

    /// Returns `None` when no live component has `k` or more vertices.
    /// Otherwise returns a lower bound on further deletions (a packing of
    /// disjoint connected `k`-sets, found by pruning a BFS spanning forest)
    /// and the branching vertex: the free vertex of maximum live degree in the
    /// first oversized component, ties broken by lowest id.
    fn bound_and_pick(&mut self) -> Option<(usize, Option<usize>)> {
        let n = self.g.n();
        let k = self.k;
        self.seen.iter_mut().for_each(|s| *s = false);
        let mut packing = 0;
        let mut pick: Option<Option<usize>> = None;
        let mut order = Vec::new();

        for root in 0..n {
            if self.state[root] == State::Deleted || self.seen[root] {
                continue;
            }
            order.clear();
            self.seen[root] = true;
            self.queue.push_back(root);
            while let Some(v) = self.queue.pop_front() {
                order.push(v);
                for &w in self.g.neighbors(v) {
                    if self.state[w] != State::Deleted && !self.seen[w] {
                        self.seen[w] = true;
                        self.parent[w] = v;
                        self.queue.push_back(w);
                    }
                }
            }
            if order.len() < k {
                continue;
            }
            if pick.is_none() {
                let mut best: Option<(usize, usize)> = None;
                for &v in &order {
                    if self.state[v] != State::Free {
                        continue;
                    }
                    let deg = self.g.neighbors(v).iter().filter(|&&w| self.state[w] != State::Deleted).count();
                    let better = match best {
                        None => true,
                        Some((bd, bv)) => deg > bd || (deg == bd && v < bv),
                    };
                    if better {
                        best = Some((deg, v));
                    }
                }
                pick = Some(best.map(|(_, v)| v));
            }
            // Reverse BFS order visits children before parents.
            for &v in &order {
                self.acc[v] = 1;
            }
            for &v in order.iter().rev() {
                let ret = if self.acc[v] >= k {
                    packing += 1;
                    0
                } else {
                    self.acc[v]
                };
                if v != root {
                    self.acc[self.parent[v]] += ret;
                }
            }
        }
        pick.map(|p| (packing, p))
    }

    /// After keeping `v`, checks that its kept component is small and deletes
    /// every free neighbour that would merge kept components to `k` or more
    /// vertices. Returns false on contradiction.
    fn propagate_keep(&mut self, v: usize, forced: &mut Vec<usize>) -> bool {
        let k = self.k;
        let comp = self.kept_component(v);
        if comp.len() >= k {
            return false;
        }
        let mut frontier = Vec::new();
        for &x in &comp {
            for &u in self.g.neighbors(x) {
                if self.state[u] == State::Free && !frontier.contains(&u) {
                    frontier.push(u);
                }
            }
        }
        for u in frontier {
            // Size of the kept component u would join, including u.
            let mut total = 1;
            let mut counted: Vec<usize> = Vec::new();
            for &w in self.g.neighbors(u) {
                if self.state[w] == State::Kept && !counted.contains(&w) {
                    let c = self.kept_component(w);
                    total += c.len();
                    counted.extend(c);
                }
            }
            if total >= k {
                self.state[u] = State::Deleted;
                forced.push(u);
            }
        }
        true
    }

    fn kept_component(&mut self, v: usize) -> Vec<usize> {
        let mut comp = vec![v];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &w in self.g.neighbors(x) {
                if self.state[w] == State::Kept && !comp.contains(&w) {
                    comp.push(w);
                }
            }
        }
        comp
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForce {
    pub alpha: usize,
    /// The first optimal subset in increasing bitmask order.
    pub witness: Vec<usize>,
}

/// Enumerates all `2^n` subsets (`n ≤ 20`).
pub fn brute_force_alpha(g: &Graph, k: usize) -> Result<BruteForce> {
    check_k(k)?;
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let mut best_mask = 0u32;
    let mut best = 0u32;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones();
        if size > best && components_below(&adj, mask, k as u32) {
            best = size;
            best_mask = mask;
        }
    }
    Ok(BruteForce { alpha: best as usize, witness: (0..n).filter(|&v| best_mask >> v & 1 == 1).collect() })
}

fn components_below(adj: &[u32], set: u32, k: u32) -> bool {
    let mut rest = set;
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & set & !comp;
            comp |= new;
            frontier |= new;
        }
        if comp.count_ones() >= k {
            return false;
        }
        rest &= !comp;
    }
    true
}
