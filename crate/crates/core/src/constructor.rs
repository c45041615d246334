//! Linear-time construction of a generalized `k`-independent set meeting
//! `⌈(k-1)/k · (n - ω(G))⌉`.
//!
//! Phase A deletes the deeper endpoint of every DFS back edge, leaving a
//! forest on at least `n - ω(G)` vertices. Phase B walks each tree of that
//! forest in post-order, accumulating the size of the part still hanging
//! below each vertex, and deletes a vertex as soon as that size reaches `k`.

use serde::{Deserialize, Serialize};

use crate::bounds::{base_bound, check_k};
use crate::cycles::{cycle_structure, CycleAnalysis, CycleStructure};
use crate::error::{Error, Result};
use crate::extremal::check_extremal;
use crate::graph::Graph;

/// A generalized `k`-independent set with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkSet {
    /// Sorted.
    pub vertices: Vec<usize>,
    pub k: usize,
    pub guarantee: usize,
    pub phase_a_removed: Vec<usize>,
    pub phase_b_removed: Vec<usize>,
    pub max_component: usize,
}

impl GkSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn meets_guarantee(&self) -> bool {
        self.vertices.len() >= self.guarantee && self.max_component < self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseA {
    /// Deeper endpoints of the back edges, sorted and deduplicated.
    pub removed: Vec<usize>,
    /// The remaining vertices, sorted; they induce a forest.
    pub kept: Vec<usize>,
}

// Per-vertex flag bits shared by the construction passes. Keeping all
// per-vertex state in one byte keeps random accesses cheap on large graphs.
const OPEN: u8 = 1;
const CLOSED: u8 = 2;
/// Outside the working vertex set.
const OUT: u8 = 4;
const SEEN: u8 = 8;
/// Deleted by the pruning pass.
const PRUNED: u8 = 16;

pub fn phase_a(g: &Graph) -> PhaseA {
    let mut flags = vec![0u8; g.n()];
    shrink(g, &mut flags);
    let (removed, kept) = (0..g.n()).partition(|&v| flags[v] & OUT != 0);
    PhaseA { removed, kept }
}

/// Runs the same traversal as [`dfs_forest`](crate::cycles::dfs_forest), marks the deeper endpoint of
/// every back edge `OUT` and returns the number of back edges.
fn shrink(g: &Graph, flags: &mut [u8]) -> usize {
    const NONE: usize = usize::MAX;
    let mut back = 0;
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..g.n() {
        if flags[root] & (OPEN | CLOSED) != 0 {
            continue;
        }
        flags[root] |= OPEN;
        stack.push((root, NONE, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            let nbrs = g.neighbors(v);
            if idx == nbrs.len() {
                flags[v] = (flags[v] & !OPEN) | CLOSED;
                stack.pop();
                continue;
            }
            top.2 += 1;
            let w = nbrs[idx];
            if w == parent {
                continue;
            }
            let f = flags[w];
            if f & (OPEN | CLOSED) == 0 {
                flags[w] |= OPEN;
                stack.push((w, v, 0));
            } else if f & OPEN != 0 {
                flags[v] |= OUT;
                back += 1;
            }
        }
    }
    back
}

/// Post-order pruning of the forest on the vertices not flagged `OUT`. Each
/// tree is rooted at its lowest vertex. Deleted vertices are flagged
/// `PRUNED` and returned in deletion order.
fn clip(g: &Graph, flags: &mut [u8], k: usize) -> Result<Vec<usize>> {
    const NONE: usize = usize::MAX;
    let mut acc = vec![0u32; g.n()];
    let mut removed = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..g.n() {
        if flags[root] & (OUT | SEEN) != 0 {
            continue;
        }
        flags[root] |= SEEN;
        acc[root] = 1;
        stack.push((root, NONE, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            let nbrs = g.neighbors(v);
            if idx < nbrs.len() {
                top.2 += 1;
                let w = nbrs[idx];
                if w == parent || flags[w] & OUT != 0 {
                    continue;
                }
                if flags[w] & SEEN != 0 {
                    return Err(Error::CyclicInput);
                }
                flags[w] |= SEEN;
                acc[w] = 1;
                stack.push((w, v, 0));
                continue;
            }
            stack.pop();
            let ret = if acc[v] as usize >= k {
                flags[v] |= PRUNED;
                removed.push(v);
                0
            } else {
                acc[v]
            };
            if parent != NONE {
                acc[parent] += ret;
            }
        }
    }
    for f in flags.iter_mut() {
        *f &= !SEEN;
    }
    Ok(removed)
}

/// Largest component among the vertices flagged neither `OUT` nor `PRUNED`.
fn largest_component(g: &Graph, flags: &mut [u8]) -> usize {
    let skip = OUT | PRUNED | SEEN;
    let mut queue = Vec::new();
    let mut best = 0;
    for root in 0..g.n() {
        if flags[root] & skip != 0 {
            continue;
        }
        flags[root] |= SEEN;
        queue.clear();
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &w in g.neighbors(v) {
                if flags[w] & skip == 0 {
                    flags[w] |= SEEN;
                    queue.push(w);
                }
            }
        }
        best = best.max(queue.len());
    }
    for f in flags.iter_mut() {
        *f &= !SEEN;
    }
    best
}

fn flags_outside(members: &[bool]) -> Vec<u8> {
    members.iter().map(|&m| if m { 0 } else { OUT }).collect()
}

/// Post-order pruning of the forest `G[members]`. Returns the deleted
/// vertices in deletion order.
pub(crate) fn tree_clip(g: &Graph, members: &[bool], k: usize) -> Result<Vec<usize>> {
    clip(g, &mut flags_outside(members), k)
}

/// Prunes the forest `G[u]` so every component has fewer than `k` vertices.
pub fn phase_b(g: &Graph, u: &[usize], k: usize) -> Result<Vec<usize>> {
    check_k(k)?;
    let members = mask(g, u)?;
    let removed = tree_clip(g, &members, k)?;
    let mut keep = members;
    for v in removed {
        keep[v] = false;
    }
    Ok((0..g.n()).filter(|&v| keep[v]).collect())
}

fn mask(g: &Graph, s: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; g.n()];
    for &v in s {
        if v >= g.n() {
            return Err(Error::Range { vertex: v, n: g.n() });
        }
        m[v] = true;
    }
    Ok(m)
}

/// Runs both phases and certifies the result.
pub fn construct_set(g: &Graph, k: usize) -> Result<GkSet> {
    check_k(k)?;
    let n = g.n();
    if n < k {
        return Ok(GkSet {
            vertices: (0..n).collect(),
            k,
            guarantee: n,
            phase_a_removed: Vec::new(),
            phase_b_removed: Vec::new(),
            max_component: max_component_of(g, &vec![true; n]),
        });
    }

    if u32::try_from(n).is_err() {
        return Err(Error::TooLarge { n, limit: u32::MAX as usize });
    }
    let mut flags = vec![0u8; n];
    let omega = shrink(g, &mut flags);
    let phase_a_removed: Vec<usize> = (0..n).filter(|&v| flags[v] & OUT != 0).collect();
    let mut phase_b_removed = clip(g, &mut flags, k)?;
    phase_b_removed.sort_unstable();
    let vertices: Vec<usize> = (0..n).filter(|&v| flags[v] & (OUT | PRUNED) == 0).collect();
    let max_component = largest_component(g, &mut flags);
    let guarantee = base_bound(n, omega, k)?;

    if vertices.len() < guarantee {
        return Err(Error::InternalGuaranteeViolation(format!(
            "constructed {} vertices, guarantee is {guarantee}",
            vertices.len()
        )));
    }
    if max_component >= k {
        return Err(Error::InternalGuaranteeViolation(format!(
            "component of size {max_component} survived pruning for k = {k}"
        )));
    }
    Ok(GkSet { vertices, k, guarantee, phase_a_removed, phase_b_removed, max_component })
}

/// Largest component size of `G[s]`; `s` is a generalized `k`-independent set
/// iff the result is at most `k - 1`.
pub fn verify_set(g: &Graph, k: usize, s: &[usize]) -> Result<usize> {
    check_k(k)?;
    let members = mask(g, s)?;
    Ok(max_component_of(g, &members))
}

pub fn is_gk_independent(g: &Graph, k: usize, s: &[usize]) -> Result<bool> {
    Ok(verify_set(g, k, s)? < k)
}

pub(crate) fn max_component_of(g: &Graph, members: &[bool]) -> usize {
    largest_component(g, &mut flags_outside(members))
}

/// Builds a set of size exactly `(k-1)(n - ω)/k` on a graph attaining
/// equality in the cycle-space bound.
pub fn equality_refinement(g: &Graph, k: usize) -> Result<GkSet> {
    check_k(k)?;
    if !check_extremal(g, k)?.is_extremal {
        return Err(Error::NotExtremal { k });
    }
    let cs = match cycle_structure(g) {
        CycleAnalysis::Disjoint(cs) => cs,
        CycleAnalysis::NotVertexDisjoint { .. } => return Err(Error::NotExtremal { k }),
    };
    let n = g.n();
    let expected = (k - 1) * (n - cs.omega) / k;
    let vertices = optimal_disjoint_cycle_set(g, &cs, k)?;
    let mut in_set = vec![false; n];
    for &v in &vertices {
        in_set[v] = true;
    }
    let max_component = max_component_of(g, &in_set);
    if vertices.len() != expected || max_component >= k {
        return Err(Error::RefinementFailure { got: vertices.len(), expected });
    }
    let (phase_a_removed, phase_b_removed) = (0..n).filter(|&v| !in_set[v]).partition(|&v| cs.cycle_of[v].is_some());
    Ok(GkSet { vertices, k, guarantee: base_bound(n, cs.omega, k)?, phase_a_removed, phase_b_removed, max_component })
}

/// Maximum generalized `k`-independent set of a graph whose cycles are
/// pairwise vertex-disjoint.
///
/// Such a graph is a forest of pieces (single non-cycle vertices and whole
/// cycles) in which adjacent pieces share exactly one edge. Pieces are solved
/// bottom-up. Each piece minimizes its deletions first and, among those, the
/// size of the surviving component it hands to its parent; a solution with
/// fewer deletions can always afford to delete its attachment vertex
/// instead, so this order is optimal. On a single vertex this is the tree
/// pruning rule; on a cycle every run through the attachment vertex is tried
/// and the rest of the cycle is pruned as a weighted path.
pub fn optimal_disjoint_cycle_set(g: &Graph, cs: &CycleStructure, k: usize) -> Result<Vec<usize>> {
    check_k(k)?;
    let n = g.n();
    const NONE: usize = usize::MAX;

    // Piece ids: cycles first, then non-cycle vertices.
    let ncyc = cs.cycles.len();
    let piece_of: Vec<usize> = (0..n).map(|v| cs.cycle_of[v].unwrap_or(ncyc + v)).collect();
    let npieces = ncyc + n;

    let mut visited = vec![false; npieces];
    // (piece vertex, parent piece vertex) for the edge to the parent.
    let mut link: Vec<(usize, usize)> = vec![(NONE, NONE); npieces];
    let mut order = Vec::new();
    let mut stack = Vec::new();

    for start in 0..n {
        let root = piece_of[start];
        if visited[root] {
            continue;
        }
        visited[root] = true;
        stack.push(root);
        while let Some(p) = stack.pop() {
            order.push(p);
            let verts: Vec<usize> = piece_vertices(cs, p, ncyc);
            for &v in &verts {
                for &w in g.neighbors(v) {
                    let q = piece_of[w];
                    if q == p || visited[q] {
                        continue;
                    }
                    visited[q] = true;
                    link[q] = (w, v);
                    stack.push(q);
                }
            }
        }
    }

    let mut weight = vec![1usize; n];
    let mut deleted = vec![false; n];
    for &p in order.iter().rev() {
        let (attach, parent_end) = link[p];
        let ret = if p >= ncyc {
            let v = p - ncyc;
            if weight[v] >= k {
                deleted[v] = true;
                0
            } else {
                weight[v]
            }
        } else {
            let cycle = &cs.cycles[p];
            let shift = if attach == NONE { 0 } else { cycle.iter().position(|&v| v == attach).unwrap() };
            let rotated: Vec<usize> = (0..cycle.len()).map(|i| cycle[(i + shift) % cycle.len()]).collect();
            let ws: Vec<usize> = rotated.iter().map(|&v| weight[v]).collect();
            let (positions, ret) = solve_cycle(&ws, k);
            for i in positions {
                deleted[rotated[i]] = true;
            }
            ret
        };
        if parent_end != NONE {
            weight[parent_end] += ret;
        }
    }
    Ok((0..n).filter(|&v| !deleted[v]).collect())
}

fn piece_vertices(cs: &CycleStructure, p: usize, ncyc: usize) -> Vec<usize> {
    if p < ncyc {
        cs.cycles[p].clone()
    } else {
        vec![p - ncyc]
    }
}

/// Greedy pruning of a weighted path; returns deleted positions.
fn prune_path(ws: &[usize], positions: impl Iterator<Item = usize>, k: usize, out: &mut Vec<usize>) {
    let mut acc = 0;
    for i in positions {
        acc += ws[i];
        if acc >= k {
            out.push(i);
            acc = 0;
        }
    }
}

/// Best deletion set on a cycle with vertex weights, position 0 being the
/// attachment vertex. Returns the deleted positions and the weight of the
/// surviving run through position 0 (zero if it is deleted).
fn solve_cycle(ws: &[usize], k: usize) -> (Vec<usize>, usize) {
    let q = ws.len();
    let cap = k - 1;
    let total: usize = ws.iter().sum();
    if total <= cap {
        return (Vec::new(), total);
    }

    let mut best = {
        let mut del = vec![0];
        prune_path(ws, 1..q, k, &mut del);
        (del, 0)
    };

    // Runs covering positions q-l..q-1, 0, 1..=r with at least one vertex
    // left outside.
    let mut left_w = 0;
    for l in 0..q {
        if l > 0 {
            left_w += ws[q - l];
        }
        if left_w + ws[0] > cap {
            break;
        }
        let mut run_w = left_w + ws[0];
        for r in 0.. {
            if r > 0 {
                run_w += ws[r];
            }
            if run_w > cap || l + r + 1 > q - 1 {
                break;
            }
            let right_cut = r + 1;
            let left_cut = q - l - 1;
            let mut del = vec![right_cut];
            if left_cut != right_cut {
                del.push(left_cut);
                prune_path(ws, right_cut + 1..left_cut, k, &mut del);
            }
            if (del.len(), run_w) < (best.0.len(), best.1) {
                best = (del, run_w);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::figure1_graph;

    #[test]
    fn phase_a_examples() {
        let t = Graph::star(4);
        assert_eq!(phase_a(&t), PhaseA { removed: vec![], kept: (0..5).collect() });
        let a = phase_a(&Graph::cycle(5));
        assert_eq!(a.removed, vec![4]);
        assert_eq!(a.kept, vec![0, 1, 2, 3]);
        let a = phase_a(&Graph::complete(4));
        assert_eq!(a.removed, vec![2, 3]);
        assert_eq!(a.kept, vec![0, 1]);
    }

    #[test]
    fn phase_b_on_p7_removes_4_and_1() {
        let s = phase_b(&Graph::path(7), &(0..7).collect::<Vec<_>>(), 3).unwrap();
        assert_eq!(s, vec![0, 2, 3, 5, 6]);
        let removed = tree_clip(&Graph::path(7), &[true; 7], 3).unwrap();
        assert_eq!(removed, vec![4, 1]);
    }

    #[test]
    fn phase_b_star_removes_center() {
        let s = phase_b(&Graph::star(5), &(0..6).collect::<Vec<_>>(), 3).unwrap();
        assert_eq!(s, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn phase_b_small_components_untouched() {
        let g = Graph::path(2).disjoint_union(&Graph::path(2));
        assert_eq!(phase_b(&g, &[0, 1, 2, 3], 3).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn phase_b_rejects_cycles() {
        assert!(matches!(phase_b(&Graph::cycle(4), &[0, 1, 2, 3], 3), Err(Error::CyclicInput)));
        assert!(phase_b(&Graph::cycle(4), &[0, 1, 2], 3).is_ok());
    }

    #[test]
    fn construct_c5() {
        let s = construct_set(&Graph::cycle(5), 3).unwrap();
        assert_eq!(s.vertices, vec![0, 2, 3]);
        assert_eq!(s.phase_a_removed, vec![4]);
        assert_eq!(s.phase_b_removed, vec![1]);
        assert_eq!(s.guarantee, 3);
        assert_eq!(s.max_component, 2);
    }

    #[test]
    fn construct_two_cycle_example_and_p6() {
        let s = construct_set(&figure1_graph(3), 3).unwrap();
        assert!(s.len() >= 10);
        let s = construct_set(&Graph::path(6), 3).unwrap();
        assert!(s.len() >= 4);
    }

    #[test]
    fn construct_small_graph_keeps_everything() {
        let s = construct_set(&Graph::cycle(3), 5).unwrap();
        assert_eq!(s.vertices, vec![0, 1, 2]);
        assert_eq!(s.guarantee, 3);
    }

    #[test]
    fn verify_examples() {
        assert_eq!(verify_set(&Graph::cycle(5), 3, &[0, 2, 3]).unwrap(), 2);
        assert_eq!(verify_set(&Graph::cycle(5), 3, &[]).unwrap(), 0);
        assert_eq!(verify_set(&Graph::path(3), 3, &[0, 1, 2]).unwrap(), 3);
        assert!(!is_gk_independent(&Graph::path(3), 3, &[0, 1, 2]).unwrap());
        assert!(matches!(verify_set(&Graph::path(3), 3, &[3]), Err(Error::Range { .. })));
    }

    #[test]
    fn refinement_on_c7() {
        let s = equality_refinement(&Graph::cycle(7), 3).unwrap();
        assert_eq!(s.vertices, vec![1, 2, 4, 5]);
        assert_eq!(s.phase_a_removed, vec![0, 3, 6]);
    }

    #[test]
    fn refinement_on_two_cycle_example_and_p6() {
        assert_eq!(equality_refinement(&figure1_graph(3), 3).unwrap().len(), 10);
        assert_eq!(equality_refinement(&Graph::path(6), 3).unwrap().len(), 4);
    }

    #[test]
    fn refinement_rejects_non_extremal() {
        assert!(matches!(equality_refinement(&Graph::cycle(6), 3), Err(Error::NotExtremal { k: 3 })));
    }

    #[test]
    fn refinement_handles_two_attachment_points() {
        // Triangle 0-1-2 with P2 blocks 3-4 on vertex 0 and 5-6 on vertex 1, k = 2.
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (1, 5), (5, 6)]).unwrap();
        let s = equality_refinement(&g, 2).unwrap();
        assert_eq!(s.len(), 3);
        assert!(is_gk_independent(&g, 2, &s.vertices).unwrap());
    }

    #[test]
    fn solve_cycle_unweighted_matches_closed_form() {
        for k in 2..=5 {
            for q in 3..=20 {
                let (del, _) = solve_cycle(&vec![1; q], k);
                let alpha = if q < k { q } else { (k - 1) * q / k };
                assert_eq!(q - del.len(), alpha, "q={q} k={k}");
            }
        }
    }
}
