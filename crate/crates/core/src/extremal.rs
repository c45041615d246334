//! Trees built from `k`-vertex blocks, and graphs attaining equality in the
//! cycle-space bound.
//!
//! A tree on `ik` vertices is in the family `R^k_i` when it is `i` connected
//! `k`-vertex blocks joined one by one along single edges. A graph is
//! extremal (`α_k = (k-1)(n - ω)/k`) iff its cycles are vertex-disjoint, each
//! has length `1 mod k`, and each component of `Γ_G` is in the family.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::check_k;
use crate::cycles::{cycle_space_dimension, cycle_structure, CycleAnalysis};
use crate::error::{Error, Result};
use crate::generators::{random_permutation, random_tree_edges, seeded_rng, SeededRng};
use crate::graph::Graph;

/// A partition of a tree into connected `k`-vertex blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// In the order the greedy detaches them; the block holding the root is last.
    pub blocks: Vec<Vec<usize>>,
    /// `(block vertex, vertex in the block above)` for every block but the last.
    pub block_tree_edges: Vec<(usize, usize)>,
    /// Per block, the vertex carrying the edge to the block above.
    pub anchors: Vec<Option<usize>>,
    pub block_sizes: Vec<usize>,
    pub remainder: usize,
}

impl BlockDecomposition {
    /// Maps every vertex id through `original`.
    pub fn relabel(&self, original: &[usize]) -> BlockDecomposition {
        BlockDecomposition {
            blocks: self.blocks.iter().map(|b| b.iter().map(|&v| original[v]).collect()).collect(),
            block_tree_edges: self.block_tree_edges.iter().map(|&(a, b)| (original[a], original[b])).collect(),
            anchors: self.anchors.iter().map(|a| a.map(|v| original[v])).collect(),
            block_sizes: self.block_sizes.clone(),
            remainder: self.remainder,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    Member(BlockDecomposition),
    NotMember {
        /// First vertex whose detached subtree exceeded `k` vertices.
        witness: Option<usize>,
        reason: String,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// Decides `t ∈ R^k_{n/k}`.
///
/// Rooted at vertex 0, the tree is pruned bottom-up: a vertex whose remaining
/// subtree reaches `k` vertices detaches it. The tree is in the family iff
/// every detached subtree has exactly `k` vertices and nothing remains.
pub fn r_membership(t: &Graph, k: usize) -> Result<Membership> {
    check_k(k)?;
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let n = t.n();
    if !n.is_multiple_of(k) {
        return Ok(Membership::NotMember { witness: None, reason: format!("{k} does not divide {n}") });
    }

    // Preorder with parents; reverse preorder is a valid post-order.
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in t.neighbors(v).iter().rev() {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }

    let mut acc = vec![1usize; n];
    let mut cut = vec![false; n];
    let mut cuts = Vec::new();
    for &v in order.iter().rev() {
        if acc[v] >= k {
            if acc[v] > k {
                return Ok(Membership::NotMember {
                    witness: Some(v),
                    reason: format!("vertex {v} detaches a subtree of {} vertices", acc[v]),
                });
            }
            cut[v] = true;
            cuts.push(v);
        } else if v != 0 {
            acc[parent[v]] += acc[v];
        }
    }
    let remainder = if cut[0] { 0 } else { acc[0] };
    if remainder != 0 {
        return Ok(Membership::NotMember {
            witness: None,
            reason: format!("{remainder} vertices remain after detaching all blocks"),
        });
    }

    let mut block_of = vec![usize::MAX; n];
    let index_of: std::collections::HashMap<usize, usize> = cuts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for &v in &order {
        block_of[v] = if cut[v] { index_of[&v] } else { block_of[parent[v]] };
    }
    let mut blocks = vec![Vec::with_capacity(k); cuts.len()];
    for v in 0..n {
        blocks[block_of[v]].push(v);
    }
    let mut block_tree_edges = Vec::new();
    let mut anchors = Vec::new();
    for &v in &cuts {
        if v == 0 {
            anchors.push(None);
        } else {
            anchors.push(Some(v));
            block_tree_edges.push((v, parent[v]));
        }
    }
    Ok(Membership::Member(BlockDecomposition {
        block_sizes: blocks.iter().map(Vec::len).collect(),
        blocks,
        block_tree_edges,
        anchors,
        remainder,
    }))
}

/// A generated tree together with its planted blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RTree {
    pub k: usize,
    pub graph: Graph,
    pub blocks: Vec<Vec<usize>>,
    pub bridges: Vec<(usize, usize)>,
}

/// Random member of `R^k_i`: `i` uniform labelled `k`-vertex trees, each
/// attached to the tree built so far by one edge between uniformly chosen
/// endpoints, then relabelled by a random permutation.
pub fn generate_r_tree(i: usize, k: usize, seed: u64) -> Result<RTree> {
    check_k(k)?;
    if i == 0 {
        return Err(Error::Parameter("an R-tree needs at least one block".into()));
    }
    let mut rng = seeded_rng(seed);
    let (edges, blocks, bridges) = build_blocks(i, k, 0, &mut rng);
    let n = i * k;
    let perm = random_permutation(n, &mut rng);
    let graph = Graph::from_edges(n, edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
    Ok(RTree {
        k,
        graph,
        blocks: relabel_lists(&blocks, &perm),
        bridges: bridges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
    })
}

type Edges = Vec<(usize, usize)>;

/// Blocks on ids `offset..offset + i*k`. Returns (all edges, blocks, bridges).
fn build_blocks(i: usize, k: usize, offset: usize, rng: &mut SeededRng) -> (Edges, Vec<Vec<usize>>, Edges) {
    let mut edges = Vec::new();
    let mut blocks = Vec::with_capacity(i);
    let mut bridges = Vec::new();
    for b in 0..i {
        let base = offset + b * k;
        edges.extend(random_tree_edges(k, rng).into_iter().map(|(u, v)| (base + u, base + v)));
        if b > 0 {
            let new_end = base + rng.gen_range(0..k);
            let old_end = offset + rng.gen_range(0..b * k);
            edges.push((new_end, old_end));
            bridges.push((new_end, old_end));
        }
        blocks.push((base..base + k).collect());
    }
    (edges, blocks, bridges)
}

fn relabel_lists(lists: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    lists
        .iter()
        .map(|l| {
            let mut out: Vec<usize> = l.iter().map(|&v| perm[v]).collect();
            out.sort_unstable();
            out
        })
        .collect()
}

/// Verdict on one cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleVerdict {
    pub vertices: Vec<usize>,
    pub length: usize,
    pub residue: usize,
    pub holds: bool,
}

/// Verdict on one component of `Γ_G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub vertices: Vec<usize>,
    pub size: usize,
    pub divisible: bool,
    /// Present when the component is in the block family (original ids).
    pub decomposition: Option<BlockDecomposition>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub k: usize,
    pub n: usize,
    pub omega: usize,
    pub is_extremal: bool,
    /// Cycles pairwise vertex-disjoint.
    pub condition_i: bool,
    pub overlap_witness: Option<usize>,
    /// Every cycle has length 1 mod k. `None` when condition (i) fails.
    pub condition_ii: Option<bool>,
    pub cycles: Vec<CycleVerdict>,
    /// Every `Γ_G` component is a union of `k`-blocks. `None` when (i) fails.
    pub condition_iii: Option<bool>,
    pub gamma_components: Vec<ComponentVerdict>,
}

/// Tests the three equality conditions.
pub fn check_extremal(g: &Graph, k: usize) -> Result<ExtremalReport> {
    check_k(k)?;
    let mut report = ExtremalReport {
        k,
        n: g.n(),
        omega: cycle_space_dimension(g),
        is_extremal: false,
        condition_i: false,
        overlap_witness: None,
        condition_ii: None,
        cycles: Vec::new(),
        condition_iii: None,
        gamma_components: Vec::new(),
    };
    let cs = match cycle_structure(g) {
        CycleAnalysis::NotVertexDisjoint { witness } => {
            report.overlap_witness = Some(witness);
            return Ok(report);
        }
        CycleAnalysis::Disjoint(cs) => cs,
    };
    report.condition_i = true;

    report.cycles = cs
        .cycles
        .iter()
        .map(|c| CycleVerdict { vertices: c.clone(), length: c.len(), residue: c.len() % k, holds: c.len() % k == 1 })
        .collect();
    let cond_ii = report.cycles.iter().all(|c| c.holds);

    for comp in cs.gamma.graph.components().members() {
        let size = comp.len();
        let divisible = size % k == 0;
        let decomposition = if divisible {
            let tree = cs.gamma.graph.induced_subgraph(&comp)?;
            match r_membership(&tree.graph, k)? {
                Membership::Member(d) => Some(d.relabel(&cs.gamma.to_original(&tree.original))),
                Membership::NotMember { .. } => None,
            }
        } else {
            None
        };
        report.gamma_components.push(ComponentVerdict {
            vertices: cs.gamma.to_original(&comp),
            size,
            divisible,
            holds: decomposition.is_some(),
            decomposition,
        });
    }
    let cond_iii = report.gamma_components.iter().all(|c| c.holds);
    report.condition_ii = Some(cond_ii);
    report.condition_iii = Some(cond_iii);
    report.is_extremal = cond_ii && cond_iii;
    Ok(report)
}

/// A generated extremal graph with its planted structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalInstance {
    pub k: usize,
    pub graph: Graph,
    /// Cycle vertex lists in cycle order.
    pub cycles: Vec<Vec<usize>>,
    /// Per planted `Γ_G` component, its `k`-blocks.
    pub tree_components: Vec<Vec<Vec<usize>>>,
    /// Edges joining blocks inside a component.
    pub block_bridges: Vec<(usize, usize)>,
    /// Edges joining pieces (cycles and tree components).
    pub bridges: Vec<(usize, usize)>,
}

/// Random connected extremal graph.
///
/// Builds cycles of lengths `a_i k + 1` and `num_tree_blocks` blocks grouped
/// into random `R`-trees, then joins the pieces by single edges along a random
/// tree on the pieces. Two tree pieces are never joined directly, so each
/// planted tree is exactly one component of `Γ_G`; with no cycles all blocks
/// form one tree.
pub fn generate_extremal(
    num_cycles: usize,
    cycle_multipliers: &[usize],
    num_tree_blocks: usize,
    k: usize,
    seed: u64,
) -> Result<ExtremalInstance> {
    check_k(k)?;
    if num_cycles + num_tree_blocks == 0 {
        return Err(Error::Parameter("need at least one cycle or tree block".into()));
    }
    if cycle_multipliers.len() != num_cycles {
        return Err(Error::Parameter(format!("{num_cycles} cycles but {} multipliers", cycle_multipliers.len())));
    }
    if cycle_multipliers.contains(&0) {
        return Err(Error::Parameter("cycle multipliers must be at least 1".into()));
    }
    let mut rng = seeded_rng(seed);

    // Pieces: (vertex range start, size, is_cycle)
    let mut edges: Edges = Vec::new();
    let mut pieces: Vec<(usize, usize, bool)> = Vec::new();
    let mut cycles = Vec::new();
    let mut next = 0;
    for &a in cycle_multipliers {
        let q = a * k + 1;
        let cyc: Vec<usize> = (next..next + q).collect();
        for i in 0..q {
            edges.push((cyc[i], cyc[(i + 1) % q]));
        }
        pieces.push((next, q, true));
        cycles.push(cyc);
        next += q;
    }

    let group_sizes = if num_tree_blocks == 0 {
        Vec::new()
    } else if num_cycles == 0 {
        vec![num_tree_blocks]
    } else {
        random_composition(num_tree_blocks, &mut rng)
    };
    let mut tree_components = Vec::new();
    let mut block_bridges = Vec::new();
    for blocks_in_group in group_sizes {
        let (e, blocks, br) = build_blocks(blocks_in_group, k, next, &mut rng);
        edges.extend(e);
        block_bridges.extend(br);
        tree_components.push(blocks);
        pieces.push((next, blocks_in_group * k, false));
        next += blocks_in_group * k;
    }

    // Random piece tree: piece 0 is a cycle whenever cycles exist, and a tree
    // piece only attaches to a cycle piece.
    let mut bridges = Vec::new();
    let mut rest: Vec<usize> = (1..pieces.len()).collect();
    rest.shuffle(&mut rng);
    let mut placed = vec![0usize];
    for p in rest {
        let candidates: Vec<usize> =
            if pieces[p].2 { placed.clone() } else { placed.iter().copied().filter(|&q| pieces[q].2).collect() };
        let q = candidates[rng.gen_range(0..candidates.len())];
        let a = pieces[p].0 + rng.gen_range(0..pieces[p].1);
        let b = pieces[q].0 + rng.gen_range(0..pieces[q].1);
        edges.push((a, b));
        bridges.push((a, b));
        placed.push(p);
    }

    let n = next;
    let perm = random_permutation(n, &mut rng);
    let graph = Graph::from_edges(n, edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
    let map_edges = |es: &[(usize, usize)]| es.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Ok(ExtremalInstance {
        k,
        cycles: cycles.iter().map(|c| c.iter().map(|&v| perm[v]).collect()).collect(),
        tree_components: tree_components.iter().map(|blocks| relabel_lists(blocks, &perm)).collect(),
        block_bridges: map_edges(&block_bridges),
        bridges: map_edges(&bridges),
        graph,
    })
}

/// Uniform random composition of `total` into positive parts.
fn random_composition(total: usize, rng: &mut SeededRng) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut run = 1;
    for _ in 1..total {
        if rng.gen_bool(0.5) {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    parts.push(run);
    parts
}
