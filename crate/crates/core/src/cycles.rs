//! Cycle-space analysis: the DFS forest and its back edges, `ω(G)`, and the
//! cycle inventory of graphs whose cycles are pairwise vertex-disjoint,
//! together with the derived graphs `Γ_G` (cycle vertices deleted) and `T_G`
//! (each cycle contracted to one vertex).

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Subgraph};

/// Depth-first forest with lowest-id-first tie breaking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfsForest {
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    pub roots: Vec<usize>,
    /// Non-tree edges `(u, v)` with `v` an ancestor of `u`.
    pub back_edges: Vec<(usize, usize)>,
    /// Preorder.
    pub visit_order: Vec<usize>,
}

/// Runs the DFS with an explicit stack. Roots are taken in increasing id and
/// neighbours are scanned in increasing id, so the result coincides with the
/// textbook recursive traversal.
pub fn dfs_forest(g: &Graph) -> DfsForest {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut on_stack = vec![false; n];
    let mut roots = Vec::new();
    let mut back_edges = Vec::with_capacity(g.m().saturating_sub(n));
    let mut visit_order = Vec::with_capacity(n);
    // (vertex, index of the next neighbour to scan)
    let mut stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if visited[root] {
            continue;
        }
        roots.push(root);
        visited[root] = true;
        on_stack[root] = true;
        visit_order.push(root);
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            let nbrs = g.neighbors(v);
            if top.1 == nbrs.len() {
                on_stack[v] = false;
                stack.pop();
                continue;
            }
            let w = nbrs[top.1];
            top.1 += 1;
            if parent[v] == Some(w) {
                continue;
            }
            if !visited[w] {
                visited[w] = true;
                on_stack[w] = true;
                parent[w] = Some(v);
                depth[w] = depth[v] + 1;
                visit_order.push(w);
                stack.push((w, 0));
            } else if on_stack[w] {
                back_edges.push((v, w));
            }
        }
    }
    DfsForest { parent, depth, roots, back_edges, visit_order }
}

/// `ω(G) = m - n + c(G)`.
pub fn cycle_space_dimension(g: &Graph) -> usize {
    g.m() + g.components().count - g.n()
}

/// One vertex of `T_G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContractedVertex {
    /// A vertex of `G` lying on no cycle.
    Original(usize),
    /// The contraction of cycle number `i`.
    Cycle(usize),
}

/// `T_G` with the meaning of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contracted {
    pub graph: Graph,
    pub tags: Vec<ContractedVertex>,
}

/// Cycle inventory of a graph whose cycles are pairwise vertex-disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStructure {
    /// Each cycle in traversal order: consecutive entries are adjacent and the
    /// last closes back to the first.
    pub cycles: Vec<Vec<usize>>,
    pub omega: usize,
    /// Degree-3 anchor for pendant cycles.
    pub pendant: Vec<Option<usize>>,
    /// Index of the cycle containing each vertex.
    pub cycle_of: Vec<Option<usize>>,
    pub gamma: Subgraph,
    pub contracted: Contracted,
}

impl CycleStructure {
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn summary(&self) -> CycleSummary {
        CycleSummary {
            omega: self.omega,
            cycles: self
                .cycles
                .iter()
                .zip(&self.pendant)
                .map(|(c, &anchor)| CycleEntry { length: c.len(), vertices: c.clone(), pendant_anchor: anchor })
                .collect(),
            gamma_vertices: self.gamma.original.clone(),
            contracted_n: self.contracted.graph.n(),
            contracted_m: self.contracted.graph.m(),
        }
    }
}

/// JSON shape of a [`CycleStructure`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSummary {
    pub omega: usize,
    pub cycles: Vec<CycleEntry>,
    pub gamma_vertices: Vec<usize>,
    pub contracted_n: usize,
    pub contracted_m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleEntry {
    pub length: usize,
    pub vertices: Vec<usize>,
    pub pendant_anchor: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum CycleAnalysis {
    Disjoint(CycleStructure),
    /// Two cycles share `witness`.
    NotVertexDisjoint {
        witness: usize,
    },
}

impl CycleAnalysis {
    pub fn structure(&self) -> Option<&CycleStructure> {
        match self {
            CycleAnalysis::Disjoint(cs) => Some(cs),
            CycleAnalysis::NotVertexDisjoint { .. } => None,
        }
    }
}

/// Decides whether the cycles of `g` are pairwise vertex-disjoint and, if so,
/// lists them.
///
/// Every cycle is a sum of fundamental cycles of the DFS forest. If the
/// fundamental cycles are pairwise disjoint no other cycle exists, and if two
/// of them meet, the meeting vertex lies on two cycles. Marking stops at the
/// first vertex claimed twice.
pub fn cycle_structure(g: &Graph) -> CycleAnalysis {
    let forest = dfs_forest(g);
    let n = g.n();
    let mut cycle_of: Vec<Option<usize>> = vec![None; n];
    let mut cycles = Vec::with_capacity(forest.back_edges.len());

    for (idx, &(deep, top)) in forest.back_edges.iter().enumerate() {
        let mut walk = Vec::new();
        let mut v = deep;
        loop {
            if cycle_of[v].is_some() {
                return CycleAnalysis::NotVertexDisjoint { witness: v };
            }
            cycle_of[v] = Some(idx);
            walk.push(v);
            if v == top {
                break;
            }
            v = forest.parent[v].expect("back edges join a vertex to an ancestor");
        }
        walk.reverse();
        cycles.push(walk);
    }

    let pendant = cycles
        .iter()
        .map(|c| {
            let mut anchor = None;
            for &v in c {
                match g.degree(v) {
                    2 => {}
                    3 if anchor.is_none() => anchor = Some(v),
                    _ => return None,
                }
            }
            anchor
        })
        .collect();

    let keep: Vec<bool> = cycle_of.iter().map(Option::is_none).collect();
    let gamma = g.restrict(&keep);
    let contracted = contract(g, &cycle_of);

    CycleAnalysis::Disjoint(CycleStructure { omega: cycles.len(), cycles, pendant, cycle_of, gamma, contracted })
}

fn contract(g: &Graph, cycle_of: &[Option<usize>]) -> Contracted {
    let n = g.n();
    let mut node = vec![usize::MAX; n];
    let mut cycle_node: Vec<usize> = Vec::new();
    let mut tags = Vec::new();
    for v in 0..n {
        match cycle_of[v] {
            None => {
                node[v] = tags.len();
                tags.push(ContractedVertex::Original(v));
            }
            Some(c) => {
                if cycle_node.len() <= c {
                    cycle_node.resize(c + 1, usize::MAX);
                }
                if cycle_node[c] == usize::MAX {
                    cycle_node[c] = tags.len();
                    tags.push(ContractedVertex::Cycle(c));
                }
                node[v] = cycle_node[c];
            }
        }
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| cycle_of[u].is_none() || cycle_of[u] != cycle_of[v])
        .map(|&(u, v)| (node[u], node[v]));
    // With disjoint cycles every pair of pieces is joined by at most one edge.
    let graph = Graph::from_edges(tags.len(), edges).expect("contraction of disjoint cycles is simple");
    Contracted { graph, tags }
}

/// `Γ_G` with its relabel map.
pub fn gamma_graph(cs: &CycleStructure) -> &Subgraph {
    &cs.gamma
}

/// `T_G` with per-vertex tags.
pub fn contracted_graph(cs: &CycleStructure) -> &Contracted {
    &cs.contracted
}
