//! Simple undirected graphs on dense vertex ids `0..n`, the edge-list
//! interchange format, and elementary structural queries.
//!
//! Adjacency is stored in compressed sparse row form so that every traversal
//! in the crate is `O(n + m)` without per-vertex allocations.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Canonical edge list: `u < v`, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

impl Graph {
    /// Builds a graph from an edge sequence. Errors carry the 1-based position
    /// of the offending edge in the sequence.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let raw: Vec<(usize, usize)> = edges.into_iter().collect();
        let lines: Vec<usize> = (1..=raw.len()).collect();
        Self::build(n, raw, &lines)
    }

    fn build(n: usize, raw: Vec<(usize, usize)>, lines: &[usize]) -> Result<Graph> {
        let mut edges = Vec::with_capacity(raw.len());
        for (i, &(u, v)) in raw.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::Range { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { line: lines[i], vertex: u });
            }
            edges.push((u.min(v), u.max(v)));
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            let mut seen = HashSet::with_capacity(edges.len());
            for (i, &e) in edges.iter().enumerate() {
                if !seen.insert(e) {
                    return Err(Error::DuplicateEdge { line: lines[i], u: raw[i].0, v: raw[i].1 });
                }
            }
        }

        let mut degree = vec![0usize; n];
        for &(u, v) in &sorted {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0usize; 2 * sorted.len()];
        // Iterating the sorted edge list fills every row in increasing order.
        for &(u, v) in &sorted {
            targets[cursor[u]] = v;
            cursor[u] += 1;
        }
        for &(u, v) in &sorted {
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Ok(Graph { n, edges: sorted, offsets, targets })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new(), offsets: vec![0; n + 1], targets: Vec::new() }
    }

    /// `P_n` on `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// `C_n` on `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid complete graph")
    }

    /// `K_{1,leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::from_edges(self.n + other.n, edges).expect("union of simple graphs is simple")
    }

    /// Returns a copy of the graph with the extra edges added.
    pub fn with_edges<I>(&self, extra: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::from_edges(self.n, self.edges.iter().copied().chain(extra))
    }

    /// Returns a copy with `count` fresh isolated vertices appended.
    pub fn with_vertices(&self, count: usize) -> Graph {
        Graph::from_edges(self.n + count, self.edges.iter().copied()).expect("same edge set")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.components().count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.m() + 1 == self.n && self.components().count == 1
    }

    pub fn components(&self) -> ComponentPartition {
        const UNSET: usize = usize::MAX;
        let mut component_id = vec![UNSET; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if component_id[root] != UNSET {
                continue;
            }
            component_id[root] = count;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if component_id[w] == UNSET {
                        component_id[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        ComponentPartition { component_id, count }
    }

    /// `G - W`. Surviving vertices keep their relative order.
    pub fn delete_vertices(&self, w: &[usize]) -> Result<Subgraph> {
        let mut keep = vec![true; self.n];
        for &v in w {
            if v >= self.n {
                return Err(Error::Range { vertex: v, n: self.n });
            }
            keep[v] = false;
        }
        Ok(self.restrict(&keep))
    }

    /// `G[S]`. Vertices keep their relative order; duplicates in `s` are ignored.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Subgraph> {
        let mut keep = vec![false; self.n];
        for &v in s {
            if v >= self.n {
                return Err(Error::Range { vertex: v, n: self.n });
            }
            keep[v] = true;
        }
        Ok(self.restrict(&keep))
    }

    /// `G[S]` for a membership mask of length `n`.
    pub fn restrict(&self, keep: &[bool]) -> Subgraph {
        debug_assert_eq!(keep.len(), self.n);
        let mut new_id = vec![usize::MAX; self.n];
        let mut original = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                new_id[v] = original.len();
                original.push(v);
            }
        }
        let edges: Vec<(usize, usize)> =
            self.edges.iter().filter(|&&(u, v)| keep[u] && keep[v]).map(|&(u, v)| (new_id[u], new_id[v])).collect();
        // Order-preserving relabelling keeps the edge list sorted and simple.
        let graph = Graph::from_edges(original.len(), edges).expect("subgraph of a simple graph");
        Subgraph { graph, original }
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabelling by a permutation")
    }
}

/// The connected components of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPartition {
    /// `component_id[v]` is in `0..count`; components are numbered by their
    /// lowest vertex.
    pub component_id: Vec<usize>,
    pub count: usize,
}

impl ComponentPartition {
    /// Vertex lists per component, each sorted.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.component_id.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.count];
        for &c in &self.component_id {
            out[c] += 1;
        }
        out
    }
}

/// A derived graph together with the map from its vertex ids back to the
/// parent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original[new_id]` is the vertex id in the parent graph.
    pub original: Vec<usize>,
}

impl Subgraph {
    pub fn to_original(&self, vertices: &[usize]) -> Vec<usize> {
        vertices.iter().map(|&v| self.original[v]).collect()
    }
}

/// Parses the edge-list format with 0-indexed vertex ids.
pub fn parse_graph(text: &str) -> Result<Graph> {
    parse_graph_with(text, false)
}

/// Parses the edge-list format: a header `n m`, then exactly `m` lines `u v`.
/// Lines starting with `#` and blank lines are ignored. With `one_indexed`
/// the ids are read as `1..=n` and shifted down.
pub fn parse_graph_with(text: &str, one_indexed: bool) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw = Vec::new();
    let mut lines = Vec::new();
    let mut last_line = 0;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (a, b) = parse_pair(trimmed, lineno)?;
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                if raw.len() == m {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("more than the {m} edge lines declared in the header"),
                    });
                }
                let (u, v) = if one_indexed {
                    if a == 0 || b == 0 {
                        return Err(Error::Parse { line: lineno, message: "vertex id 0 in a 1-indexed file".into() });
                    }
                    (a - 1, b - 1)
                } else {
                    (a, b)
                };
                for x in [u, v] {
                    if x >= n {
                        return Err(Error::Range { vertex: x, n });
                    }
                }
                raw.push((u, v));
                lines.push(lineno);
            }
        }
    }

    let (n, m) =
        header.ok_or_else(|| Error::Parse { line: last_line.max(1), message: "missing \"n m\" header".into() })?;
    if raw.len() != m {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header declares {m} edges but {} were given", raw.len()),
        });
    }
    Graph::build(n, raw, &lines)
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok =
            fields.next().ok_or_else(|| Error::Parse { line: lineno, message: "expected two integers".into() })?;
        tok.parse::<usize>()
            .map_err(|_| Error::Parse { line: lineno, message: format!("not a non-negative integer: {tok:?}") })
    };
    let a = next()?;
    let b = next()?;
    if fields.next().is_some() {
        return Err(Error::Parse { line: lineno, message: "expected exactly two integers".into() });
    }
    Ok((a, b))
}

/// Serializes in the canonical edge-list form (sorted edges, `u < v`).
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(12 * (g.m() + 1));
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc { n: self.n, edges: self.edges.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        Graph::from_edges(doc.n, doc.edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_path() {
        let g = parse_graph("3 2\n0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn rejects_self_loop() {
        assert!(matches!(parse_graph("2 1\n0 0"), Err(Error::SelfLoop { line: 2, vertex: 0 })));
    }

    #[test]
    fn rejects_duplicate_edges_either_orientation() {
        let err = parse_graph("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn rejects_out_of_range_ids() {
        assert!(matches!(parse_graph("3 1\n0 3"), Err(Error::Range { vertex: 3, n: 3 })));
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        let err = parse_graph("# comment\n3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = parse_graph("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
        let err = parse_graph("3 1\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(matches!(parse_graph("# nothing\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("3 1\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn one_indexed_input_is_normalized() {
        let g = parse_graph_with("3 2\n1 2\n2 3\n", true).unwrap();
        assert_eq!(g, Graph::path(3));
        assert!(parse_graph_with("3 1\n0 1\n", true).is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse_graph("# header follows\n\n4 2\n# edge one\n0 1\n\n2 3\n").unwrap();
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(3, 2));
    }

    #[test]
    fn component_counts() {
        assert_eq!(Graph::path(3).disjoint_union(&Graph::path(3)).components().count, 2);
        assert_eq!(Graph::empty(5).components().count, 5);
        assert_eq!(Graph::empty(0).components().count, 0);
    }

    #[test]
    fn deleting_middle_of_p3() {
        let sub = Graph::path(3).delete_vertices(&[1]).unwrap();
        assert_eq!(sub.graph, Graph::empty(2));
        assert_eq!(sub.original, vec![0, 2]);
    }

    #[test]
    fn cycle_minus_vertex_is_path() {
        for v in 0..5 {
            let sub = Graph::cycle(5).delete_vertices(&[v]).unwrap();
            assert_eq!(sub.graph.m(), 3);
            assert!(sub.graph.is_tree());
            assert!((0..4).all(|x| sub.graph.degree(x) <= 2));
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let tri = Graph::complete(4).induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(tri.graph, Graph::complete(3));
        assert_eq!(tri.original, vec![0, 2, 3]);
        let ends = Graph::path(5).induced_subgraph(&[0, 4]).unwrap();
        assert_eq!(ends.graph, Graph::empty(2));
        let p4 = Graph::cycle(7).induced_subgraph(&[5, 6, 0, 1]).unwrap();
        assert!(p4.graph.is_tree() && p4.graph.n() == 4);
        assert!(matches!(Graph::path(3).induced_subgraph(&[7]), Err(Error::Range { .. })));
        assert!(matches!(Graph::path(3).delete_vertices(&[3]), Err(Error::Range { .. })));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(5, [(4, 0), (2, 0), (3, 1), (0, 1)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 4]);
        for u in 0..g.n() {
            for &v in g.neighbors(u) {
                assert!(g.neighbors(v).contains(&u));
            }
        }
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.m());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(4);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
}
