//! Generalized `k`-independent sets of finite simple graphs.
//!
//! A vertex set `S` is generalized `k`-independent when `G[S]` contains no
//! tree on `k` vertices, i.e. every component of `G[S]` has at most `k - 1`
//! vertices; `α_k(G)` is the largest size of such a set. For `k = 2` this is
//! the independence number and for `k = 3` the dissociation number.
//!
//! The crate provides
//! - the lower bound `α_k(G) ≥ ⌈(k-1)/k · (n - ω(G))⌉` with `ω(G)` the cycle
//!   space dimension, and refinements of it ([`bounds`]);
//! - a linear-time construction meeting that bound ([`constructor`]);
//! - exact solvers ([`exact`]);
//! - recognition and generation of the graphs attaining equality
//!   ([`extremal`]).

pub mod bounds;
pub mod constructor;
pub mod cycles;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod generators;
pub mod graph;
pub mod pipeline;

pub use bounds::{base_bound, cycle_alpha, path_alpha, pendant_slack, refined_bound, BoundReport, Rational};
pub use constructor::{
    construct_set, equality_refinement, optimal_disjoint_cycle_set, phase_a, phase_b, verify_set, GkSet,
};
pub use cycles::{cycle_space_dimension, cycle_structure, dfs_forest, CycleAnalysis, CycleStructure, DfsForest};
pub use error::{Error, Result};
pub use exact::{brute_force_alpha, exact_alpha, forest_tau, ExactResult, Method};
pub use extremal::{
    check_extremal, generate_extremal, generate_r_tree, r_membership, BlockDecomposition, ExtremalReport, Membership,
};
pub use generators::figure1_graph;
pub use graph::{parse_graph, parse_graph_with, write_graph, ComponentPartition, Graph, Subgraph};
