use thiserror::Error;

use crate::exact::ExactResult;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    Range { vertex: usize, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("input graph contains a cycle")]
    CyclicInput,

    #[error("input graph is not a tree")]
    NotATree,

    #[error("graph is not extremal for k = {k}")]
    NotExtremal { k: usize },

    #[error("equality refinement produced {got} vertices, expected {expected}")]
    RefinementFailure { got: usize, expected: usize },

    #[error("internal guarantee violated: {0}")]
    InternalGuaranteeViolation(String),

    #[error("graph has {n} vertices; this operation is limited to {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("search budget exhausted after {} nodes; best incumbent alpha = {}", .best.nodes_explored, .best.alpha)]
    BudgetExhausted { best: Box<ExactResult> },
}

pub type Result<T> = std::result::Result<T, Error>;
