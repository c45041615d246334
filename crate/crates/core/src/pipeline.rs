//! The full analysis of one graph for one `k`: cycle structure, bounds,
//! construction, equality refinement and (for small graphs) the exact value.

use serde::{Deserialize, Serialize};

use crate::bounds::refined_bound;
use crate::constructor::{construct_set, equality_refinement};
use crate::cycles::cycle_space_dimension;
use crate::error::{Error, Result};
use crate::exact::exact_alpha;
use crate::extremal::check_extremal;
use crate::graph::Graph;

/// Graphs above this order skip the exact solver.
pub const EXACT_LIMIT: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub base_ceil: usize,
    pub combined_bound: usize,
    pub constructed: usize,
    pub extremal: bool,
    /// Size from the equality refinement, on extremal graphs.
    pub refined: Option<usize>,
    pub exact: Option<usize>,
    /// False when the exact solver ran out of budget (`exact` is then the
    /// incumbent).
    pub exact_proven: bool,
}

pub fn run_pipeline(g: &Graph, k: usize, budget: u64) -> Result<PipelineReport> {
    let bound = refined_bound(g, k)?;
    let constructed = construct_set(g, k)?;
    let extremal = check_extremal(g, k)?.is_extremal;
    let refined = if extremal { Some(equality_refinement(g, k)?.len()) } else { None };
    let (exact, exact_proven) = if g.n() <= EXACT_LIMIT {
        match exact_alpha(g, k, budget) {
            Ok(r) => (Some(r.alpha), true),
            Err(Error::BudgetExhausted { best }) => (Some(best.alpha), false),
            Err(e) => return Err(e),
        }
    } else {
        (None, false)
    };
    Ok(PipelineReport {
        k,
        n: g.n(),
        m: g.m(),
        omega: cycle_space_dimension(g),
        base_ceil: bound.base_ceil,
        combined_bound: bound.combined,
        constructed: constructed.len(),
        extremal,
        refined,
        exact,
        exact_proven,
    })
}
