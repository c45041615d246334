//! Closed forms for paths and cycles, the cycle-space lower bound
//! `α_k(G) ≥ (k-1)/k · (n - ω(G))`, and its refinements.
//!
//! Everything here is exact: integer arithmetic and reduced rationals only.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cycles::{cycle_space_dimension, cycle_structure, CycleAnalysis};
use crate::error::{Error, Result};
use crate::extremal::{r_membership, Membership};
use crate::graph::Graph;

pub type Rational = num_rational::Ratio<i64>;

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// `⌈a / b⌉` for `b > 0`.
fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// `⌈(k-1) x / k⌉`, clamped at zero.
fn scaled_ceil(x: i64, k: usize) -> usize {
    let k = k as i64;
    ceil_div((k - 1) * x, k).max(0) as usize
}

/// `α_k(P_n) = ⌈(k-1) n / k⌉` (which is `n` when `n < k`).
pub fn path_alpha(n: usize, k: usize) -> Result<usize> {
    check_k(k)?;
    if n == 0 {
        return Err(Error::Parameter("a path needs at least one vertex".into()));
    }
    if n < k {
        return Ok(n);
    }
    Ok(scaled_ceil(n as i64, k))
}

/// `α_k(C_n) = ⌊(k-1) n / k⌋` for `n ≥ k`, and `n` for `3 ≤ n < k`.
pub fn cycle_alpha(n: usize, k: usize) -> Result<usize> {
    check_k(k)?;
    if n < 3 {
        return Err(Error::Parameter(format!("a cycle needs at least three vertices, got {n}")));
    }
    if n < k {
        return Ok(n);
    }
    Ok((k - 1) * n / k)
}

/// `⌈(k-1)(n - ω) / k⌉` clamped at zero; `n` itself when `n < k`.
pub fn base_bound(n: usize, omega: usize, k: usize) -> Result<usize> {
    check_k(k)?;
    if n < k {
        return Ok(n);
    }
    Ok(scaled_ceil(n as i64 - omega as i64, k))
}

/// `(k-1)(n - ω) / k` as an exact rational (may be negative for dense graphs).
pub fn base_value(n: usize, omega: usize, k: usize) -> Rational {
    let k = k as i64;
    Rational::new((k - 1) * (n as i64 - omega as i64), k)
}

/// Extra amount a pendant cycle of length `q` contributes over the equality
/// case: `⌈(k-1)(q-1)/k⌉ - (k-1)(q-1)/k`.
pub fn pendant_slack(q: usize, k: usize) -> Result<Rational> {
    check_k(k)?;
    if q < 3 {
        return Err(Error::Parameter(format!("a cycle needs at least three vertices, got {q}")));
    }
    let exact = Rational::new((k as i64 - 1) * (q as i64 - 1), k as i64);
    Ok(exact.ceil() - exact)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantSlack {
    pub cycle: usize,
    pub length: usize,
    pub anchor: usize,
    #[serde(with = "frac")]
    pub slack: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSlack {
    /// Vertices of the component, in original ids.
    pub vertices: Vec<usize>,
    pub size: usize,
    /// `size mod k`.
    pub residue: usize,
    /// `residue / k`.
    #[serde(with = "frac")]
    pub slack: Rational,
    /// The component has `k | size` but is not a union of `k`-blocks, which
    /// forces one more vertex.
    pub non_r_bonus: bool,
}

/// Itemized lower bounds for one graph and one `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub k: usize,
    pub n: usize,
    pub omega: usize,
    #[serde(with = "frac")]
    pub base: Rational,
    pub base_ceil: usize,
    /// `(k-1)/k` when two cycles share a vertex, else zero.
    #[serde(with = "frac")]
    pub overlap_slack: Rational,
    pub overlap_witness: Option<usize>,
    pub pendant_slacks: Vec<PendantSlack>,
    pub gamma_slacks: Vec<GammaSlack>,
    /// `⌈(k-1)(n - ω + 1)/k⌉` when cycles overlap.
    pub overlap_bound: Option<usize>,
    /// `⌈base + Σ σ(q)⌉` over all pendant cycles.
    pub pendant_bound: Option<usize>,
    /// `Σ_j ⌈(k-1)|T_j|/k⌉ + #non-R bonuses` over components of `Γ_G`.
    pub gamma_bound: Option<usize>,
    pub combined: usize,
    pub conservative: usize,
}

/// Assembles the refined lower bound.
///
/// With overlapping cycles only the overlap jump applies. With disjoint
/// cycles the pendant slacks add to the base bound (deleting every pendant
/// anchor leaves the rest of the graph plus one path per pendant cycle), and
/// the `Γ_G` slacks bound `α_k(Γ_G) ≤ α_k(G)` on their own; `combined` is
/// the larger of the two. `conservative` is the maximum of the base bound
/// and each slack source taken singly.
pub fn refined_bound(g: &Graph, k: usize) -> Result<BoundReport> {
    check_k(k)?;
    let n = g.n();
    let omega = cycle_space_dimension(g);
    let base = base_value(n, omega, k);
    let base_ceil = base_bound(n, omega, k)?;
    let mut report = BoundReport {
        k,
        n,
        omega,
        base,
        base_ceil,
        overlap_slack: Rational::from_integer(0),
        overlap_witness: None,
        pendant_slacks: Vec::new(),
        gamma_slacks: Vec::new(),
        overlap_bound: None,
        pendant_bound: None,
        gamma_bound: None,
        combined: base_ceil,
        conservative: base_ceil,
    };
    if n < k {
        report.combined = n;
        report.conservative = n;
        return Ok(report);
    }

    match cycle_structure(g) {
        CycleAnalysis::NotVertexDisjoint { witness } => {
            report.overlap_slack = Rational::new(k as i64 - 1, k as i64);
            report.overlap_witness = Some(witness);
            let bound = scaled_ceil(n as i64 - omega as i64 + 1, k);
            report.overlap_bound = Some(bound);
            report.combined = bound;
            report.conservative = base_ceil.max(bound);
        }
        CycleAnalysis::Disjoint(cs) => {
            for (idx, (cycle, anchor)) in cs.cycles.iter().zip(&cs.pendant).enumerate() {
                if let Some(anchor) = *anchor {
                    report.pendant_slacks.push(PendantSlack {
                        cycle: idx,
                        length: cycle.len(),
                        anchor,
                        slack: pendant_slack(cycle.len(), k)?,
                    });
                }
            }
            let comps = cs.gamma.graph.components().members();
            let mut gamma_total = 0;
            for comp in comps {
                let size = comp.len();
                let residue = size % k;
                let non_r_bonus = if residue == 0 {
                    let tree = cs.gamma.graph.induced_subgraph(&comp)?;
                    matches!(r_membership(&tree.graph, k)?, Membership::NotMember { .. })
                } else {
                    false
                };
                gamma_total += size - size / k + usize::from(non_r_bonus);
                report.gamma_slacks.push(GammaSlack {
                    vertices: cs.gamma.to_original(&comp),
                    size,
                    residue,
                    slack: Rational::new(residue as i64, k as i64),
                    non_r_bonus,
                });
            }

            let ceil_of = |r: Rational| r.ceil().to_integer().max(0) as usize;
            let pendant_sum: Rational = report.pendant_slacks.iter().map(|p| p.slack).sum();
            let pendant_bound = ceil_of(base + pendant_sum);
            let best_single_pendant =
                report.pendant_slacks.iter().map(|p| ceil_of(base + p.slack)).max().unwrap_or(base_ceil);
            if !report.pendant_slacks.is_empty() {
                report.pendant_bound = Some(pendant_bound);
            }
            report.gamma_bound = Some(gamma_total);
            report.combined = base_ceil.max(pendant_bound).max(gamma_total);
            report.conservative = base_ceil.max(best_single_pendant).max(gamma_total);
        }
    }
    Ok(report)
}

/// Serde adapter writing a rational as `{"num": .., "den": ..}`.
pub mod frac {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Doc {
        num: i64,
        den: i64,
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Doc { num: *r.numer(), den: *r.denom() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let doc = Doc::deserialize(d)?;
        if doc.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(doc.num, doc.den))
    }
}
