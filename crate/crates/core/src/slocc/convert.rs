use serde_json::{json, Value};

use super::state::{vec_support, TripartiteState};
use crate::error::{Error, Result};
use crate::matspace::{MatrixSpace, SizeGuard};
use crate::rank::{certified_max_rank, max_rank_with_retry, MaxRankReport, RandomizedConfig, RankInterval};
use crate::shrunk::{has_shrunk_subspace, ShrunkDecision};

/// `M(Ψ)^{⊗n}`.
pub fn support_power(state: &TripartiteState, copies: u32, guard: SizeGuard) -> Result<MatrixSpace> {
    if copies == 0 {
        return Err(Error::InvalidParams("copies must be at least 1".into()));
    }
    vec_support(state).tensor_power(copies, guard)
}

/// Randomized maximal Schmidt rank of `Ψ^{⊗n}`.
pub fn msrk(state: &TripartiteState, copies: u32, cfg: &RandomizedConfig, guard: SizeGuard) -> Result<MaxRankReport> {
    max_rank_with_retry(&support_power(state, copies, guard)?, cfg)
}

/// Largest `m` with `target^m ≤ value`; `None` when `target = 1`.
pub fn floor_log(value: usize, target: usize) -> Option<u32> {
    if target <= 1 {
        return None;
    }
    let mut m = 0;
    let mut acc = target;
    while acc <= value {
        m += 1;
        acc = acc.checked_mul(target)?;
    }
    Some(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvertibilityVerdict {
    pub copies: u32,
    pub target: usize,
    pub report: MaxRankReport,
    /// Exact rank of the lifted witness, when certification was requested.
    pub certified_rank: Option<usize>,
    pub convertible: bool,
    /// Copies of the target extractable from `copies` copies of the state;
    /// `None` means unbounded (target of Schmidt rank one).
    pub max_copies: Option<u32>,
}

impl ConvertibilityVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "copies": self.copies,
            "target": self.target,
            "msrk": self.report.rank,
            "failure_bound": self.report.failure_bound.to_string(),
            "witness": self.report.witness,
            "certified_rank": self.certified_rank,
            "verdict": if self.convertible { "yes" } else { "no" },
            "max_copies": self.max_copies,
        })
    }
}

/// Whether `Ψ^{⊗n}` converts to a bipartite state of Schmidt rank `target`.
pub fn can_convert(
    state: &TripartiteState,
    copies: u32,
    target: usize,
    cfg: &RandomizedConfig,
    guard: SizeGuard,
    certify: bool,
) -> Result<ConvertibilityVerdict> {
    if target == 0 {
        return Err(Error::DomainError("target Schmidt rank must be at least 1".into()));
    }
    let space = support_power(state, copies, guard)?;
    let report = max_rank_with_retry(&space, cfg)?;
    let certified_rank = if certify { Some(report.certify(&space)?.1) } else { None };
    let rank = certified_rank.unwrap_or(report.rank);
    Ok(ConvertibilityVerdict {
        copies,
        target,
        convertible: rank >= target,
        max_copies: floor_log(rank, target),
        certified_rank,
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupermultiplicativityTest {
    pub mrk: usize,
    pub image_dim: usize,
    pub kernel_dim: usize,
    pub cols: usize,
    /// `mrk < dim Im S`.
    pub image_condition: bool,
    /// `mrk < cols − dim Ker S`.
    pub kernel_condition: bool,
    /// Set for `rows > cols`, where the conditions are applied as written
    /// rather than to the transpose.
    pub rows_exceed_cols: bool,
}

impl SupermultiplicativityTest {
    pub fn holds(&self) -> bool {
        self.image_condition && self.kernel_condition
    }

    pub fn to_json(&self) -> Value {
        json!({
            "strict": self.holds(),
            "mrk": self.mrk,
            "image_dim": self.image_dim,
            "kernel_dim": self.kernel_dim,
            "cols": self.cols,
            "image_condition": self.image_condition,
            "kernel_condition": self.kernel_condition,
            "rows_exceed_cols": self.rows_exceed_cols,
        })
    }
}

/// Two-condition test for `msrk(Ψ^{⊗2}) > msrk(Ψ)²`.
pub fn strictly_supermultiplicative(state: &TripartiteState, cfg: &RandomizedConfig) -> Result<SupermultiplicativityTest> {
    let s = vec_support(state);
    let mrk = max_rank_with_retry(&s, cfg)?.rank;
    let image_dim = s.image().dim();
    let kernel_dim = s.kernel().dim();
    Ok(SupermultiplicativityTest {
        mrk,
        image_dim,
        kernel_dim,
        cols: s.cols(),
        image_condition: mrk < image_dim,
        kernel_condition: mrk < s.cols() - kernel_dim,
        rows_exceed_cols: s.rows() > s.cols(),
    })
}

/// Certified intervals for `msrk(Ψ)` and `msrk(Ψ^{⊗2})`.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareComparison {
    pub single: RankInterval,
    pub square: RankInterval,
}

impl SquareComparison {
    /// `Some(msrk₂ > msrk₁²)` when the intervals decide it.
    pub fn strict(&self) -> Option<bool> {
        if self.square.lower > self.single.upper.pow(2) {
            Some(true)
        } else if self.square.upper <= self.single.lower.pow(2) {
            Some(false)
        } else {
            None
        }
    }
}

pub fn compare_square(
    state: &TripartiteState,
    cfg: &RandomizedConfig,
    guard: SizeGuard,
    grid_budget: u64,
) -> Result<SquareComparison> {
    let s = vec_support(state);
    let single = certified_max_rank(&s, cfg, grid_budget)?;
    let square = certified_max_rank(&s.tensor_power(2, guard)?, cfg, grid_budget)?;
    Ok(SquareComparison { single, square })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reachability {
    pub reachable: bool,
    pub decision: ShrunkDecision,
}

/// Rate one toward the `d`-dimensional maximally entangled state is reachable
/// iff `M(Ψ)` has no shrunk subspace.
pub fn asymptotic_reachability(state: &TripartiteState, cfg: &RandomizedConfig, guard: SizeGuard) -> Result<Reachability> {
    let [da, db, _] = state.dims();
    if da != db {
        return Err(Error::NonSquare { rows: da, cols: db });
    }
    let decision = has_shrunk_subspace(&vec_support(state), cfg, guard)?;
    Ok(Reachability { reachable: !decision.has_shrunk(), decision })
}
