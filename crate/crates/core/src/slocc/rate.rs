use serde_json::{json, Value};

use super::convert::msrk;
use super::state::{vec_support, TripartiteState};
use crate::compression::asymptotic_profile;
use crate::error::{Error, Result};
use crate::matspace::{MatrixSpace, SizeGuard};
use crate::rank::RandomizedConfig;
use crate::shrunk::{has_shrunk_subspace, ShrunkDecision, ShrunkWitness};

/// Where the upper bound on the rate comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum UpperProvenance {
    /// No shrunk subspace: `msrk∞ = d`.
    ShrunkFree,
    /// The space is equivalent to a subspace of `A(p, q, d)`.
    CompressionEmbedding { p: usize, q: usize, d: usize, mrk_inf: f64 },
    /// `msrk∞ ≤ min(dA, dB)`.
    Trivial,
}

impl UpperProvenance {
    pub fn to_json(&self) -> Value {
        match self {
            UpperProvenance::ShrunkFree => json!({"kind": "shrunk-free"}),
            UpperProvenance::CompressionEmbedding { p, q, d, mrk_inf } => {
                json!({"kind": "compression-embedding", "p": p, "q": q, "d": d, "mrk_inf": mrk_inf})
            }
            UpperProvenance::Trivial => json!({"kind": "trivial"}),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateBounds {
    pub target: usize,
    pub lower: f64,
    pub upper: f64,
    pub exact: bool,
    pub provenance: UpperProvenance,
    /// `max_n log_r(msrk_n) / n` over the copies actually computed; equal
    /// to `lower` unless the rate is known exactly.
    pub finite_copy_lower: f64,
    /// `(n, msrk estimate)` for `n = 1, …, max_copies`.
    pub per_copy: Vec<(u32, usize)>,
}

impl RateBounds {
    pub fn to_json(&self) -> Value {
        json!({
            "target": self.target,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "provenance": self.provenance.to_json(),
            "finite_copy_lower": self.finite_copy_lower,
            "per_copy": self.per_copy.iter().map(|(n, r)| json!({"copies": n, "msrk": r})).collect::<Vec<_>>(),
        })
    }
}

/// Entry budget behind the default number of copies: the largest `n` with
/// `(dA·dB)^n` at most this many entries.
pub const DEFAULT_COPY_ENTRY_BUDGET: u128 = 1 << 12;

pub fn default_max_copies(space: &MatrixSpace, guard: SizeGuard) -> u32 {
    let per = (space.rows() * space.cols()) as u128;
    let budget = DEFAULT_COPY_ENTRY_BUDGET.min(u128::from(guard.0));
    let mut n = 1;
    let mut acc = per;
    while let Some(next) = acc.checked_mul(per).filter(|&x| x <= budget) {
        acc = next;
        n += 1;
    }
    n
}

/// Upper bound on `msrk∞` implied by a shrunk witness: after a change of
/// bases the space sits inside `A(dim S(U), d − dim U, d)`.
fn embedding_bound(space: &MatrixSpace, w: &ShrunkWitness) -> Result<(UpperProvenance, bool)> {
    let d = space.rows();
    let p = w.su.dim();
    let q = d - w.u.dim();
    let mrk_inf = if p >= 1 && q >= 1 {
        asymptotic_profile(p, q, d)?.mrk_inf
    } else {
        // A band of p full rows or q full columns.
        (p + q) as f64
    };
    let fills = space.dim() == p * d + (d - p) * q;
    Ok((UpperProvenance::CompressionEmbedding { p, q, d, mrk_inf }, fills))
}

fn log_base(x: f64, r: usize) -> f64 {
    // log2 is exact on powers of two, so log_2 of 2^k·√2 comes out exact too.
    x.log2() / (r as f64).log2()
}

/// Bounds on the asymptotic conversion rate toward Schmidt rank `target`.
pub fn rate_bounds(
    state: &TripartiteState,
    target: usize,
    max_copies: Option<u32>,
    cfg: &RandomizedConfig,
    guard: SizeGuard,
) -> Result<RateBounds> {
    if target < 2 {
        return Err(Error::DomainError(format!("target Schmidt rank must be at least 2, got {target}")));
    }
    let space = vec_support(state);
    let copies = max_copies.unwrap_or_else(|| default_max_copies(&space, guard)).max(1);
    let mut per_copy = Vec::new();
    let mut finite = f64::NEG_INFINITY;
    for n in 1..=copies {
        let r = msrk(state, n, cfg, guard)?.rank;
        per_copy.push((n, r));
        finite = finite.max(log_base(r as f64, target) / f64::from(n));
    }

    let trivial = log_base(space.rows().min(space.cols()) as f64, target);
    let (provenance, upper, exact) = if space.is_square() {
        match has_shrunk_subspace(&space, cfg, guard)? {
            ShrunkDecision::NoShrunk { .. } => (UpperProvenance::ShrunkFree, trivial, true),
            ShrunkDecision::Shrunk { witness: Some(w), .. } => {
                let (prov, fills) = embedding_bound(&space, &w)?;
                let UpperProvenance::CompressionEmbedding { mrk_inf, .. } = prov else { unreachable!() };
                (prov, log_base(mrk_inf, target).min(trivial), fills)
            }
            ShrunkDecision::Shrunk { witness: None, .. } => (UpperProvenance::Trivial, trivial, false),
        }
    } else {
        (UpperProvenance::Trivial, trivial, false)
    };
    // A finite-copy value reaching the upper bound pins the rate as well.
    let exact = exact || finite >= upper;
    let lower = if exact { upper } else { finite };
    Ok(RateBounds { target, lower, upper, exact, provenance, finite_copy_lower: finite, per_copy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slocc::fixtures;

    #[test]
    fn default_copies() {
        let g = SizeGuard::default();
        assert_eq!(default_max_copies(&MatrixSpace::skew_symmetric(3), g), 3);
        assert_eq!(default_max_copies(&MatrixSpace::skew_symmetric(5), g), 2);
        assert_eq!(default_max_copies(&MatrixSpace::skew_symmetric(3), SizeGuard(100)), 2);
    }

    #[test]
    fn skew3_rate_is_one() {
        let b = rate_bounds(&fixtures::skew(3), 3, None, &RandomizedConfig::default(), SizeGuard::default()).unwrap();
        assert!(b.exact);
        assert_eq!(b.provenance, UpperProvenance::ShrunkFree);
        assert!((b.lower - 1.0).abs() < 1e-12 && (b.upper - 1.0).abs() < 1e-12);
        assert!((b.finite_copy_lower - 1.0).abs() < 1e-12);
        assert_eq!(b.per_copy[..2], [(1, 2), (2, 9)]);
        // Odd tensor powers are spaces of skew-symmetric 27 x 27 matrices.
        assert!(b.per_copy[2].1 <= 26);
    }

    #[test]
    fn compression_state_rate() {
        let b = rate_bounds(&fixtures::compression_state(1, 1, 3), 2, Some(2), &RandomizedConfig::default(), SizeGuard::default())
            .unwrap();
        assert!(b.exact);
        assert_eq!(b.upper, 1.5);
        assert!(b.finite_copy_lower >= 6f64.log2() / 2.0 - 1e-12);
        assert!(matches!(b.provenance, UpperProvenance::CompressionEmbedding { p: 1, q: 1, d: 3, .. }));
    }

    #[test]
    fn ghz_rate() {
        let b = rate_bounds(&fixtures::ghz(), 2, None, &RandomizedConfig::default(), SizeGuard::default()).unwrap();
        assert!(b.exact);
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
    }

    #[test]
    fn product_rate_is_zero() {
        let b = rate_bounds(&fixtures::product(), 2, None, &RandomizedConfig::default(), SizeGuard::default()).unwrap();
        assert!(b.exact);
        assert_eq!((b.lower, b.upper), (0.0, 0.0));
    }

    #[test]
    fn target_must_be_two_or_more() {
        let r = rate_bounds(&fixtures::ghz(), 1, None, &RandomizedConfig::default(), SizeGuard::default());
        assert!(matches!(r, Err(Error::DomainError(_))));
    }
}
