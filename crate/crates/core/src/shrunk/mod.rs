//! Shrunk subspaces, blow-ups and non-commutative rank bounds.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::rng;
use crate::arith::{GaussianRational, Rational};
use crate::compression::{build_compression_space, CompressionParams};
use crate::error::{Error, Result};
use crate::matspace::{Echelon, MatrixSpace, SizeGuard, SparseVec, Subspace};
use crate::rank::{max_rank_randomized, rank_exact, RandomizedConfig, Witness};

/// A subspace `U` of the column space with `dim S(U) < dim U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrunkWitness {
    pub u: Subspace,
    pub su: Subspace,
}

impl ShrunkWitness {
    pub fn shrinkage(&self) -> usize {
        self.u.dim() - self.su.dim()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "u": self.u.basis(),
            "su": self.su.basis(),
            "shrinkage": self.shrinkage(),
        })
    }
}

/// Computes `S(U)` exactly and returns a witness iff it is smaller than `U`.
pub fn verify_shrunk(space: &MatrixSpace, u: &Subspace) -> Result<Option<ShrunkWitness>> {
    let su = space.apply(u)?;
    Ok((su.dim() < u.dim()).then(|| ShrunkWitness { u: u.clone(), su }))
}

/// `U = span{e_q, …, e_{d−1}}` for `A(p, q, d)`; `S(U)` lies in the first `p` rows.
pub fn canonical_shrunk_of_compression(p: usize, q: usize, d: usize) -> Result<ShrunkWitness> {
    let params = CompressionParams::square(p, q, d)?;
    params.require_maximal()?;
    let space = build_compression_space(&params);
    let u = Subspace::coordinate(d, q..d);
    Ok(verify_shrunk(&space, &u)?.expect("p + q < d forces shrinkage"))
}

/// Best shrinkage among coordinate subspaces `span{e_j : j ∈ J}`, searched
/// exhaustively when the column count is at most `max_cols`. Ties keep the
/// smallest `J` in binary order.
pub fn coordinate_shrunk_search(space: &MatrixSpace, max_cols: usize) -> Option<ShrunkWitness> {
    let n = space.cols();
    if n > max_cols || n >= usize::BITS as usize {
        return None;
    }
    let columns: Vec<Vec<SparseVec>> = (0..n)
        .map(|j| {
            space
                .basis_matrices()
                .iter()
                .map(|b| SparseVec::from_dense(&b.column(j)))
                .filter(|v| !v.is_zero())
                .collect()
        })
        .collect();
    let mut best: Option<(usize, usize)> = None;
    for mask in 1usize..(1 << n) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|(c, _)| size <= c) {
            continue;
        }
        let mut image = Echelon::new(space.rows());
        for j in (0..n).filter(|j| mask >> j & 1 == 1) {
            for v in &columns[j] {
                image.insert(v.clone());
            }
        }
        if image.rank() < size && best.is_none_or(|(c, _)| size - image.rank() > c) {
            best = Some((size - image.rank(), mask));
        }
    }
    let (_, mask) = best?;
    let u = Subspace::coordinate(n, (0..n).filter(|j| mask >> j & 1 == 1));
    verify_shrunk(space, &u).ok().flatten()
}

/// `S ⊗ M(k)`.
pub fn blowup(space: &MatrixSpace, k: usize, guard: SizeGuard) -> Result<MatrixSpace> {
    assert!(k >= 1, "blow-up order must be positive");
    guard.check((space.rows() * k) as u128, (space.cols() * k) as u128)?;
    if k == 1 {
        return Ok(space.clone());
    }
    Ok(space.tensor(&MatrixSpace::full(k, k)))
}

/// A full-rank element of the `k`-th blow-up, found mod `p` and re-checked
/// exactly after lifting.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupCertificate {
    pub k: usize,
    pub witness: Witness,
    pub exact_rank: usize,
}

impl BlowupCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "prime": self.witness.prime,
            "coeffs": self.witness.coeffs,
            "rank": self.witness.rank,
            "exact_rank": self.exact_rank,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlowupProbe {
    pub k: usize,
    pub rank: usize,
    pub failure_bound: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ShrunkDecision {
    /// Certain: some blow-up contains a nonsingular matrix.
    NoShrunk { certificate: BlowupCertificate, probes: Vec<BlowupProbe> },
    /// Every tested blow-up looked singular. With a verified witness the
    /// answer is certain, otherwise it may be wrong with probability at most
    /// `failure_bound`.
    Shrunk { witness: Option<ShrunkWitness>, failure_bound: Rational, probes: Vec<BlowupProbe> },
}

impl ShrunkDecision {
    pub fn has_shrunk(&self) -> bool {
        matches!(self, ShrunkDecision::Shrunk { .. })
    }

    pub fn probes(&self) -> &[BlowupProbe] {
        match self {
            ShrunkDecision::NoShrunk { probes, .. } | ShrunkDecision::Shrunk { probes, .. } => probes,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ShrunkDecision::NoShrunk { certificate, .. } => json!({
                "decision": "no-shrunk",
                "certificate": certificate.to_json(),
                "failure_bound": "0",
            }),
            ShrunkDecision::Shrunk { witness, failure_bound, .. } => json!({
                "decision": "shrunk",
                "certificate": witness.as_ref().map(ShrunkWitness::to_json),
                "failure_bound": failure_bound.to_string(),
            }),
        }
    }
}

/// Blow-up orders searched for a square `d × d` space.
fn orders(d: usize) -> std::ops::RangeInclusive<usize> {
    1..=d.saturating_sub(1).max(1)
}

fn probe(space: &MatrixSpace, k: usize, cfg: &RandomizedConfig, guard: SizeGuard) -> Result<(MatrixSpace, crate::rank::MaxRankReport)> {
    let big = blowup(space, k, guard).map_err(|e| match e {
        Error::SizeGuardExceeded { entries, limit } => Error::BlowupSizeGuard { tested_up_to: k - 1, entries, limit },
        other => other,
    })?;
    let seed = rng::subseed(cfg.seed, rng::domain::BLOWUP << 32 | k as u64);
    let report = max_rank_randomized(&big, &cfg.with_seed(seed))?;
    Ok((big, report))
}

fn require_square(space: &MatrixSpace) -> Result<usize> {
    if !space.is_square() {
        return Err(Error::NonSquare { rows: space.rows(), cols: space.cols() });
    }
    Ok(space.rows())
}

/// Sweeps `k = 1, …, d−1`, stopping at the first blow-up whose randomized
/// rank is `k·d`.
pub fn has_shrunk_subspace(space: &MatrixSpace, cfg: &RandomizedConfig, guard: SizeGuard) -> Result<ShrunkDecision> {
    let d = require_square(space)?;
    let mut probes = Vec::new();
    let mut bound = Rational::zero();
    for k in orders(d) {
        let (big, report) = probe(space, k, cfg, guard)?;
        probes.push(BlowupProbe { k, rank: report.rank, failure_bound: report.failure_bound.clone() });
        if report.rank == k * d {
            let (_, exact_rank) = report.certify(&big)?;
            debug_assert_eq!(exact_rank, k * d);
            let certificate = BlowupCertificate { k, witness: report.witness, exact_rank };
            return Ok(ShrunkDecision::NoShrunk { certificate, probes });
        }
        bound += report.failure_bound;
    }
    let witness = coordinate_shrunk_search(space, COORDINATE_SEARCH_COLS);
    if witness.is_some() {
        bound = Rational::zero();
    }
    Ok(ShrunkDecision::Shrunk { witness, failure_bound: bound, probes })
}

/// Column count up to which coordinate witnesses are searched exhaustively.
pub const COORDINATE_SEARCH_COLS: usize = 12;

/// Re-checks a no-shrunk certificate from scratch.
pub fn verify_blowup_certificate(space: &MatrixSpace, cert: &BlowupCertificate, guard: SizeGuard) -> Result<bool> {
    let d = require_square(space)?;
    let big = blowup(space, cert.k, guard)?;
    if !cert.witness.verify(&big)? || cert.witness.rank != cert.k * d {
        return Ok(false);
    }
    Ok(rank_exact(&cert.witness.lift(&big)?) == cert.k * d)
}

#[derive(Clone, Debug, PartialEq)]
pub enum NcrkEvidence {
    Blowup { k: usize, rank: usize },
    Witness { shrinkage: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NcrkBounds {
    pub lower: usize,
    pub upper: usize,
    pub evidence: Vec<NcrkEvidence>,
}

/// `lower = max_k ⌈r_k / k⌉` over the blow-up sweep; `upper = d − c` for
/// the largest verified shrinkage `c` among `witnesses` and the coordinate
/// search.
pub fn ncrk_bounds(
    space: &MatrixSpace,
    witnesses: &[Subspace],
    cfg: &RandomizedConfig,
    guard: SizeGuard,
) -> Result<NcrkBounds> {
    let d = require_square(space)?;
    let mut evidence = Vec::new();
    let mut lower = 0;
    for k in orders(d) {
        let (_, report) = match probe(space, k, cfg, guard) {
            Ok(r) => r,
            Err(Error::BlowupSizeGuard { .. }) if k > 1 => break,
            Err(e) => return Err(e),
        };
        evidence.push(NcrkEvidence::Blowup { k, rank: report.rank });
        lower = lower.max(report.rank.div_ceil(k));
        if report.rank == k * d {
            break;
        }
    }
    let mut best = 0;
    let verified = witnesses
        .iter()
        .map(|u| verify_shrunk(space, u))
        .chain(std::iter::once(Ok(coordinate_shrunk_search(space, COORDINATE_SEARCH_COLS))));
    for w in verified {
        if let Some(w) = w? {
            evidence.push(NcrkEvidence::Witness { shrinkage: w.shrinkage() });
            best = best.max(w.shrinkage());
        }
    }
    let upper = d - best;
    if lower > upper {
        return Err(Error::InconsistentEvidence(format!(
            "blow-up rank forces ncrk >= {lower} but a verified witness gives ncrk <= {upper}"
        )));
    }
    Ok(NcrkBounds { lower, upper, evidence })
}

/// Span of integer vectors, for writing witnesses by hand.
pub fn subspace_from_rows(ambient: usize, rows: &[Vec<i64>]) -> Result<Subspace> {
    let vs: Vec<Vec<GaussianRational>> =
        rows.iter().map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect()).collect();
    Subspace::from_vectors(ambient, &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matspace::Matrix;

    fn a113() -> MatrixSpace {
        build_compression_space(&CompressionParams::square(1, 1, 3).unwrap())
    }

    #[test]
    fn verify_examples() {
        let w = verify_shrunk(&a113(), &Subspace::coordinate(3, [1, 2])).unwrap().unwrap();
        assert_eq!(w.su, Subspace::coordinate(3, [0]));
        assert_eq!(w.shrinkage(), 1);
        assert_eq!(verify_shrunk(&MatrixSpace::skew_symmetric(3), &Subspace::coordinate(3, [0])).unwrap(), None);
        let id = MatrixSpace::from_generators(&[Matrix::identity(3)]).unwrap();
        assert_eq!(verify_shrunk(&id, &Subspace::full(3)).unwrap(), None);
        assert!(matches!(verify_shrunk(&id, &Subspace::full(2)), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_shrunk_of_compression(1, 1, 3).unwrap().shrinkage(), 1);
        let w = canonical_shrunk_of_compression(2, 1, 5).unwrap();
        assert_eq!(w.u.dim(), 4);
        assert!(w.su.dim() <= 2 && w.shrinkage() >= 2);
        let w = canonical_shrunk_of_compression(1, 2, 4).unwrap();
        assert_eq!(w.u.dim(), 2);
        assert!(w.su.dim() <= 1 && w.shrinkage() >= 1);
        assert!(matches!(canonical_shrunk_of_compression(1, 2, 3), Err(Error::NotMaximalCompression { .. })));
    }

    #[test]
    fn blowup_examples() {
        let g = SizeGuard::default();
        let s = MatrixSpace::skew_symmetric(3);
        assert_eq!(blowup(&s, 1, g).unwrap(), s);
        let b = blowup(&s, 2, g).unwrap();
        assert_eq!((b.rows(), b.cols(), b.dim()), (6, 6, 12));
        let b = blowup(&a113(), 2, g).unwrap();
        assert_eq!((b.rows(), b.dim()), (6, 20));
        assert!(matches!(blowup(&s, 2, SizeGuard(10)), Err(Error::SizeGuardExceeded { .. })));
    }

    #[test]
    fn decisions() {
        let cfg = RandomizedConfig::default();
        let g = SizeGuard::default();
        let skew = MatrixSpace::skew_symmetric(3);
        match has_shrunk_subspace(&skew, &cfg, g).unwrap() {
            ShrunkDecision::NoShrunk { certificate, .. } => {
                assert_eq!(certificate.k, 2);
                assert_eq!(certificate.exact_rank, 6);
                assert!(verify_blowup_certificate(&skew, &certificate, g).unwrap());
            }
            other => panic!("{other:?}"),
        }
        match has_shrunk_subspace(&a113(), &cfg, g).unwrap() {
            ShrunkDecision::Shrunk { witness, failure_bound, probes } => {
                assert_eq!(witness.unwrap().shrinkage(), 1);
                assert!(failure_bound.is_zero());
                assert_eq!(probes.len(), 2);
            }
            other => panic!("{other:?}"),
        }
        let id = MatrixSpace::from_generators(&[Matrix::identity(4)]).unwrap();
        match has_shrunk_subspace(&id, &cfg, g).unwrap() {
            ShrunkDecision::NoShrunk { certificate, .. } => assert_eq!(certificate.k, 1),
            other => panic!("{other:?}"),
        }
        let rect = MatrixSpace::full(2, 3);
        assert!(matches!(has_shrunk_subspace(&rect, &cfg, g), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn guard_reports_tested_orders() {
        let cfg = RandomizedConfig::default();
        let err = has_shrunk_subspace(&a113(), &cfg, SizeGuard(20)).unwrap_err();
        assert!(matches!(err, Error::BlowupSizeGuard { tested_up_to: 1, .. }), "{err:?}");
    }

    #[test]
    fn ncrk_examples() {
        let cfg = RandomizedConfig::default();
        let g = SizeGuard::default();
        let b = ncrk_bounds(&MatrixSpace::skew_symmetric(3), &[], &cfg, g).unwrap();
        assert_eq!((b.lower, b.upper), (3, 3));
        let canon = canonical_shrunk_of_compression(1, 1, 3).unwrap();
        let b = ncrk_bounds(&a113(), &[canon.u], &cfg, g).unwrap();
        assert_eq!((b.lower, b.upper), (2, 2));
        let id = MatrixSpace::from_generators(&[Matrix::identity(5)]).unwrap();
        let b = ncrk_bounds(&id, &[], &cfg, g).unwrap();
        assert_eq!((b.lower, b.upper), (5, 5));
    }

    #[test]
    fn decision_json_shape() {
        let cfg = RandomizedConfig::default();
        let v = has_shrunk_subspace(&a113(), &cfg, SizeGuard::default()).unwrap().to_json();
        assert_eq!(v["decision"], "shrunk");
        assert_eq!(v["failure_bound"], "0");
        assert_eq!(v["certificate"]["shrinkage"], 1);
    }
}
