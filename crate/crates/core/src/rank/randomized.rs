//! Schwartz–Zippel estimation of the maximal rank of a matrix space.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::exact::rank_exact;
use super::modp::ReducedSpace;
use crate::arith::rng::{self, domain};
use crate::arith::{GaussianRational, PrimeField, Rational};
use crate::error::{Error, Result};
use crate::matspace::{Matrix, MatrixSpace};

#[derive(Clone, Debug)]
pub struct RandomizedConfig {
    pub trials: u32,
    pub seed: u64,
    pub field: PrimeField,
    /// Worker threads; results never depend on this.
    pub jobs: usize,
}

impl Default for RandomizedConfig {
    fn default() -> Self {
        Self { trials: 16, seed: 0, field: PrimeField::default(), jobs: 1 }
    }
}

impl RandomizedConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn with_field(&self, field: PrimeField) -> Self {
        Self { field, ..self.clone() }
    }
}

/// Coefficients over `F_p` for the canonical basis, re-checkable by anyone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub prime: u64,
    pub coeffs: Vec<u64>,
    pub rank: usize,
}

impl Witness {
    /// Substitutes the coefficients and recomputes the rank mod `prime`.
    pub fn verify(&self, space: &MatrixSpace) -> Result<bool> {
        if self.coeffs.len() != space.dim() {
            return Err(Error::LengthMismatch { expected: space.dim(), actual: self.coeffs.len() });
        }
        let field = PrimeField::new(self.prime)?;
        let reduced = ReducedSpace::new(space, field)?;
        Ok(reduced.evaluate(&self.coeffs).rank(reduced.field()) == self.rank)
    }

    /// The exact matrix obtained by reading each coefficient as the integer
    /// in `(−p/2, p/2]`. Its rank over ℂ is at least `self.rank`.
    pub fn lift(&self, space: &MatrixSpace) -> Result<Matrix> {
        let half = self.prime / 2;
        let coeffs: Vec<GaussianRational> = self
            .coeffs
            .iter()
            .map(|&c| {
                let v = if c > half { c as i64 - self.prime as i64 } else { c as i64 };
                GaussianRational::from_int(v)
            })
            .collect();
        space.evaluate(&coeffs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxRankReport {
    pub rank: usize,
    pub witness: Witness,
    pub trials: u32,
    /// Upper bound on `Pr[rank < mrk]`.
    pub failure_bound: Rational,
}

impl MaxRankReport {
    /// Lifts the witness and recomputes its rank exactly; the result is a
    /// certified lower bound on the maximal rank.
    pub fn certify(&self, space: &MatrixSpace) -> Result<(Matrix, usize)> {
        let m = self.witness.lift(space)?;
        let r = rank_exact(&m);
        debug_assert!(r >= self.rank, "lifted rank {r} below modular rank {}", self.rank);
        Ok((m, r))
    }
}

fn failure_bound(rank: usize, space: &MatrixSpace, cfg: &RandomizedConfig) -> Rational {
    let cap = space.rows().min(space.cols());
    if space.dim() == 0 || rank == cap {
        return Rational::zero();
    }
    let ratio = Rational::new(BigInt::from(cap), BigInt::from(cfg.field.modulus()));
    Pow::pow(ratio, cfg.trials).min(Rational::one())
}

fn trial(reduced: &ReducedSpace, cfg: &RandomizedConfig, index: u64) -> (usize, Vec<u64>) {
    let mut stream = rng::stream(cfg.seed, domain::MAX_RANK, index);
    let coeffs: Vec<u64> = (0..reduced.dim()).map(|_| cfg.field.random_element(&mut stream)).collect();
    let r = reduced.evaluate(&coeffs).rank(&cfg.field);
    (r, coeffs)
}

/// Best of `cfg.trials` uniform samples. Trial `i` always reads stream `i`,
/// so the answer is the same for any number of jobs, and a run with more
/// trials never reports less.
pub fn max_rank_randomized(space: &MatrixSpace, cfg: &RandomizedConfig) -> Result<MaxRankReport> {
    assert!(cfg.trials >= 1, "at least one trial is required");
    let reduced = ReducedSpace::new(space, cfg.field)?;
    let cap = space.rows().min(space.cols());
    let t = u64::from(cfg.trials);

    let results: Vec<(usize, Vec<u64>)> = if cfg.jobs <= 1 {
        let mut out = Vec::new();
        for i in 0..t {
            let res = trial(&reduced, cfg, i);
            let done = res.0 == cap;
            out.push(res);
            if done {
                break;
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| (0..t).into_par_iter().map(|i| trial(&reduced, cfg, i)).collect())
    };

    // First trial attaining the maximum; identical for both paths because
    // the sequential path only stops after reaching the cap.
    let best = results.iter().map(|r| r.0).max().unwrap_or(0);
    let (rank, coeffs) = results.into_iter().find(|r| r.0 == best).expect("nonempty");
    Ok(MaxRankReport {
        rank,
        witness: Witness { prime: cfg.field.modulus(), coeffs, rank },
        trials: cfg.trials,
        failure_bound: failure_bound(rank, space, cfg),
    })
}

/// Retries with successively smaller admissible primes when the space has a
/// denominator divisible by the configured one.
pub fn max_rank_with_retry(space: &MatrixSpace, cfg: &RandomizedConfig) -> Result<MaxRankReport> {
    let mut cfg = cfg.clone();
    loop {
        match max_rank_randomized(space, &cfg) {
            Err(Error::DenominatorDivisibleByP { .. }) => {
                let next = cfg.field.next_below().ok_or(Error::InvalidModulus {
                    modulus: cfg.field.modulus(),
                    reason: "no smaller admissible prime left",
                })?;
                cfg.field = next;
            }
            other => return other,
        }
    }
}
