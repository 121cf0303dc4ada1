use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Pow, ToPrimitive, Zero};

use super::asymptotic::kl_unchecked;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Upper and lower bounds on `Pr[Bin(N, prob) ≤ N′]` for `N′ < N·prob`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailBounds {
    pub lower: f64,
    pub upper: f64,
}

impl TailBounds {
    /// Whether `value` lies in the interval, allowing a relative slack of
    /// `rel` for rounding in the floating-point bounds.
    pub fn contains(&self, value: f64, rel: f64) -> bool {
        self.lower * (1.0 - rel) <= value && value <= self.upper * (1.0 + rel)
    }
}

fn check(n: u32, n_prime: u32, prob: f64) -> Result<()> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(Error::DomainError(format!("probability must lie in (0, 1), got {prob}")));
    }
    if n == 0 || f64::from(n_prime) >= f64::from(n) * prob {
        return Err(Error::DomainError(format!("need N' < N*prob (N={n}, N'={n_prime}, prob={prob})")));
    }
    Ok(())
}

/// `2^{−N·D(N′/N‖prob)} / √(2N)` and `2^{−N·D(N′/N‖prob)}`.
pub fn binomial_tail_bounds(n: u32, n_prime: u32, prob: f64) -> Result<TailBounds> {
    check(n, n_prime, prob)?;
    let nf = f64::from(n);
    let upper = (-nf * kl_unchecked(f64::from(n_prime) / nf, prob)).exp2();
    Ok(TailBounds { lower: upper / (2.0 * nf).sqrt(), upper })
}

/// `Σ_{k ≤ N′} C(N,k) prob^k (1−prob)^{N−k}`, evaluated exactly at the
/// binary value of `prob`.
pub fn binomial_tail_exact(n: u32, n_prime: u32, prob: f64) -> Result<Rational> {
    check(n, n_prime, prob)?;
    // prob = a/D with D a power of two, so the sum is an integer over D^N.
    let p = Rational::from_f64(prob).expect("finite probability");
    let (a, den) = (p.numer().clone(), p.denom().clone());
    let b = &den - &a;
    let mut binom = BigInt::one();
    let mut a_pow = BigInt::one();
    let mut sum = BigInt::zero();
    for k in 0..=n_prime {
        sum += &binom * &a_pow * Pow::pow(&b, n - k);
        binom = binom * (n - k) / (k + 1);
        a_pow *= &a;
    }
    Ok(Rational::new(sum, Pow::pow(den, n)))
}

/// Exact tail rounded to the nearest double.
pub fn tail_as_f64(r: &Rational) -> f64 {
    r.to_f64().expect("tail is a finite number")
}
