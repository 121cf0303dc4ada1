//! Maximal-compression spaces `A(p, q, m, n)` and their rank formulas.

mod asymptotic;
mod binomial;

pub use asymptotic::{asymptotic_profile, kl_divergence, AsymptoticProfile};
pub use binomial::{binomial_tail_bounds, binomial_tail_exact, tail_as_f64, TailBounds};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matspace::MatrixSpace;

/// `A(p, q, m, n)`: the `m × n` matrices supported on the first `p` rows and
/// the first `q` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CompressionParams {
    pub p: usize,
    pub q: usize,
    pub m: usize,
    pub n: usize,
}

impl CompressionParams {
    pub fn new(p: usize, q: usize, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParams(format!("m and n must be positive (got {m}x{n})")));
        }
        if p > m || q > n {
            return Err(Error::InvalidParams(format!("need p <= m and q <= n (got p={p}, q={q}, {m}x{n})")));
        }
        Ok(Self { p, q, m, n })
    }

    pub fn square(p: usize, q: usize, d: usize) -> Result<Self> {
        Self::new(p, q, d, d)
    }

    pub fn is_maximal(&self) -> bool {
        self.p + self.q < self.m.min(self.n)
    }

    pub fn require_maximal(&self) -> Result<()> {
        if self.is_maximal() {
            Ok(())
        } else {
            Err(Error::NotMaximalCompression { p: self.p, q: self.q, m: self.m, n: self.n })
        }
    }

    pub fn dim(&self) -> usize {
        self.p * self.n + (self.m - self.p) * self.q
    }

    /// `min{p + q, m, n}`.
    pub fn max_rank(&self) -> usize {
        (self.p + self.q).min(self.m).min(self.n)
    }

    pub fn positions(&self) -> Vec<(usize, usize)> {
        let (p, q, m, n) = (self.p, self.q, self.m, self.n);
        let band = (0..p).flat_map(move |i| (0..n).map(move |j| (i, j)));
        let cols = (p..m).flat_map(move |i| (0..q).map(move |j| (i, j)));
        band.chain(cols).collect()
    }
}

/// The space spanned by the elementary matrices of `params`. With `p = q = 0`
/// this is the zero space.
pub fn build_compression_space(params: &CompressionParams) -> MatrixSpace {
    MatrixSpace::from_positions(params.m, params.n, params.positions())
}

/// Maximal rank of `A(p₁,q₁,m₁,n₁) ⊗ A(p₂,q₂,m₂,n₂)`.
pub fn mrk_tensor_pair(a: &CompressionParams, b: &CompressionParams) -> Result<usize> {
    a.require_maximal()?;
    b.require_maximal()?;
    Ok(a.p * b.p
        + ((a.n - a.q) * b.q).min(a.p * (b.m - b.p))
        + ((a.m - a.p) * b.p).min(a.q * (b.n - b.q))
        + a.q * b.q)
}

fn binomials(n: u32) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for k in 0..n {
        let next = row[k as usize].clone() * (n - k) / (k + 1);
        row.push(next);
    }
    row
}

/// Maximal rank of `A(p, q, d)^{⊗copies}`.
pub fn mrk_tensor_power(p: usize, q: usize, d: usize, copies: u32) -> Result<BigUint> {
    CompressionParams::square(p, q, d)?.require_maximal()?;
    if copies == 0 {
        return Err(Error::InvalidParams("copies must be at least 1".into()));
    }
    let n = copies - 1;
    let (p, q, dp, dq) = (
        BigUint::from(p),
        BigUint::from(q),
        BigUint::from(d - p),
        BigUint::from(d - q),
    );
    let mut total = BigUint::zero();
    for (k, c) in (0..=n).zip(binomials(n)) {
        let first = (p.pow(n - k + 1) * dp.pow(k)).min(q.pow(k) * dq.pow(n - k + 1));
        let second = (q.pow(k + 1) * dq.pow(n - k)).min(p.pow(n - k) * dp.pow(k + 1));
        total += c * (first + second);
    }
    Ok(total)
}
