use serde::Serialize;

use super::CompressionParams;
use crate::error::{Error, Result};

/// Binary relative entropy `D(a‖b)` in bits.
pub fn kl_divergence(a: f64, b: f64) -> Result<f64> {
    let open = |x: f64| x > 0.0 && x < 1.0;
    if !open(a) || !open(b) {
        return Err(Error::DomainError(format!("D(a||b) needs 0 < a, b < 1 (got a={a}, b={b})")));
    }
    Ok(kl_unchecked(a, b))
}

/// Same as [`kl_divergence`] but also accepts `a ∈ {0, 1}` (with `0·log 0 = 0`).
pub(crate) fn kl_unchecked(a: f64, b: f64) -> f64 {
    let term = |x: f64, y: f64| if x == 0.0 { 0.0 } else { x * (x / y).log2() };
    term(a, b) + term(1.0 - a, 1.0 - b)
}

/// Everything the closed-form asymptotic rank of `A(p, q, d)` depends on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticProfile {
    pub p: usize,
    pub q: usize,
    pub d: usize,
    pub p_prime: f64,
    pub q_prime: f64,
    pub lambda: f64,
    pub mu: f64,
    pub alpha: f64,
    /// `D(1−α‖p′)`.
    pub divergence_p: f64,
    /// `D(α‖q′)`.
    pub divergence_q: f64,
    pub mrk_inf: f64,
}

/// Limit of `mrk(A(p,q,d)^{⊗n})^{1/n}`.
pub fn asymptotic_profile(p: usize, q: usize, d: usize) -> Result<AsymptoticProfile> {
    CompressionParams::square(p, q, d)?.require_maximal()?;
    if p == 0 || q == 0 {
        return Err(Error::ZeroPQ { p, q });
    }
    let (pf, qf, df) = (p as f64, q as f64, d as f64);
    let p_prime = pf / df;
    let q_prime = qf / df;
    let lambda = ((df - pf) / qf).log2();
    let mu = ((df - qf) / pf).log2();
    let alpha = mu / (lambda + mu);
    let divergence_p = kl_unchecked(1.0 - alpha, p_prime);
    let divergence_q = kl_unchecked(alpha, q_prime);
    let mrk_inf = df * (-divergence_p).exp2().max((-divergence_q).exp2());
    Ok(AsymptoticProfile { p, q, d, p_prime, q_prime, lambda, mu, alpha, divergence_p, divergence_q, mrk_inf })
}
