//! Scalars: exact Gaussian rationals and the prime fields used for sampling.

mod field;
pub mod rng;
mod scalar;

pub use field::{is_prime, PrimeField, DEFAULT_PRIME};
pub use scalar::{GaussianRational, Rational};
