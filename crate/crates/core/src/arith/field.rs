//! Prime fields `F_p` with `p ≡ 1 (mod 4)`, so that `i` has an image.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::scalar::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Largest prime below 2³¹ that is ≡ 1 (mod 4).
pub const DEFAULT_PRIME: u64 = 2_147_483_629;

/// `F_p` together with a fixed square root of −1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    modulus: u64,
    sqrt_minus_one: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::new(DEFAULT_PRIME).expect("default prime is valid")
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all `n < 3.3·10²⁴`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl PrimeField {
    /// Builds `F_p`; `p` must be a prime below 2³² with `p ≡ 1 (mod 4)`.
    ///
    /// The square root of −1 is `g^((p−1)/4)` for the least quadratic
    /// non-residue `g ≥ 2`, replaced by `p − r` when that is smaller so the
    /// choice is the least of the two roots.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::InvalidModulus { modulus: p, reason: "must be below 2^32" });
        }
        if !is_prime(p) {
            return Err(Error::InvalidModulus { modulus: p, reason: "not prime" });
        }
        if p % 4 != 1 {
            return Err(Error::InvalidModulus { modulus: p, reason: "not congruent to 1 mod 4" });
        }
        let mut g = 2;
        while pow_mod(g, (p - 1) / 2, p) != p - 1 {
            g += 1;
        }
        let r = pow_mod(g, (p - 1) / 4, p);
        Ok(Self { modulus: p, sqrt_minus_one: r.min(p - r) })
    }

    /// Next usable prime strictly below this one.
    pub fn next_below(&self) -> Option<Self> {
        let mut p = self.modulus.checked_sub(4)?;
        while p >= 5 {
            if is_prime(p) {
                return Self::new(p).ok();
            }
            p -= 4;
        }
        None
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn sqrt_minus_one(&self) -> u64 {
        self.sqrt_minus_one
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // both operands < 2^32, so the product fits
        (a * b) % self.modulus
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.modulus)
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.modulus)).then(|| self.pow(a, self.modulus - 2))
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("residue fits in u64")
    }

    fn reduce_rational(&self, r: &Rational, whole: &GaussianRational) -> Result<u64> {
        if r.is_zero() {
            return Ok(0);
        }
        let den = self.from_bigint(r.denom());
        let inv = self.inv(den).ok_or_else(|| Error::DenominatorDivisibleByP {
            value: whole.to_string(),
            modulus: self.modulus,
        })?;
        Ok(self.mul(self.from_bigint(r.numer()), inv))
    }

    /// Image of `x` under the ring homomorphism `i ↦ sqrt_minus_one`.
    pub fn reduce(&self, x: &GaussianRational) -> Result<u64> {
        let re = self.reduce_rational(x.re(), x)?;
        let im = self.reduce_rational(x.im(), x)?;
        Ok(self.add(re, self.mul(self.sqrt_minus_one, im)))
    }

    /// Uniform draw from `[0, p)`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.modulus)
    }
}
