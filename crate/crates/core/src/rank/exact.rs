//! Exact rank over ℂ by fraction-free (Bareiss) elimination on Gaussian integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matspace::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn one() -> Self {
        Self { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        Self { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Division known to be exact in ℤ[i].
    fn div_exact(&self, o: &Self) -> Self {
        if o.im.is_zero() {
            debug_assert!(self.re.is_multiple_of(&o.re) && self.im.is_multiple_of(&o.re));
            return Self { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        debug_assert!(re.is_multiple_of(&n) && im.is_multiple_of(&n));
        Self { re: re / &n, im: im / n }
    }
}

/// Clears denominators row by row, which leaves the rank unchanged.
fn integral_rows(a: &Matrix) -> Vec<Vec<GaussInt>> {
    (0..a.rows())
        .map(|i| {
            let row = a.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
            row.iter()
                .map(|x| {
                    let re = x.re() * &l;
                    let im = x.im() * &l;
                    GaussInt { re: re.to_integer(), im: im.to_integer() }
                })
                .collect()
        })
        .collect()
}

/// Rank of `a` over ℂ.
pub fn rank_exact(a: &Matrix) -> usize {
    let mut m = integral_rows(a);
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = GaussInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in (c + 1)..cols {
                let t = pivot.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = t.div_exact(&prev);
            }
            row[c] = GaussInt { re: BigInt::zero(), im: BigInt::zero() };
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}
