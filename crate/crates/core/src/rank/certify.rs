//! Certified two-sided bounds on the maximal rank of small spaces.

use super::exact::rank_exact;
use super::randomized::{max_rank_with_retry, RandomizedConfig};
use crate::arith::GaussianRational;
use crate::error::Result;
use crate::matspace::{Matrix, MatrixSpace};

/// `lower ≤ mrk ≤ upper`, where `lower` is the exact rank of `witness`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankInterval {
    pub lower: usize,
    pub upper: usize,
    pub witness: Matrix,
    /// Which argument produced `upper`.
    pub upper_source: UpperSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperSource {
    /// `min(m, n)`, `dim Im S` or `n − dim Ker S`.
    Trivial,
    /// Maximum matching of the support, for spaces spanned by elementary matrices.
    Matching,
    /// Every point of a grid `{0..r+1}^dim` has rank `≤ r`, so every
    /// `(r+1)`-minor vanishes identically.
    Grid,
    /// Nothing beyond the trivial bound could be certified within budget.
    Open,
}

impl RankInterval {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// Size of a maximum matching between rows and columns of `support`.
pub fn term_rank(rows: usize, cols: usize, support: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); rows];
    for &(i, j) in support {
        adj[i].push(j);
    }
    let mut owner: Vec<Option<usize>> = vec![None; cols];

    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }

    (0..rows)
        .filter(|&i| {
            let mut seen = vec![false; cols];
            augment(i, &adj, &mut seen, &mut owner)
        })
        .count()
}

fn is_elementary(space: &MatrixSpace) -> bool {
    space.basis_vectors().iter().all(|v| v.nnz() == 1)
}

/// Tries to pin down `mrk(space)` exactly.
///
/// The lower side is the exactly lifted randomized witness. The upper side
/// uses, in order, the trivial bounds, term rank for elementary spaces, and
/// finally an exhaustive grid search when `(r+2)^dim ≤ grid_budget`.
pub fn certified_max_rank(space: &MatrixSpace, cfg: &RandomizedConfig, grid_budget: u64) -> Result<RankInterval> {
    let report = max_rank_with_retry(space, cfg)?;
    let (witness, lower) = report.certify(space)?;
    let trivial = space
        .rows()
        .min(space.cols())
        .min(space.image().dim())
        .min(space.cols() - space.kernel().dim());
    let mut iv = RankInterval { lower, upper: trivial, witness, upper_source: UpperSource::Trivial };
    if iv.lower == iv.upper {
        return Ok(iv);
    }
    if is_elementary(space) {
        iv.upper = term_rank(space.rows(), space.cols(), &space.support());
        iv.upper_source = UpperSource::Matching;
        return Ok(iv);
    }
    let basis = space.basis_matrices();
    while iv.lower < iv.upper {
        let r = iv.lower;
        let side = r as u64 + 2;
        let points = u32::try_from(basis.len()).ok().and_then(|n| side.checked_pow(n));
        if points.is_none_or(|pts| pts > grid_budget) {
            iv.upper_source = UpperSource::Open;
            return Ok(iv);
        }
        match grid_search(space, &basis, side, r) {
            Some((m, s)) => {
                iv.lower = s;
                iv.witness = m;
            }
            None => {
                iv.upper = r;
                iv.upper_source = UpperSource::Grid;
            }
        }
    }
    Ok(iv)
}

fn grid_search(space: &MatrixSpace, basis: &[Matrix], side: u64, r: usize) -> Option<(Matrix, usize)> {
    let mut digits = vec![0u64; basis.len()];
    loop {
        let mut m = Matrix::zeros(space.rows(), space.cols());
        for (d, b) in digits.iter().zip(basis) {
            if *d != 0 {
                m = m.add(&b.scale(&GaussianRational::from_int(*d as i64))).expect("same shape");
            }
        }
        let s = rank_exact(&m);
        if s > r {
            return Some((m, s));
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return None;
            }
            digits[k] += 1;
            if digits[k] < side {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}
