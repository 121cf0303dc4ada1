//! Rank boosting inside a matrix space: from `X`, move to `X + r·Y` whenever
//! some generator `Y` maps `Ker X` outside `Im X`.

use super::exact::rank_exact;
use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::matspace::{Echelon, Matrix, MatrixSpace, SparseVec};

fn column_span(x: &Matrix) -> Echelon {
    Echelon::from_vectors(x.rows(), (0..x.cols()).map(|j| SparseVec::from_dense(&x.column(j))))
}

fn null_space(x: &Matrix) -> Echelon {
    Echelon::from_vectors(x.cols(), (0..x.rows()).map(|i| SparseVec::from_dense(x.row(i)))).nullspace()
}

fn escapes(y: &Matrix, ker: &Echelon, im: &Echelon) -> bool {
    ker.rows().iter().any(|u| {
        let yu = y.mul_vec(&u.to_dense(y.cols()));
        !im.contains(&SparseVec::from_dense(&yu))
    })
}

/// One boosting step. Returns `None` exactly when every element `Y` of the
/// space satisfies `Y·Ker X ⊆ Im X`.
pub fn rank_boost(space: &MatrixSpace, x: &Matrix) -> Result<Option<Matrix>> {
    if !space.contains(x) {
        return Err(Error::NotInSpace);
    }
    let rank = rank_exact(x);
    let ker = null_space(x);
    let im = column_span(x);
    for y in space.basis_matrices() {
        if !escapes(&y, &ker, &im) {
            continue;
        }
        // At most rank + 1 values of r fail, so rank + 2 candidates suffice.
        for r in 1..=(rank as i64 + 2) {
            let cand = x.add(&y.scale(&GaussianRational::from_int(r)))?;
            if rank_exact(&cand) > rank {
                return Ok(Some(cand));
            }
        }
        unreachable!("boost failed on {} + 2 candidates", rank);
    }
    Ok(None)
}

/// Canonical basis element of largest exact rank (first one on ties).
pub fn greedy_start(space: &MatrixSpace) -> Matrix {
    let mut best: Option<(usize, Matrix)> = None;
    for b in space.basis_matrices() {
        let r = rank_exact(&b);
        if best.as_ref().is_none_or(|(br, _)| r > *br) {
            best = Some((r, b));
        }
    }
    best.map(|b| b.1).unwrap_or_else(|| Matrix::zeros(space.rows(), space.cols()))
}

/// Boosts until no generator helps. The result is an exact element of the
/// space, so its rank is a certified lower bound on the maximal rank. It is
/// not claimed to reach the maximal rank.
pub fn max_rank_greedy(space: &MatrixSpace, start: Option<&Matrix>) -> Result<Matrix> {
    let mut x = match start {
        Some(s) => {
            if !space.contains(s) {
                return Err(Error::NotInSpace);
            }
            s.clone()
        }
        None => greedy_start(space),
    };
    while let Some(next) = rank_boost(space, &x)? {
        x = next;
    }
    Ok(x)
}
