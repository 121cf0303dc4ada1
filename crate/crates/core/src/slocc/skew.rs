use super::state::TripartiteState;
use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::matspace::Matrix;

fn check_odd(d: usize) -> Result<()> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenD(d));
    }
    if d < 3 {
        return Err(Error::InvalidParams(format!("d must be at least 3, got {d}")));
    }
    Ok(())
}

fn pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| ((i + 1)..d).map(move |j| (i, j)))
}

/// `Σ_{i<j} (|i⟩|j⟩ − |j⟩|i⟩) ⊗ |ψ_ij⟩` with one `C` basis vector per pair;
/// the overall factor `√(2/(d(d−1)))` is recorded symbolically.
pub fn build_skew_state(d: usize) -> Result<TripartiteState> {
    check_odd(d)?;
    let entries: Vec<(usize, usize, usize, i64)> = pairs(d)
        .enumerate()
        .flat_map(|(c, (i, j))| [(i, j, c, 1), (j, i, c, -1)])
        .collect();
    Ok(TripartiteState::from_triples([d, d, d * (d - 1) / 2], &entries)?
        .with_normalization(format!("sqrt(2/{})", d * (d - 1))))
}

/// `P = Σ_{i<j} E_ij ⊗ E_ij` with `E_ij = |i⟩⟨j| − |j⟩⟨i|`, an element of
/// `skew(d)^{⊗2}` of full rank `d²`.
pub fn skew_tensor_square_witness(d: usize) -> Result<Matrix> {
    check_odd(d)?;
    let mut p = Matrix::zeros(d * d, d * d);
    for (i, j) in pairs(d) {
        let mut e = Matrix::zeros(d, d);
        e[(i, j)] = GaussianRational::from_int(1);
        e[(j, i)] = GaussianRational::from_int(-1);
        p = p.add(&e.kronecker(&e))?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matspace::MatrixSpace;
    use crate::rank::rank_exact;
    use crate::slocc::vec_support;

    #[test]
    fn state_shapes() {
        let s = build_skew_state(3).unwrap();
        assert_eq!(s.dims(), [3, 3, 3]);
        assert_eq!(s.amplitudes().len(), 6);
        let s5 = build_skew_state(5).unwrap();
        assert_eq!(s5.dims(), [5, 5, 10]);
        assert_eq!(s5.amplitudes().len(), 20);
        assert_eq!(vec_support(&s), MatrixSpace::skew_symmetric(3));
        assert_eq!(build_skew_state(4), Err(Error::EvenD(4)));
        assert!(build_skew_state(1).is_err());
    }

    #[test]
    fn witness_has_full_rank() {
        for d in [3, 5] {
            let p = skew_tensor_square_witness(d).unwrap();
            assert_eq!(rank_exact(&p), d * d);
            let sq = MatrixSpace::skew_symmetric(d).tensor(&MatrixSpace::skew_symmetric(d));
            assert!(sq.contains(&p));
        }
        assert_eq!(skew_tensor_square_witness(2), Err(Error::EvenD(2)));
    }

    #[test]
    fn witness_block_structure() {
        let d = 3;
        let p = skew_tensor_square_witness(d).unwrap();
        // Each E ⊗ E is symmetric, so P is too.
        assert_eq!(p.transpose(), p);
        let block = |a: usize, b: usize| -> Vec<GaussianRational> {
            (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| p[(a * d + i, b * d + j)].clone()).collect()
        };
        for a in 0..d {
            assert!(block(a, a).iter().all(|x| *x == GaussianRational::from_int(0)));
            for b in 0..d {
                let neg: Vec<_> = block(b, a).iter().map(|x| -x.clone()).collect();
                assert_eq!(block(a, b), neg);
            }
        }
    }
}
