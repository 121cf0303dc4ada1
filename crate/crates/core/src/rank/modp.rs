use crate::arith::PrimeField;
use crate::error::Result;
use crate::matspace::{Matrix, MatrixSpace};

/// Dense matrix over `F_p`, entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn reduce(a: &Matrix, field: &PrimeField) -> Result<Self> {
        let data = a.as_slice().iter().map(|x| field.reduce(x)).collect::<Result<_>>()?;
        Ok(Self { rows: a.rows(), cols: a.cols(), data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    /// Rank over `F_p` by Gaussian elimination.
    pub fn rank(&self, field: &PrimeField) -> usize {
        let mut a = self.data.clone();
        rank_in_place(&mut a, self.rows, self.cols, field)
    }
}

pub(crate) fn rank_in_place(a: &mut [u64], rows: usize, cols: usize, field: &PrimeField) -> usize {
    let p = field.modulus();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in c..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(a[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            a[r * cols + j] = field.mul(a[r * cols + j], inv);
        }
        let (head, tail) = a.split_at_mut((r + 1) * cols);
        let pivot_row = &head[r * cols..];
        for row in tail.chunks_exact_mut(cols) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for j in c..cols {
                let pv = pivot_row[j];
                if pv != 0 {
                    row[j] = (row[j] + nf * pv) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank over `F_p` of the reduction of `a`.
pub fn rank_mod(a: &Matrix, field: &PrimeField) -> Result<usize> {
    Ok(ModMatrix::reduce(a, field)?.rank(field))
}

/// Canonical basis of a space reduced into `F_p`, kept sparse.
#[derive(Clone, Debug)]
pub struct ReducedSpace {
    rows: usize,
    cols: usize,
    basis: Vec<Vec<(usize, u64)>>,
    field: PrimeField,
}

impl ReducedSpace {
    pub fn new(space: &MatrixSpace, field: PrimeField) -> Result<Self> {
        let basis = space
            .basis_vectors()
            .iter()
            .map(|v| {
                v.entries()
                    .iter()
                    .map(|(k, x)| Ok((*k, field.reduce(x)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self { rows: space.rows(), cols: space.cols(), basis, field })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ coeffs[k] · B_k mod p`.
    pub fn evaluate(&self, coeffs: &[u64]) -> ModMatrix {
        assert_eq!(coeffs.len(), self.basis.len());
        let f = &self.field;
        let mut m = ModMatrix::zeros(self.rows, self.cols);
        for (&c, b) in coeffs.iter().zip(&self.basis) {
            if c == 0 {
                continue;
            }
            for &(k, x) in b {
                m.data[k] = f.add(m.data[k], f.mul(c, x));
            }
        }
        m
    }
}
