use num_traits::Zero;

use super::echelon::{Echelon, SparseVec};
use super::matrix::Matrix;
use crate::arith::GaussianRational;
use crate::error::{Error, Result};

/// Upper limit on the number of entries of any matrix the library materializes
/// while forming tensor powers and blow-ups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard(pub u64);

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard(1 << 22)
    }
}

impl SizeGuard {
    pub fn check(&self, rows: u128, cols: u128) -> Result<()> {
        let entries = rows.saturating_mul(cols);
        if entries > self.0 as u128 {
            return Err(Error::SizeGuardExceeded { entries, limit: self.0 });
        }
        Ok(())
    }
}

/// A linear subspace of `ℂ^ambient`, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace(Echelon);

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self(Echelon::new(ambient))
    }

    pub fn full(ambient: usize) -> Self {
        Self::coordinate(ambient, 0..ambient)
    }

    /// `span{e_k : k ∈ indices}`.
    pub fn coordinate<I: IntoIterator<Item = usize>>(ambient: usize, indices: I) -> Self {
        let vs = indices.into_iter().map(|k| {
            assert!(k < ambient, "coordinate {k} outside ambient {ambient}");
            SparseVec::from_entries(vec![(k, GaussianRational::from_int(1))])
        });
        Self(Echelon::from_vectors(ambient, vs))
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<GaussianRational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::AmbientMismatch { expected: ambient, actual: v.len() });
        }
        Ok(Self(Echelon::from_vectors(ambient, vectors.iter().map(|v| SparseVec::from_dense(v)))))
    }

    pub(crate) fn from_echelon(e: Echelon) -> Self {
        Self(e)
    }

    pub(crate) fn echelon(&self) -> &Echelon {
        &self.0
    }

    pub fn ambient(&self) -> usize {
        self.0.ambient()
    }

    pub fn dim(&self) -> usize {
        self.0.rank()
    }

    pub fn basis(&self) -> Vec<Vec<GaussianRational>> {
        self.0.rows().iter().map(|r| r.to_dense(self.ambient())).collect()
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        v.len() == self.ambient() && self.0.contains(&SparseVec::from_dense(v))
    }
}

/// A span of `rows × cols` matrices.
///
/// Generators are reduced at construction to the canonical basis: the
/// reduced row echelon form of their row-major vectorizations. Basis
/// elements are stored sparsely since tensor powers of structured spaces
/// are overwhelmingly zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixSpace {
    rows: usize,
    cols: usize,
    basis: Echelon,
}

impl MatrixSpace {
    pub fn from_generators(generators: &[Matrix]) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::DimensionMismatch("a matrix space needs at least one generator".into()))?;
        let (rows, cols) = (first.rows(), first.cols());
        if let Some(g) = generators.iter().find(|g| (g.rows(), g.cols()) != (rows, cols)) {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{}, expected {rows}x{cols}",
                g.rows(),
                g.cols()
            )));
        }
        let basis = Echelon::from_vectors(
            rows * cols,
            generators.iter().map(|g| SparseVec::from_dense(g.as_slice())),
        );
        Ok(Self { rows, cols, basis })
    }

    /// Span of the elementary matrices `|i⟩⟨j|` for the given positions.
    pub fn from_positions<I>(rows: usize, cols: usize, positions: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        assert!(rows > 0 && cols > 0);
        let vs = positions.into_iter().map(|(i, j)| {
            assert!(i < rows && j < cols);
            SparseVec::from_entries(vec![(i * cols + j, GaussianRational::from_int(1))])
        });
        Self { rows, cols, basis: Echelon::from_vectors(rows * cols, vs) }
    }

    /// The full matrix space `M(rows × cols)`.
    pub fn full(rows: usize, cols: usize) -> Self {
        Self::from_positions(rows, cols, (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))))
    }

    /// `span{|i⟩⟨j| − |j⟩⟨i| : i < j}`.
    pub fn skew_symmetric(d: usize) -> Self {
        let gens: Vec<Matrix> = (0..d)
            .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut m = Matrix::zeros(d, d);
                m[(i, j)] = GaussianRational::from_int(1);
                m[(j, i)] = GaussianRational::from_int(-1);
                m
            })
            .collect();
        if gens.is_empty() {
            return Self::from_generators(&[Matrix::zeros(d.max(1), d.max(1))]).unwrap();
        }
        Self::from_generators(&gens).expect("consistent generators")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn basis_vectors(&self) -> &[SparseVec] {
        self.basis.rows()
    }

    pub fn basis_matrix(&self, k: usize) -> Matrix {
        let v = &self.basis.rows()[k];
        Matrix::from_vec(self.rows, self.cols, v.to_dense(self.rows * self.cols))
            .expect("basis vector has the ambient length")
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        (0..self.dim()).map(|k| self.basis_matrix(k)).collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        (m.rows(), m.cols()) == (self.rows, self.cols)
            && self.basis.contains(&SparseVec::from_dense(m.as_slice()))
    }

    /// Positions `(i, j)` where some element of the space is nonzero.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut seen = vec![false; self.rows * self.cols];
        for v in self.basis.rows() {
            for (k, _) in v.entries() {
                seen[*k] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, s)| **s)
            .map(|(k, _)| (k / self.cols, k % self.cols))
            .collect()
    }

    /// `Σ coeffs[k] · B_k` over the canonical basis.
    pub fn evaluate(&self, coeffs: &[GaussianRational]) -> Result<Matrix> {
        if coeffs.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), actual: coeffs.len() });
        }
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (c, v) in coeffs.iter().zip(self.basis.rows()) {
            if c.is_zero() {
                continue;
            }
            for (k, x) in v.entries() {
                m[(k / self.cols, k % self.cols)] += &(c * x);
            }
        }
        Ok(m)
    }

    /// Tensor product; the canonical basis is the set of pairwise Kronecker
    /// products of the factors' canonical bases.
    pub fn tensor(&self, other: &MatrixSpace) -> MatrixSpace {
        let (r2, c2) = (other.rows, other.cols);
        let rows = self.rows * r2;
        let cols = self.cols * c2;
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in self.basis.rows() {
            for b in other.basis.rows() {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (ka, va) in a.entries() {
                    let (i1, j1) = (ka / self.cols, ka % self.cols);
                    for (kb, vb) in b.entries() {
                        let (i2, j2) = (kb / c2, kb % c2);
                        entries.push(((i1 * r2 + i2) * cols + j1 * c2 + j2, va * vb));
                    }
                }
                out.push(SparseVec::from_entries(entries));
            }
        }
        // Leading entries of a⊗b are (lead a, lead b), all distinct; each
        // product vanishes on every other product's leading position, so the
        // family is already reduced.
        MatrixSpace { rows, cols, basis: Echelon::from_reduced_rows(rows * cols, out) }
    }

    /// `n`-fold tensor power, refused when the resulting matrices would
    /// exceed the size guard.
    pub fn tensor_power(&self, n: u32, guard: SizeGuard) -> Result<MatrixSpace> {
        assert!(n >= 1, "tensor power needs n >= 1");
        let rows = (self.rows as u128).checked_pow(n).unwrap_or(u128::MAX);
        let cols = (self.cols as u128).checked_pow(n).unwrap_or(u128::MAX);
        guard.check(rows, cols)?;
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.tensor(self);
        }
        Ok(acc)
    }

    /// Column span of all elements, a subspace of `ℂ^rows`.
    pub fn image(&self) -> Subspace {
        let mut e = Echelon::new(self.rows);
        for v in self.basis.rows() {
            let mut by_col: Vec<Vec<(usize, GaussianRational)>> = vec![Vec::new(); self.cols];
            for (k, x) in v.entries() {
                by_col[k % self.cols].push((k / self.cols, x.clone()));
            }
            for col in by_col.into_iter().filter(|c| !c.is_empty()) {
                e.insert(SparseVec::from_entries(col));
                if e.rank() == self.rows {
                    return Subspace::from_echelon(e);
                }
            }
        }
        Subspace::from_echelon(e)
    }

    /// Common kernel of all elements, a subspace of `ℂ^cols`.
    pub fn kernel(&self) -> Subspace {
        let mut e = Echelon::new(self.cols);
        for v in self.basis.rows() {
            let mut by_row: Vec<Vec<(usize, GaussianRational)>> = vec![Vec::new(); self.rows];
            for (k, x) in v.entries() {
                by_row[k / self.cols].push((k % self.cols, x.clone()));
            }
            for row in by_row.into_iter().filter(|r| !r.is_empty()) {
                e.insert(SparseVec::from_entries(row));
            }
        }
        Subspace::from_echelon(e.nullspace())
    }

    /// `S(U) = span{E·u : E ∈ S, u ∈ U}`.
    pub fn apply(&self, u: &Subspace) -> Result<Subspace> {
        if u.ambient() != self.cols {
            return Err(Error::AmbientMismatch { expected: self.cols, actual: u.ambient() });
        }
        let mut e = Echelon::new(self.rows);
        for b in self.basis.rows() {
            for uv in u.echelon().rows() {
                let mut out = Vec::new();
                for (k, x) in b.entries() {
                    if let Some(y) = uv.get(k % self.cols) {
                        out.push((k / self.cols, x * y));
                    }
                }
                e.insert(SparseVec::from_entries(out));
            }
        }
        Ok(Subspace::from_echelon(e))
    }

    /// The equivalent space `{P·E·Q : E ∈ S}`.
    pub fn equivalent_transform(&self, p: &Matrix, q: &Matrix) -> Result<MatrixSpace> {
        if (p.rows(), p.cols()) != (self.rows, self.rows) || (q.rows(), q.cols()) != (self.cols, self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "P must be {0}x{0} and Q {1}x{1}",
                self.rows, self.cols
            )));
        }
        if crate::rank::rank_exact(p) < self.rows || crate::rank::rank_exact(q) < self.cols {
            return Err(Error::SingularTransform);
        }
        let gens: Vec<Matrix> = self
            .basis_matrices()
            .iter()
            .map(|e| p.mul(e).and_then(|pe| pe.mul(q)))
            .collect::<Result<_>>()?;
        if gens.is_empty() {
            return Ok(self.clone());
        }
        MatrixSpace::from_generators(&gens)
    }
}
