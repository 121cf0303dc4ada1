//! Sparse vectors and incrementally maintained reduced row echelon bases.

use num_traits::{One, Zero};

use crate::arith::GaussianRational;

/// Sparse vector: strictly increasing indices, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(Vec<(usize, GaussianRational)>);

impl SparseVec {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Builds from unsorted entries; duplicates are summed, zeros dropped.
    pub fn from_entries(mut entries: Vec<(usize, GaussianRational)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, GaussianRational)> = Vec::with_capacity(entries.len());
        for (k, v) in entries {
            match out.last_mut() {
                Some((last, acc)) if *last == k => *acc += &v,
                _ => out.push((k, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        Self(out)
    }

    pub fn from_dense(v: &[GaussianRational]) -> Self {
        Self(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k, x.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); len];
        for (k, v) in &self.0 {
            out[*k] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, GaussianRational)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn leading(&self) -> Option<usize> {
        self.0.first().map(|e| e.0)
    }

    pub fn get(&self, index: usize) -> Option<&GaussianRational> {
        self.0.binary_search_by_key(&index, |e| e.0).ok().map(|k| &self.0[k].1)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return Self::new();
        }
        Self(self.0.iter().map(|(k, v)| (*k, v * s)).collect())
    }

    /// `self − s·other`.
    pub fn sub_scaled(&self, s: &GaussianRational, other: &SparseVec) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    let v = &x.1 - &(s * &y.1);
                    if !v.is_zero() {
                        out.push((x.0, v));
                    }
                    a.next();
                    b.next();
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    out.push((*x).clone());
                    a.next();
                }
                (Some(_), Some(y)) | (None, Some(y)) => {
                    out.push((y.0, -(s * &y.1)));
                    b.next();
                }
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, None) => break,
            }
        }
        Self(out)
    }
}

/// Reduced row echelon basis of a subspace of `F^ambient`, kept reduced under insertion.
///
/// Rows are ordered by pivot, every pivot entry is one and every pivot
/// column is zero outside its own row. Two echelons over the same ambient
/// space span the same subspace iff they are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Echelon {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Self { ambient, rows: Vec::new() }
    }

    /// Trusts the caller that `rows` is already in reduced echelon form.
    pub(crate) fn from_reduced_rows(ambient: usize, mut rows: Vec<SparseVec>) -> Self {
        rows.sort_by_key(|r| r.leading());
        Self { ambient, rows }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(ambient: usize, vs: I) -> Self {
        let mut e = Self::new(ambient);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().expect("echelon rows are nonzero"))
    }

    /// Remainder of `v` after elimination against the basis.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for row in &self.rows {
            let pivot = row.leading().expect("nonzero row");
            if let Some(c) = v.get(pivot).cloned() {
                v = v.sub_scaled(&c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.entries().last().is_none_or(|e| e.0 < self.ambient));
        if self.rows.len() == self.ambient {
            return false;
        }
        let r = self.reduce(&v);
        let Some((pivot, lead)) = r.entries().first().cloned() else {
            return false;
        };
        let r = r.scale(&lead.inv().expect("nonzero leading entry"));
        for row in &mut self.rows {
            if let Some(c) = row.get(pivot).cloned() {
                *row = row.sub_scaled(&c, &r);
            }
        }
        let at = self.rows.partition_point(|row| row.leading() < Some(pivot));
        self.rows.insert(at, r);
        true
    }

    /// Basis of `{x : ⟨row, x⟩ = 0 for every row}` (plain bilinear pairing).
    pub fn nullspace(&self) -> Echelon {
        let pivots: Vec<usize> = self.pivots().collect();
        let mut is_pivot = vec![false; self.ambient];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.ambient).filter(|&c| !is_pivot[c]) {
            let mut entries = vec![(free, GaussianRational::one())];
            for (row, &p) in self.rows.iter().zip(&pivots) {
                if let Some(c) = row.get(free) {
                    entries.push((p, -c));
                }
            }
            basis.push(SparseVec::from_entries(entries));
        }
        Echelon::from_vectors(self.ambient, basis)
    }
}
