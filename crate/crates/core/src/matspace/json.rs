//! JSON form of a matrix space:
//! `{"rows": m, "cols": n, "basis": [[[scalar, ...] × n] × m, ...]}`.

use serde::{Deserialize, Serialize};

use super::{Matrix, MatrixSpace};
use crate::arith::GaussianRational;
use crate::error::{Error, Result};

type Grid = Vec<Vec<GaussianRational>>;

/// A single basis matrix, rejected while parsing if its rows are ragged so
/// that the error carries a position in the input.
#[derive(Deserialize)]
#[serde(try_from = "Grid")]
struct RectGrid(Grid);

impl TryFrom<Grid> for RectGrid {
    type Error = String;

    fn try_from(g: Grid) -> std::result::Result<Self, String> {
        let width = g.first().map_or(0, Vec::len);
        if let Some(i) = g.iter().position(|r| r.len() != width) {
            return Err(format!("ragged matrix: row {i} has {} entries, expected {width}", g[i].len()));
        }
        Ok(RectGrid(g))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    rows: usize,
    cols: usize,
    basis: Vec<RectGrid>,
}

/// Validated contents of a space file.
#[derive(Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSpace")]
pub struct SpaceFile {
    pub rows: usize,
    pub cols: usize,
    pub basis: Vec<Grid>,
}

impl TryFrom<RawSpace> for SpaceFile {
    type Error = String;

    fn try_from(raw: RawSpace) -> std::result::Result<Self, String> {
        if raw.rows == 0 || raw.cols == 0 {
            return Err("rows and cols must be positive".into());
        }
        if raw.basis.is_empty() {
            return Err("basis must contain at least one matrix".into());
        }
        for (k, RectGrid(m)) in raw.basis.iter().enumerate() {
            if m.len() != raw.rows {
                return Err(format!("basis[{k}] has {} rows, expected {}", m.len(), raw.rows));
            }
            if let Some(i) = m.iter().position(|r| r.len() != raw.cols) {
                return Err(format!(
                    "basis[{k}] row {i} has {} entries, expected {}",
                    m[i].len(),
                    raw.cols
                ));
            }
        }
        Ok(SpaceFile { rows: raw.rows, cols: raw.cols, basis: raw.basis.into_iter().map(|g| g.0).collect() })
    }
}

impl MatrixSpace {
    /// Parses a space file; errors carry serde's line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpaceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let gens = file
            .basis
            .into_iter()
            .map(Matrix::from_rows)
            .collect::<Result<Vec<_>>>()?;
        MatrixSpace::from_generators(&gens)
    }

    /// Serializes the canonical basis (a zero space is written as one zero matrix).
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut basis: Vec<Grid> = self.basis_matrices().iter().map(matrix_grid).collect();
        if basis.is_empty() {
            basis.push(matrix_grid(&Matrix::zeros(self.rows(), self.cols())));
        }
        serde_json::to_value(SpaceFile { rows: self.rows(), cols: self.cols(), basis })
            .expect("space serializes")
    }
}

pub(crate) fn matrix_grid(m: &Matrix) -> Grid {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}
