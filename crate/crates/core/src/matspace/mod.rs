//! Matrices, subspaces and matrix spaces over the Gaussian rationals.

mod echelon;
pub(crate) mod json;
mod matrix;
mod space;

pub use echelon::{Echelon, SparseVec};
pub use json::SpaceFile;
pub use matrix::Matrix;
pub use space::{MatrixSpace, SizeGuard, Subspace};
