//! Maximal ranks of matrix spaces and SLOCC convertibility of tripartite states.

pub mod arith;
pub mod cli;
pub mod compression;
mod error;
pub mod matspace;
pub mod rank;
pub mod shrunk;
pub mod slocc;

pub use error::{Error, Result};
