//! Tripartite states, their matrix spaces, and SLOCC convertibility.

mod convert;
pub mod fixtures;
mod rate;
mod skew;
mod state;

pub use convert::{
    asymptotic_reachability, can_convert, compare_square, floor_log, msrk, strictly_supermultiplicative,
    support_power, ConvertibilityVerdict, Reachability, SquareComparison, SupermultiplicativityTest,
};
pub use rate::{default_max_copies, rate_bounds, RateBounds, UpperProvenance, DEFAULT_COPY_ENTRY_BUDGET};
pub use skew::{build_skew_state, skew_tensor_square_witness};
pub use state::{vec_support, Amplitude, TripartiteState};
