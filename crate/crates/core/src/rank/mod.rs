//! Rank engines: exact, modular, randomized maximal rank and rank boosting.

mod boost;
mod certify;
mod exact;
mod modp;
mod randomized;

pub use boost::{greedy_start, max_rank_greedy, rank_boost};
pub use certify::{certified_max_rank, term_rank, RankInterval, UpperSource};
pub use exact::rank_exact;
pub use modp::{rank_mod, ModMatrix, ReducedSpace};
pub use randomized::{max_rank_randomized, max_rank_with_retry, MaxRankReport, RandomizedConfig, Witness};
