//! Small states used throughout the tests and shipped as JSON files.

use super::skew::build_skew_state;
use super::state::TripartiteState;
use crate::compression::CompressionParams;

pub fn skew(d: usize) -> TripartiteState {
    build_skew_state(d).expect("odd d >= 3")
}

/// `|000⟩ + |111⟩`.
pub fn ghz() -> TripartiteState {
    TripartiteState::from_triples([2, 2, 2], &[(0, 0, 0, 1), (1, 1, 1, 1)])
        .expect("valid")
        .with_normalization("sqrt(1/2)")
}

/// `|001⟩ + |010⟩ + |100⟩`.
pub fn w() -> TripartiteState {
    TripartiteState::from_triples([2, 2, 2], &[(0, 0, 1, 1), (0, 1, 0, 1), (1, 0, 0, 1)])
        .expect("valid")
        .with_normalization("sqrt(1/3)")
}

/// `|000⟩`.
pub fn product() -> TripartiteState {
    TripartiteState::from_triples([2, 2, 1], &[(0, 0, 0, 1)]).expect("valid")
}

/// `Σ_{a,b} |a⟩|b⟩|a·d + b⟩`, whose support is all of `M(d)`.
pub fn full(d: usize) -> TripartiteState {
    let entries: Vec<_> = (0..d).flat_map(|a| (0..d).map(move |b| (a, b, a * d + b, 1))).collect();
    TripartiteState::from_triples([d, d, d * d], &entries).expect("valid")
}

/// One `C` basis vector per elementary generator of `A(p, q, d)`.
pub fn compression_state(p: usize, q: usize, d: usize) -> TripartiteState {
    let params = CompressionParams::square(p, q, d).expect("valid parameters");
    let entries: Vec<_> = params.positions().into_iter().enumerate().map(|(c, (a, b))| (a, b, c, 1)).collect();
    TripartiteState::from_triples([d, d, entries.len()], &entries).expect("nonempty")
}
