//! Deterministic random streams.
//!
//! Every randomized computation draws from its own ChaCha8 stream, addressed
//! by `(seed, domain, index)`. Work split across threads therefore sees the
//! same numbers as a sequential run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream domains, kept distinct so unrelated computations never share numbers.
pub mod domain {
    pub const MAX_RANK: u64 = 1;
    pub const BLOWUP: u64 = 2;
}

/// Opens the `index`-th stream of `domain` under `seed`.
pub fn stream(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mixed = seed ^ domain.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = ChaCha8Rng::seed_from_u64(mixed);
    rng.set_stream(index);
    rng
}

/// Derives a sub-seed, e.g. one per blow-up level.
pub fn subseed(seed: u64, tag: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add(tag.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
