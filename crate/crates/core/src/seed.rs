//! Seed derivation and random streams.
//!
//! Every random quantity is drawn from a ChaCha8 stream (`rand_chacha`,
//! pinned version) whose 64-bit seed is derived from the base seed and a
//! structured path of indices. The path is folded through the SplitMix64
//! finalizer:
//!
//! ```text
//! h0     = mix(base ^ GOLDEN)
//! h(k+1) = mix(h(k) ^ mix(path[k] + GOLDEN))
//! ```
//!
//! Streams never share state, so adding a video, a policy or a sweep point
//! leaves every other stream untouched, and results do not depend on the
//! order in which cells are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream tags for the first path element.
pub mod stream {
    pub const CATALOG: u64 = 1;
    pub const VIEWS: u64 = 2;
    pub const CLASSES: u64 = 3;
    pub const CELL: u64 = 4;
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix64(base ^ GOLDEN), |h, &p| {
        mix64(h ^ mix64(p.wrapping_add(GOLDEN)))
    })
}

pub fn rng_for(base: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, path))
}
