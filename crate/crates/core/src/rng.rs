//! Seeded randomness shared by every randomized construction.
//!
//! All generators draw from a SplitMix64 stream, so a seed pins down grids,
//! linear forms and random instances bit for bit.

use rand::Rng;
use rand::SeedableRng;
pub use rand_xoshiro::SplitMix64;

/// Coefficient range used for random linear forms and grid hyperplanes.
pub const COEFF_BOUND: i64 = 9;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Uniform integer in `[-bound, bound]`.
pub fn small_int(rng: &mut SplitMix64, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

/// A vector of `len` uniform integers in `[-bound, bound]`.
pub fn small_vec(rng: &mut SplitMix64, len: usize, bound: i64) -> Vec<i64> {
    (0..len).map(|_| small_int(rng, bound)).collect()
}
