//! Seed derivation for reproducible randomness.
//!
//! Every random draw in this crate comes from a ChaCha8 stream derived
//! here, so any scenario or sweep cell can be reproduced in isolation
//! from its printed seed. The derivation is pure integer mixing and is
//! identical across platforms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer used as a one-shot mixing function.
pub fn mix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A named substream of `seed`. Streams with distinct indices are
/// independent; the mapping is `ChaCha8(mix64(seed ^ mix64(index)))`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix64(seed ^ mix64(index)))
}

/// Scenario seed for one sweep cell, derived from the sweep's base seed,
/// the swept parameter value, and the trial number:
/// `mix64(mix64(base ^ value.to_bits()) ^ trial)`.
///
/// The derived seed appears in the sweep CSV's `seed` column, so a single
/// cell can be regenerated with `generate --seed <seed>`.
pub fn cell_seed(base_seed: u64, value: f64, trial: u64) -> u64 {
    mix64(mix64(base_seed ^ value.to_bits()) ^ trial)
}
