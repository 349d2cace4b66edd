//! Per-trial random streams.
//!
//! Each trial gets its own ChaCha stream (a counter-based generator)
//! keyed by a SplitMix64 hash of `(master seed, trial index)`, so any
//! failing trial is replayable in isolation from the single `seed`
//! number recorded in the report.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; the standard constants.
fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derived seed of a trial stream.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    splitmix64(master ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// The trial's RNG, plus the derived seed recorded in reports.
pub fn trial_rng(master: u64, trial: u64) -> (u64, ChaCha8Rng) {
    let seed = trial_seed(master, trial);
    (seed, ChaCha8Rng::seed_from_u64(seed))
}

/// Replays the stream for a recorded trial seed.
pub fn replay_rng(trial_seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed)
}
