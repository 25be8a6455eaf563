#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed for randomized tests: `EQALG_SEED` when set.
pub fn seed() -> u64 {
    std::env::var("EQALG_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_240_517)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}
