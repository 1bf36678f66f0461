//! Seeded randomness. Every protocol run owns one ChaCha8 stream seeded
//! from a 64-bit value; multi-trial drivers hand each trial its own seed
//! drawn from the SplitMix64 sequence of the master seed, so trials stay
//! independent and reproducible whether they run serially or in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for every sampled measurement.
pub type ProtocolRng = ChaCha8Rng;

/// A fresh stream for one protocol run.
pub fn protocol_rng(seed: u64) -> ProtocolRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The SplitMix64 sequence of a master seed; item `i` seeds trial `i`.
#[derive(Debug, Clone)]
pub struct SeedSequence {
    state: u64,
}

impl SeedSequence {
    pub fn new(master: u64) -> Self {
        Self { state: master }
    }
}

impl Iterator for SeedSequence {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Some(z ^ (z >> 31))
    }
}
