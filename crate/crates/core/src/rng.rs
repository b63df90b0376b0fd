//! Seeded randomness.
//!
//! Every stochastic routine in the crate draws from ChaCha8, a counter-based
//! stream cipher generator. A `(seed, stream)` pair selects an independent
//! stream, so parallel work can split one seed into per-block generators
//! without coordination and still merge deterministically.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type ProbeRng = ChaCha8Rng;

/// Generator for `seed`, stream 0.
pub fn seeded(seed: u64) -> ProbeRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for stream `stream` of `seed`.
pub fn split(seed: u64, stream: u64) -> ProbeRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
