//! Seeded, counter-based random streams.
//!
//! Every randomized operation takes either a seed (stream 0) or an explicit
//! generator. Trials of a sweep draw from `stream_rng(seed, trial)`, so
//! results do not depend on scheduling or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type StreamRng = ChaCha8Rng;

/// Generator for substream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Generator for stream 0 of `seed`.
pub fn seeded_rng(seed: u64) -> StreamRng {
    stream_rng(seed, 0)
}
