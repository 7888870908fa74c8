//! Counter-based stream derivation.
//!
//! A master seed fixes a ChaCha8 key; each replicate gets its own stream id,
//! so replicate `r` of sample size `n` always sees the same random numbers
//! no matter how replicates are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for stream `stream` under `master_seed`.
pub fn stream_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Generator for replicate `rep` at total size `n`: stream `n << 32 | rep`.
pub fn replicate_rng(master_seed: u64, n: usize, rep: usize) -> ChaCha8Rng {
    assert!(n < 1 << 32 && rep < 1 << 32, "n and rep must fit in 32 bits");
    stream_rng(master_seed, ((n as u64) << 32) | rep as u64)
}
