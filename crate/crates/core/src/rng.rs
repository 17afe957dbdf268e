//! Seedable, splittable random streams.
//!
//! Every stream is a ChaCha8 keystream keyed by the root seed, with the
//! stream id derived from a path of indices (for instance
//! `[n_index, trial_index]`). Two distinct paths give independent streams,
//! and a path always reproduces the same stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used by every sampler in the crate.
pub type Rng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Root generator for `seed` (stream 0).
pub fn root(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for `seed` addressed by `path`.
pub fn stream(seed: u64, path: &[u64]) -> Rng {
    let mut id = 0x243f_6a88_85a3_08d3u64;
    for &p in path {
        id = splitmix64(id ^ splitmix64(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// A fresh seed drawn from `rng`, used to fan a caller's stream out into
/// per-task streams.
pub fn fork_seed(rng: &mut Rng) -> u64 {
    use rand::RngCore;
    rng.next_u64()
}
