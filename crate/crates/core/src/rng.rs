//! Counter-based randomness.
//!
//! Every random decision in a simulation is a pure function of a stream key and
//! the coordinates of the decision (step, node, neighbor). A run therefore never
//! depends on the order in which coins are consumed, which gives two properties
//! the rest of the crate relies on:
//!
//! * results are independent of scheduling and thread count;
//! * two simulations sharing a stream key are coupled: the coin for arc `u -> v`
//!   at step `t` is the same in both, so removing a node or adding a seed changes
//!   the outcome monotonically (common random numbers).
//!
//! Stream keys are derived hierarchically with [`derive`], e.g. the key of run
//! `r` of an estimate seeded with `s` is `derive(s, r)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child stream key from a parent key and a counter.
#[inline]
pub fn derive(key: u64, counter: u64) -> u64 {
    mix64(mix64(key.wrapping_add(GOLDEN)) ^ counter.wrapping_mul(GOLDEN).rotate_left(17))
}

/// Hashes a stream key with three coordinates into 64 random bits.
#[inline]
pub fn hash3(key: u64, a: u64, b: u64, c: u64) -> u64 {
    let mut h = mix64(key ^ a.wrapping_mul(0xD6E8_FEB8_6659_FD93));
    h = mix64(h ^ b.wrapping_mul(0xA076_1D64_78BD_642F));
    mix64(h ^ c.wrapping_mul(0xE703_7ED1_A0B4_28DB))
}

/// Uniform draw in `[0, 1)` addressed by `(key, a, b, c)`.
#[inline]
pub fn uniform(key: u64, a: u64, b: u64, c: u64) -> f64 {
    (hash3(key, a, b, c) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Bernoulli coin with success probability `p` addressed by `(key, a, b, c)`.
#[inline]
pub fn coin(p: f64, key: u64, a: u64, b: u64, c: u64) -> bool {
    if p >= 1.0 {
        true
    } else if p <= 0.0 {
        false
    } else {
        uniform(key, a, b, c) < p
    }
}

/// Uniform integer in `[0, n)` addressed by `(key, a, b, c)`.
#[inline]
pub fn below(n: usize, key: u64, a: u64, b: u64, c: u64) -> usize {
    ((hash3(key, a, b, c) as u128 * n as u128) >> 64) as usize
}

/// A sequential generator for procedures that are inherently sequential
/// (graph generators, sampling without replacement).
pub fn sequential(key: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(key)
}
