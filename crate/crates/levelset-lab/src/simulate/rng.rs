//! Deterministic seeding and primitive draws.
//!
//! Every path derives its own ChaCha8 stream from (master seed, path index)
//! through a splitmix chain, so batches are bit-reproducible regardless of
//! worker count or scheduling; all transforms below consume a fixed number
//! of words per draw except where rejection is inherent.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Provenance of one sampled path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeedInfo {
    pub master: u64,
    pub path_index: u64,
}

#[inline]
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based per-path RNG: key = splitmix chain over (master, index).
pub fn path_rng(seed: SeedInfo) -> ChaCha8Rng {
    let mut state = seed
        .master
        .wrapping_mul(0xA076_1D64_78BD_642F)
        .wrapping_add(seed.path_index.wrapping_mul(0xE703_7ED1_A0B4_28DB));
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform draw in the open interval (0, 1), 53-bit resolution.
#[inline]
pub fn unit_open01<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
}

/// Standard normal via Box–Muller (fixed two-word consumption).
#[inline]
pub fn std_normal<R: RngCore>(rng: &mut R) -> f64 {
    let u1 = unit_open01(rng);
    let u2 = unit_open01(rng);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Standard exponential.
#[inline]
pub fn std_exp<R: RngCore>(rng: &mut R) -> f64 {
    -unit_open01(rng).ln()
}

/// Poisson count by Knuth's product method; means here are O(1) per step.
pub fn poisson<R: RngCore>(rng: &mut R, mean: f64) -> u64 {
    debug_assert!(mean >= 0.0 && mean < 1e4, "per-step jump mean out of range");
    let limit = (-mean).exp();
    let mut k = 0u64;
    let mut p = 1.0f64;
    loop {
        p *= unit_open01(rng);
        if p <= limit {
            return k;
        }
        k += 1;
    }
}
