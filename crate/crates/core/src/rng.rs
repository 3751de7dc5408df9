//! Portable seeded randomness.
//!
//! Every random choice in the toolkit (instance generation, parameter
//! initialization, shot sampling) goes through [`SeededRng`], which is
//! xoshiro256** (Blackman & Vigna) with its 256-bit state expanded from a
//! 64-bit seed by SplitMix64 (increment `0x9E3779B97F4A7C15`, output mix
//! constants `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`). Uniform reals
//! take the top 53 bits of the next output: `(x >> 11) * 2^-53`.
//!
//! Both algorithms are fully specified by those constants, so instance files
//! and benchmark records are reproducible across implementations.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Combines two words into a derived seed: `mix64(mix64(a + γ) ^ (b + 2γ))`
/// with wrapping arithmetic and γ the SplitMix64 increment.
///
/// Used for per-instance, per-run and per-evaluation seeds.
pub fn hash64(a: u64, b: u64) -> u64 {
    mix64(mix64(a.wrapping_add(GOLDEN_GAMMA)) ^ b.wrapping_add(GOLDEN_GAMMA.wrapping_mul(2)))
}

/// xoshiro256** seeded through SplitMix64.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: Xoshiro256StarStar,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[low, high)`.
    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.next_f64()
    }
}
