//! SplitMix64 stream with Box–Muller normals.
//!
//! The stream is fully specified here so that a seed and a trial index pin
//! down every generated matrix, across platforms and implementations:
//!
//! * `next_u64`: `state += 0x9E3779B97F4A7C15`, then the SplitMix64 finalizer
//!   [`mix64`] applied to the new state;
//! * `uniform`: `(next_u64 >> 11) · 2⁻⁵³`, in `[0, 1)`;
//! * `gaussian`: `u₁ = 1 − uniform`, `u₂ = uniform`,
//!   `√(−2 ln u₁) · cos(2π u₂)` (the sine branch is discarded);
//! * complex Gaussian: real and imaginary parts are independent
//!   `gaussian / √2`, real part drawn first;
//! * trial seeds: `mix64(seed + (index + 1) · 0x9E3779B97F4A7C15)`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use crate::linalg::C64;

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent seed for trial `index` of a campaign started from `seed`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    mix64(seed.wrapping_add((index as u64).wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// FNV-1a, used to derive per-property seeds from names.
pub fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `lo..=hi` by multiply-shift.
    pub fn int_in(&mut self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi, "empty integer range {lo}..={hi}");
        let span = (hi - lo) as u128 + 1;
        lo + ((self.next_u64() as u128 * span) >> 64) as usize
    }

    pub fn gaussian(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex_gaussian(&mut self) -> C64 {
        let re = self.gaussian() * FRAC_1_SQRT_2;
        let im = self.gaussian() * FRAC_1_SQRT_2;
        C64::new(re, im)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}
