//! SplitMix64, the reproducible generator behind every random draw in this
//! crate.
//!
//! The stream is part of the external contract: given a 64-bit seed `s`, the
//! state starts at `s`, and each call adds `0x9E3779B97F4A7C15` (wrapping) and
//! returns the mix
//!
//! ```text
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z ^ (z >> 31)
//! ```
//!
//! A uniform double in `[0, 1)` is `(next_u64() >> 11) * 2⁻⁵³`, and a uniform
//! draw on `[-s, s]` is `s * (2u - 1)`.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(Self::GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[-scale, scale)`.
    pub fn symmetric(&mut self, scale: f64) -> f64 {
        scale * (2.0 * self.next_f64() - 1.0)
    }
}
