//! Tiny deterministic generator used everywhere a seed appears.
//!
//! SplitMix64 is used instead of an external RNG crate so that sampled
//! period matrices, solver starts and relation-test draws are bit-identical
//! across platforms and dependency upgrades. Reports are required to be a
//! pure function of their seeds, so the stream must never change.

/// SplitMix64 stream (Steele, Lea, Flood 2014; public-domain constants).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent substream for purpose `tag`; keeps draw order stable when
    /// one user seed feeds several consumers.
    pub fn derive(seed: u64, tag: u64) -> Self {
        let mut base = Self::new(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        base.next_u64();
        base
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [-half_width, half_width).
    pub fn next_symmetric(&mut self, half_width: f64) -> f64 {
        half_width * (2.0 * self.next_f64() - 1.0)
    }
}
