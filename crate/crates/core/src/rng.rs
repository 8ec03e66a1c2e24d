//! Counter-based pseudo randomness for reproducible simulation streams.
//!
//! Each Monte Carlo trial gets its own stream keyed by (seed, cell, trial),
//! so results are independent of worker count and evaluation order.

/// SplitMix64 step.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    /// Stream keyed by a (seed, cell, trial) triple.
    pub fn keyed(seed: u64, cell: u64, trial: u64) -> SplitMix64 {
        let mut s = mix(seed ^ 0x9E37_79B9_7F4A_7C15);
        s = mix(s ^ cell.wrapping_mul(0xD1B5_4A32_D192_ED03));
        s = mix(s ^ trial.wrapping_mul(0x8CB9_2BA7_2F3D_8DD7));
        SplitMix64 { state: s }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        mix(self.state)
    }

    /// Uniform in [0, 1).
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform in 0..n.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        // rejection sampling on the top bits
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }
}
