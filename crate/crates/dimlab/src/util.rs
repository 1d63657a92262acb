//! Small shared numerics: a deterministic stream RNG for Monte-Carlo checks.

/// SplitMix64 stream generator. Deterministic across platforms; not for
/// cryptographic use.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0,1).
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform in [lo, hi).
    #[inline]
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform point in the unit ball of dimension `dim`, by rejection.
    pub fn in_unit_ball(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let p: Vec<f64> = (0..dim).map(|_| self.range(-1.0, 1.0)).collect();
            if p.iter().map(|c| c * c).sum::<f64>() <= 1.0 {
                return p;
            }
        }
    }
}
