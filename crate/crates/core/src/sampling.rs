//! Seeded sampling of bundles, directions and scalars.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::order::{Bundle, Direction};

/// Upper end of the per-component range for sampled bundles.
pub const BUNDLE_RANGE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return lo;
        }
        self.rng.random_range(lo..hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn vector(&mut self, len: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..len).map(|_| self.uniform(lo, hi)).collect()
    }

    /// Uniform in `[0, 3]^(m+n)`.
    pub fn bundle(&mut self, m: usize, n: usize) -> Bundle {
        let y = self.vector(m, 0.0, BUNDLE_RANGE);
        let x = self.vector(n, 0.0, BUNDLE_RANGE);
        Bundle::new(y, x).expect("sampled components are nonnegative")
    }

    /// Uniform in `[0, 1]^(m+n)`, redrawn while zero.
    pub fn direction(&mut self, m: usize, n: usize) -> Direction {
        loop {
            let gy = self.vector(m, 0.0, 1.0);
            let gx = self.vector(n, 0.0, 1.0);
            if let Ok(d) = Direction::new(gy, gx) {
                return d;
            }
        }
    }

    /// Like [`Sampler::direction`], but zeroes `g_y` or `g_x` entirely with
    /// probability 1/4 each, so that one-sided directions are exercised.
    pub fn mixed_direction(&mut self, m: usize, n: usize) -> Direction {
        let d = self.direction(m, n);
        match self.index(4) {
            0 => Direction::new(vec![0.0; m], d.gx().to_vec()).unwrap_or(d),
            1 => Direction::new(d.gy().to_vec(), vec![0.0; n]).unwrap_or(d),
            _ => d,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(9);
        let mut b = Sampler::new(9);
        assert_eq!(a.bundle(2, 3), b.bundle(2, 3));
        assert_eq!(a.direction(2, 3), b.direction(2, 3));
    }

    #[test]
    fn sampled_ranges() {
        let mut s = Sampler::new(1);
        for _ in 0..100 {
            let b = s.bundle(2, 2);
            assert!(b.y().iter().chain(b.x()).all(|c| (0.0..=BUNDLE_RANGE).contains(c)));
            let d = s.mixed_direction(2, 2);
            assert!(d.gy().iter().chain(d.gx()).any(|c| *c > 0.0));
        }
    }
}
