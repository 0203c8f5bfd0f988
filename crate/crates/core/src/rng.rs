//! Deterministic seeded random numbers for experiment corpora.
//!
//! SplitMix64 is used instead of an external RNG so that seeded sweeps
//! produce byte-identical reports across platforms and dependency versions.

use crate::dyadic::Rat;
use num_bigint::BigInt;

/// SplitMix64 stream. Same seed, same sequence, everywhere.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`. `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        // Rejection sampling keeps the distribution exact and deterministic.
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform signed integer in `[-bound, bound]`.
    pub fn int_in(&mut self, bound: i64) -> i64 {
        debug_assert!(bound >= 0);
        self.below(2 * bound as u64 + 1) as i64 - bound
    }

    /// Uniform f64 in `[0,1)` with 53 bits.
    pub fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Random rational `k / den` with `k` uniform in `[-num_bound, num_bound]`.
    pub fn rational(&mut self, num_bound: i64, den: i64) -> Rat {
        Rat::new(BigInt::from(self.int_in(num_bound)), BigInt::from(den))
    }

    /// Random non-negative rational `k / den` with `k` in `[0, num_bound]`.
    pub fn rational_nonneg(&mut self, num_bound: u64, den: i64) -> Rat {
        Rat::new(BigInt::from(self.below(num_bound + 1)), BigInt::from(den))
    }
}
