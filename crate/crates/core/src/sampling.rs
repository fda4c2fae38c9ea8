//! Seeded generators for rationals, vectors, and sequences.
//!
//! ChaCha8 is used so that a seed means the same stream on every platform.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratcore::{rat, Rat, RatMat, RatVec};
use crate::seqlat::EpSeq;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn index(&mut self, upper: usize) -> usize {
        self.rng.random_range(0..upper)
    }

    /// Uniform in `low..=high`.
    pub fn between(&mut self, low: usize, high: usize) -> usize {
        self.rng.random_range(low..=high)
    }

    pub fn chance(&mut self, numer: u32, denom: u32) -> bool {
        self.rng.random_range(0..denom) < numer
    }

    /// Uniform over `num/den` with `|num| <= max_num`, `1 <= den <= max_den`.
    pub fn rational(&mut self, max_num: i64, max_den: i64) -> Rat {
        let n = self.rng.random_range(-max_num..=max_num);
        let d = self.rng.random_range(1..=max_den);
        rat(n, d)
    }

    pub fn nonnegative(&mut self, max_num: i64, max_den: i64) -> Rat {
        let n = self.rng.random_range(0..=max_num);
        let d = self.rng.random_range(1..=max_den);
        rat(n, d)
    }

    pub fn positive(&mut self, max_num: i64, max_den: i64) -> Rat {
        let n = self.rng.random_range(1..=max_num.max(1));
        let d = self.rng.random_range(1..=max_den);
        rat(n, d)
    }

    /// Picks one of the given values.
    pub fn pick(&mut self, values: &[Rat]) -> Rat {
        values[self.index(values.len())].clone()
    }

    pub fn vector(&mut self, dim: usize) -> RatVec {
        RatVec::new((0..dim).map(|_| self.rational(4, 3)).collect())
    }

    pub fn nonnegative_vector(&mut self, dim: usize) -> RatVec {
        RatVec::new((0..dim).map(|_| self.nonnegative(4, 3)).collect())
    }

    pub fn positive_vector(&mut self, dim: usize) -> RatVec {
        RatVec::new((0..dim).map(|_| self.positive(4, 3)).collect())
    }

    /// A point of `[0, c]`: each coordinate is `c_k` scaled by a random weight in `[0, 1]`.
    pub fn point_below(&mut self, c: &RatVec) -> RatVec {
        let entries = c
            .iter()
            .map(|x| {
                let w = self.nonnegative(3, 3);
                let w = if w > rat(1, 1) { rat(1, 1) } else { w };
                x * w
            })
            .collect();
        RatVec::new(entries)
    }

    /// Random nonnegative matrix whose columns have at most one nonzero entry.
    pub fn interval_preserving_matrix(&mut self, rows: usize, cols: usize) -> RatMat {
        let mut m = RatMat::zeros(rows, cols);
        if rows == 0 {
            return m;
        }
        for c in 0..cols {
            if self.chance(4, 5) {
                let r = self.index(rows);
                m.set(r, c, self.positive(3, 2));
            }
        }
        m
    }

    pub fn nonnegative_matrix(&mut self, rows: usize, cols: usize) -> RatMat {
        let mut m = RatMat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if self.chance(1, 2) {
                    m.set(r, c, self.positive(2, 2));
                }
            }
        }
        m
    }

    /// Finitely supported sequence with support inside `1..=len`.
    pub fn finite_support(&mut self, len: usize, nonnegative: bool) -> EpSeq {
        let prefix = (0..len)
            .map(|_| {
                if nonnegative {
                    self.nonnegative(4, 3)
                } else {
                    self.rational(4, 3)
                }
            })
            .collect();
        EpSeq::new(prefix, vec![Rat::zero()]).expect("nonempty period")
    }

    /// Eventually periodic sequence with short random prefix and period.
    pub fn eventually_periodic(&mut self, max_prefix: usize, max_period: usize, nonnegative: bool) -> EpSeq {
        let plen = self.index(max_prefix + 1);
        let qlen = 1 + self.index(max_period.max(1));
        let draw = |s: &mut Self| {
            if nonnegative {
                s.nonnegative(4, 3)
            } else {
                s.rational(4, 3)
            }
        };
        let prefix = (0..plen).map(|_| draw(self)).collect();
        let period = (0..qlen).map(|_| draw(self)).collect();
        EpSeq::new(prefix, period).expect("nonempty period")
    }

    pub fn nonzero(&mut self, max_num: i64, max_den: i64) -> Rat {
        loop {
            let r = self.rational(max_num, max_den);
            if !r.is_zero() {
                return r;
            }
        }
    }
}
