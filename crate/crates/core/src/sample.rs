//! Seeded random parameters and seeds for property sweeps.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::appell::AppellSeed;
use crate::charlier::CharlierParams;
use crate::error::Result;
use crate::index::MultiIndex;
use crate::poly::Step;
use crate::rational::{ratio, Rational};

/// Deterministic generator of small rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `p/q` with `|p| <= 9`, `1 <= q <= 6`.
    pub fn rational(&mut self) -> Rational {
        ratio(self.rng.gen_range(-9..=9), self.rng.gen_range(1..=6))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// `p/q` with `1 <= p <= 9`.
    pub fn positive_rational(&mut self) -> Rational {
        ratio(self.rng.gen_range(1..=9), self.rng.gen_range(1..=6))
    }

    pub fn params(&mut self, arity: usize) -> CharlierParams {
        CharlierParams::new((0..arity).map(|_| self.rational()).collect())
            .expect("arity is positive")
    }

    /// Pairwise distinct positive parameters.
    pub fn distinct_positive_params(&mut self, arity: usize) -> CharlierParams {
        let mut values: Vec<Rational> = Vec::with_capacity(arity);
        while values.len() < arity {
            let a = self.positive_rational();
            if !values.contains(&a) {
                values.push(a);
            }
        }
        CharlierParams::new(values).expect("arity is positive")
    }

    /// Random seed on `|k| <= order` with a nonzero constant term.
    pub fn seed(&mut self, step: &Step, arity: usize, order: usize) -> Result<AppellSeed> {
        let coeffs = MultiIndex::simplex(arity, order)
            .into_iter()
            .map(|k| {
                let c = if k.is_zero() {
                    self.nonzero_rational()
                } else {
                    self.rational()
                };
                (k, c)
            })
            .collect();
        AppellSeed::new(step.clone(), arity, order, coeffs)
    }

    pub fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
