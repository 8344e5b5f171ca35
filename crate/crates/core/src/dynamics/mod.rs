//! Generators of binary time series: the Manneville-Pomeau map, its
//! linear-by-part approximation and the renewal Markov chain.

mod lbp;
mod markov;
mod mp;
mod zeta;

pub use lbp::{lbp_step, simulate_lbp, LbpGenerator, LbpMap};
pub use markov::{markov_stationary, observe_nonzero, simulate_markov, MarkovChain, ShiftedZeta};
pub use mp::{mp_branch_point, mp_step, simulate_mp, MpGenerator};
pub use zeta::{zeta, ZetaTails, DIRECT_TERMS};

use crate::rng::SimRng;

/// Default number of discarded iterations before recording.
pub const DEFAULT_BURN_IN: usize = 10_000;

/// Consecutive identical iterates after which an orbit is reported as frozen.
pub const STALL_LIMIT: usize = 10_000;

/// Anything that can draw a 0/1 path of a given length from a seeded stream.
pub trait SeriesGenerator: Send + Sync {
    fn sample_path(&self, n: usize, rng: &mut SimRng) -> Vec<f64>;
}

/// Independent Bernoulli(p) draws; the short-memory reference model.
#[derive(Debug, Clone, Copy)]
pub struct IidBernoulli {
    pub p: f64,
}

impl SeriesGenerator for IidBernoulli {
    fn sample_path(&self, n: usize, rng: &mut SimRng) -> Vec<f64> {
        use rand::Rng;
        (0..n)
            .map(|_| if rng.random::<f64>() < self.p { 1.0 } else { 0.0 })
            .collect()
    }
}

/// Counts runs of identical iterates and warns once an orbit freezes.
#[derive(Debug, Default)]
pub(crate) struct StallWatch {
    last: f64,
    run: usize,
    pub stalled: bool,
}

impl StallWatch {
    #[inline]
    pub fn observe(&mut self, x: f64) {
        if x == self.last {
            self.run += 1;
            if self.run >= STALL_LIMIT && !self.stalled {
                self.stalled = true;
                log::warn!(
                    "orbit frozen at x = {x:e} for {STALL_LIMIT} iterations; \
                     x^(1+s) is below one ulp of x"
                );
            }
        } else {
            self.last = x;
            self.run = 0;
        }
    }
}
