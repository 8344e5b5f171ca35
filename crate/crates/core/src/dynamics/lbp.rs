use std::sync::Arc;

use rand::distr::Open01;
use rand::Rng;

use super::zeta::ZetaTails;
use super::{SeriesGenerator, StallWatch};
use crate::error::{invalid, Error, Result};
use crate::rng::{rng_from_seed, SimRng};
use crate::series::{check_gamma, BinarySeries, MapParams, ObservableSpec};

/// Linear-by-part approximation of the Manneville-Pomeau map.
///
/// `[0, 1]` is split into cells `M_k`, `k ≥ 0`, of length
/// `|M_k| = (k+1)^{-γ} / ζ(γ)`, stacked from the right:
///
/// ```text
/// 0 <-- ... | M_3 | M_2 |  M_1  |        M_0        | 1
///              b_3   b_2     b_1                    b_0 = 1
/// ```
///
/// with `b_k = Σ_{n>k} n^{-γ} / ζ(γ)`. On `M_0` the map has slope `ζ(γ)`
/// and sends `M_0` onto `(0, 1)`; on `M_k`, `k ≥ 1`, it has slope
/// `((k+1)/k)^γ` and sends `M_k` onto `M_{k-1}`, continuously.
#[derive(Debug, Clone)]
pub struct LbpMap {
    gamma: f64,
    tails: ZetaTails,
}

impl LbpMap {
    /// Builds the partition. This sums a million terms; reuse the map.
    pub fn new(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(LbpMap {
            gamma,
            tails: ZetaTails::new(gamma)?,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn zeta(&self) -> f64 {
        self.tails.zeta()
    }

    /// Right endpoint `b_k` of cell `M_k`.
    pub fn boundary(&self, k: u64) -> f64 {
        if k == 0 {
            1.0
        } else {
            self.tails.tail(k + 1) / self.tails.zeta()
        }
    }

    /// `(left, right)` endpoints of `M_k`.
    pub fn cell_bounds(&self, k: u64) -> (f64, f64) {
        (self.boundary(k + 1), self.boundary(k))
    }

    pub fn cell_length(&self, k: u64) -> f64 {
        ((k + 1) as f64).powf(-self.gamma) / self.tails.zeta()
    }

    /// Index of the cell containing `x ∈ (0, 1]`, using `M_k = (b_{k+1}, b_k]`.
    pub fn cell(&self, x: f64) -> u64 {
        if x > self.boundary(1) {
            return 0;
        }
        // largest k with b_k >= x, i.e. T(k+1) >= x ζ
        self.tails.last_index_at_least(x * self.tails.zeta()) - 1
    }

    pub fn step(&self, x: f64) -> Result<f64> {
        if !(x.is_finite() && (0.0..=1.0).contains(&x)) {
            return invalid("x", format!("must lie in [0, 1], got {x}"));
        }
        Ok(self.step_unchecked(x))
    }

    #[inline]
    pub(crate) fn step_unchecked(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let b1 = self.boundary(1);
        if x > b1 {
            return ((x - b1) * self.tails.zeta()).clamp(0.0, 1.0);
        }
        let k = self.cell(x);
        if k >= u64::MAX / 2 - 1 {
            // Indistinguishable from the fixed point in double precision.
            return x;
        }
        let slope = ((k + 1) as f64 / k as f64).powf(self.gamma);
        let y = self.boundary(k) + (x - self.boundary(k + 1)) * slope;
        y.clamp(0.0, 1.0)
    }
}

/// One iteration of the linear-by-part map. Builds the partition on every
/// call; use [`LbpMap`] when iterating.
pub fn lbp_step(gamma: f64, x: f64) -> Result<f64> {
    LbpMap::new(gamma)?.step(x)
}

#[derive(Debug, Clone)]
pub struct LbpGenerator {
    map: Arc<LbpMap>,
    burn_in: usize,
    observable: ObservableSpec,
}

impl LbpGenerator {
    pub fn new(map: Arc<LbpMap>, burn_in: usize, observable: ObservableSpec) -> Self {
        LbpGenerator {
            map,
            burn_in,
            observable,
        }
    }

    fn run(&self, n: usize, rng: &mut SimRng) -> (Vec<f64>, bool) {
        let mut x: f64 = rng.sample(Open01);
        let mut watch = StallWatch::default();
        for _ in 0..self.burn_in {
            x = self.map.step_unchecked(x);
            watch.observe(x);
        }
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(self.observable.indicator(x));
            x = self.map.step_unchecked(x);
            watch.observe(x);
        }
        (out, watch.stalled)
    }
}

impl SeriesGenerator for LbpGenerator {
    fn sample_path(&self, n: usize, rng: &mut SimRng) -> Vec<f64> {
        self.run(n, rng).0
    }
}

pub fn simulate_lbp(
    gamma: f64,
    n: usize,
    seed: u64,
    burn_in: usize,
    observable: ObservableSpec,
) -> Result<BinarySeries> {
    if n == 0 {
        return Err(Error::SeriesTooShort { needed: 1, got: 0 });
    }
    let gen = LbpGenerator::new(Arc::new(LbpMap::new(gamma)?), burn_in, observable);
    let (values, stalled) = gen.run(n, &mut rng_from_seed(seed));
    Ok(BinarySeries::from_parts(
        values,
        MapParams::LinearByPart { gamma },
        Some(observable),
        seed,
        burn_in,
        stalled,
    ))
}
