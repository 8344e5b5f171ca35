use rand::distr::Open01;
use rand::Rng;

use super::{SeriesGenerator, StallWatch};
use crate::error::{invalid, Error, Result};
use crate::rng::{rng_from_seed, SimRng};
use crate::series::{check_s, BinarySeries, MapParams, ObservableSpec};

#[inline]
fn step(one_plus_s: f64, x: f64) -> f64 {
    let y = x + x.powf(one_plus_s);
    if y <= 1.0 {
        y
    } else {
        y - 1.0
    }
}

/// One iteration of `T_s(x) = x + x^{1+s} (mod 1)`.
pub fn mp_step(s: f64, x: f64) -> Result<f64> {
    check_s(s)?;
    if !(x.is_finite() && (0.0..=1.0).contains(&x)) {
        return invalid("x", format!("must lie in [0, 1], got {x}"));
    }
    Ok(step(1.0 + s, x))
}

/// The point `p` splitting the two full branches: `p + p^{1+s} = 1`.
pub fn mp_branch_point(s: f64) -> Result<f64> {
    check_s(s)?;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    // p -> p + p^{1+s} is strictly increasing; bisect until the bracket
    // stops shrinking.
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mid + mid.powf(1.0 + s) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Manneville-Pomeau process `X_t = I_A(T_s^t(x_0))` with `x_0 ~ U(0, 1)`.
#[derive(Debug, Clone, Copy)]
pub struct MpGenerator {
    s: f64,
    burn_in: usize,
    observable: ObservableSpec,
}

impl MpGenerator {
    pub fn new(s: f64, burn_in: usize, observable: ObservableSpec) -> Result<Self> {
        check_s(s)?;
        Ok(MpGenerator {
            s,
            burn_in,
            observable,
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    fn run(&self, n: usize, rng: &mut SimRng) -> (Vec<f64>, bool) {
        let one_plus_s = 1.0 + self.s;
        let mut x: f64 = rng.sample(Open01);
        let mut watch = StallWatch::default();
        for _ in 0..self.burn_in {
            x = step(one_plus_s, x);
            watch.observe(x);
        }
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(self.observable.indicator(x));
            x = step(one_plus_s, x);
            watch.observe(x);
        }
        (out, watch.stalled)
    }
}

impl SeriesGenerator for MpGenerator {
    fn sample_path(&self, n: usize, rng: &mut SimRng) -> Vec<f64> {
        self.run(n, rng).0
    }
}

/// Simulates `n` observations of the Manneville-Pomeau process.
///
/// `x_0` is uniform on `(0, 1)`, drawn from the stream of `seed`; the first
/// `burn_in` iterates are discarded. Values of `s ≥ 1` are accepted.
pub fn simulate_mp(
    s: f64,
    n: usize,
    seed: u64,
    burn_in: usize,
    observable: ObservableSpec,
) -> Result<BinarySeries> {
    if n == 0 {
        return Err(Error::SeriesTooShort { needed: 1, got: 0 });
    }
    let gen = MpGenerator::new(s, burn_in, observable)?;
    let (values, stalled) = gen.run(n, &mut rng_from_seed(seed));
    Ok(BinarySeries::from_parts(
        values,
        MapParams::MannevillePomeau { s },
        Some(observable),
        seed,
        burn_in,
        stalled,
    ))
}
