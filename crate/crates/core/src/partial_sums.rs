//! Variance of partial sums `S_N = X_1 + ... + X_N`: the exact finite-N
//! formula from an autocovariance sequence, and Monte Carlo fits of the
//! growth law `Var(S_N) ≈ N^{2-u}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::SeriesGenerator;
use crate::error::{invalid, Error, Result};
use crate::estimators::ols_slope;
use crate::rng::StreamKey;
use crate::spectral::AcvEstimate;

/// `Var(S_N) = N γ(0) + 2 Σ_{j=1}^{N-1} (N - j) γ(j)`; `gamma` must hold
/// lags `0..N`.
pub fn var_partial_sum(gamma: &[f64], n: usize) -> Result<f64> {
    if n == 0 {
        return invalid("n", "partial sum of zero terms");
    }
    if gamma.len() < n {
        return Err(Error::InsufficientLags {
            needed: n,
            got: gamma.len(),
        });
    }
    let cross: f64 = (1..n).map(|j| (n - j) as f64 * gamma[j]).sum();
    Ok(n as f64 * gamma[0] + 2.0 * cross)
}

/// [`var_partial_sum`] with sample autocovariances.
pub fn var_partial_sum_acv(acv: &AcvEstimate, n: usize) -> Result<f64> {
    var_partial_sum(acv.values(), n)
}

/// `(1/N) Σ_{j=1}^{N} (1 - j/N) (j/N)^{-u}`, a Riemann sum for
/// [`riemann_limit`].
pub fn riemann_covariance_sum(u: f64, n: usize) -> f64 {
    let nf = n as f64;
    (1..=n)
        .map(|j| {
            let x = j as f64 / nf;
            (1.0 - x) * x.powf(-u)
        })
        .sum::<f64>()
        / nf
}

/// `∫_0^1 (1 - x) x^{-u} dx = 1 / ((1 - u)(2 - u))` for `u < 1`.
pub fn riemann_limit(u: f64) -> f64 {
    1.0 / ((1.0 - u) * (2.0 - u))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    /// Slope of `ln Var(S_N)` against `ln N`.
    pub exponent: f64,
    pub intercept: f64,
    pub grid: Vec<usize>,
    pub variances: Vec<f64>,
}

pub const MIN_GRID: usize = 4;
pub const MIN_REPS: usize = 50;

/// Across-replication variance of `S_N` for each `N` in `grid`, then a
/// log-log fit. Replication `r` at size `N` draws from stream `r` of key
/// `(seed, N)`, so the result does not depend on the thread count.
pub fn scaling_exponent(
    generator: &dyn SeriesGenerator,
    grid: &[usize],
    reps: usize,
    seed: u64,
) -> Result<ScalingFit> {
    if grid.len() < MIN_GRID {
        return invalid("grid", format!("need at least {MIN_GRID} sizes, got {}", grid.len()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] < 2 {
        return invalid("grid", "sizes must be strictly increasing and at least 2");
    }
    if reps < MIN_REPS {
        return invalid("reps", format!("need at least {MIN_REPS} replications, got {reps}"));
    }
    let variances: Vec<f64> = grid
        .par_iter()
        .map(|&n| {
            let sums: Vec<f64> = (0..reps as u64)
                .into_par_iter()
                .map(|r| {
                    let mut rng = StreamKey::new(seed, [n as u64, 0, 0], r).rng();
                    generator.sample_path(n, &mut rng).iter().sum()
                })
                .collect();
            crate::sample_variance(&sums)
        })
        .collect();
    if variances.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::ConstantSeries("partial sums have zero variance"));
    }
    let xs: Vec<f64> = grid.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = variances.iter().map(|v| v.ln()).collect();
    let fit = ols_slope(&xs, &ys)?;
    Ok(ScalingFit {
        exponent: fit.slope,
        intercept: fit.intercept,
        grid: grid.to_vec(),
        variances,
    })
}
