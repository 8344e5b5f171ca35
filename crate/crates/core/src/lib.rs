//! Simulation of Manneville-Pomeau processes and estimation of the
//! intermittency parameter `s` from binary time series.
//!
//! The crate is organised by stage:
//!
//! - [`dynamics`]: the map `x + x^{1+s} (mod 1)`, its linear-by-part
//!   approximation and the equivalent infinite-state Markov chain.
//! - [`spectral`]: sample autocovariance, periodogram and lag-window smoothing.
//! - [`wavelet`]: Haar / Mexican-hat coefficients and the per-level variance ladder.
//! - [`estimators`]: the regression, variance and Hölder estimators of `s`.
//! - [`partial_sums`]: finite-`N` variance of partial sums and its scaling law.
//! - [`montecarlo`]: the replication engine and table presets.

pub mod dynamics;
pub mod error;
pub mod estimators;
pub mod montecarlo;
pub mod partial_sums;
pub mod rng;
pub mod series;
pub mod spectral;
pub mod wavelet;

pub use error::{Error, Result};
pub use series::{BinarySeries, MapParams, ModelKind, ObservableSpec};

/// `⌊n^alpha⌋`, robust to `powf` landing just below an exact integer.
pub(crate) fn floor_pow(n: usize, alpha: f64) -> usize {
    let v = (n as f64).powf(alpha);
    (v * (1.0 + 1e-12)).floor() as usize
}

pub(crate) fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Sample variance with the `n - 1` divisor.
pub(crate) fn sample_variance(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (x.len() - 1) as f64
}

pub(crate) fn centered(x: &[f64]) -> Vec<f64> {
    let m = mean(x);
    x.iter().map(|v| v - m).collect()
}
