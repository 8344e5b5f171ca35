//! Hölder-exponent estimators for `0 < s < 1/2`.
//!
//! `a = ln|I(0) - I(ω_j)| / ln ω_j` and `ŝ = 1/(a + 2)`. P uses the raw
//! periodogram, SP the Parzen lag-window estimate.

use super::{EstimateResult, Method};
use crate::error::{invalid, Error, Result};
use crate::spectral::{periodogram, smoothed_periodogram, LagWindow, LagWindowSpec, Periodogram};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HolderSmoothing {
    None,
    Parzen,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderConfig {
    /// Frequency index `j` of the reported estimate.
    pub freq_index: usize,
    /// When set, also report `ŝ` averaged over `j = 1..=⌊N^e⌋`.
    pub average_exponent: Option<f64>,
}

impl Default for HolderConfig {
    fn default() -> Self {
        HolderConfig {
            freq_index: 1,
            average_exponent: Some(0.2),
        }
    }
}

/// `ŝ` from the ordinate at zero and at `ω_j ∈ (0, 1)`.
pub fn holder_from_ordinates(method: Method, zero: f64, at_j: f64, omega_j: f64) -> Result<EstimateResult> {
    if !(omega_j > 0.0 && omega_j < 1.0) {
        return invalid("omega_j", format!("must lie in (0, 1), got {omega_j}"));
    }
    let diff = (zero - at_j).abs();
    if !(diff > 0.0) {
        return Ok(EstimateResult::invalid(method, "I(0) equals I(ω_j)", 1));
    }
    let a = diff.ln() / omega_j.ln();
    let mut r = EstimateResult::new(method, 1.0 / (a + 2.0), 1).with("a", a);
    r.slope = Some(a);
    Ok(r)
}

fn at_index(method: Method, spectrum: &Periodogram, j: usize) -> Result<EstimateResult> {
    holder_from_ordinates(method, spectrum.ordinate(0), spectrum.ordinate(j), spectrum.frequency(j))
}

/// P (`smoothing = None`) or SP (`Parzen`, truncation `⌊N^e⌋`) on the
/// centered series.
pub fn holder_estimate(
    x: &[f64],
    smoothing: HolderSmoothing,
    config: &HolderConfig,
    truncation_exponent: f64,
) -> Result<EstimateResult> {
    let n = x.len();
    if n < 16 {
        return Err(Error::SeriesTooShort { needed: 16, got: n });
    }
    let j = config.freq_index;
    // ω_j < 1 keeps ln ω_j negative
    if j == 0 || j as f64 >= n as f64 / (2.0 * std::f64::consts::PI) {
        return invalid("freq_index", format!("need 1 <= j < N/2π, got {j} for N = {n}"));
    }
    let xc = crate::centered(x);
    let (method, spectrum) = match smoothing {
        HolderSmoothing::None => (Method::P, periodogram(&xc)?),
        HolderSmoothing::Parzen => {
            let spec = LagWindowSpec::for_length(LagWindow::Parzen, n, truncation_exponent)?;
            (Method::Sp, smoothed_periodogram(&xc, &spec)?)
        }
    };
    let mut result = at_index(method, &spectrum, j)?.with("freq_index", j as f64);
    if let Some(e) = config.average_exponent {
        let j_max = crate::floor_pow(n, e).max(1);
        let valid: Vec<f64> = (1..=j_max)
            .filter(|&k| spectrum.frequency(k) < 1.0)
            .filter_map(|k| at_index(method, &spectrum, k).ok())
            .filter(|r| r.is_valid())
            .map(|r| r.s_hat)
            .collect();
        if !valid.is_empty() {
            result = result
                .with("s_hat_avg", crate::mean(&valid))
                .with("avg_j_max", j_max as f64);
        }
    }
    Ok(result)
}
