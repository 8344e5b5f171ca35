//! Log-periodogram regressions: `ln I(ω_j)` (or a lag-window estimate)
//! against `ln j` for `j = 1..=g(N)`. The slope `ĉ` estimates `1/s - 2`,
//! hence `ŝ = 1/(ĉ + 2)`.

use super::{ols_slope, EstimateResult, Method, RegressionBand};
use crate::error::{Error, Result};
use crate::spectral::{periodogram, smoothed_periodogram, LagWindow, LagWindowSpec, Periodogram, LOG_FLOOR};

const MIN_LENGTH: usize = 16;

fn check_length(n: usize) -> Result<()> {
    if n < MIN_LENGTH {
        return Err(Error::SeriesTooShort {
            needed: MIN_LENGTH,
            got: n,
        });
    }
    Ok(())
}

fn band_cutoff(band: RegressionBand, n: usize) -> Result<usize> {
    let g = band.cutoff(n);
    if g < 2 || g >= n {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("band ⌊N^{}⌋ = {g} leaves no regression for N = {n}", band.alpha()),
        });
    }
    Ok(g)
}

fn regress(method: Method, logs: &[f64], clamps: usize) -> Result<EstimateResult> {
    let xs: Vec<f64> = (1..=logs.len()).map(|j| (j as f64).ln()).collect();
    let fit = ols_slope(&xs, logs)?;
    let c = fit.slope;
    let result = if c <= -2.0 {
        EstimateResult::invalid(method, format!("slope {c} <= -2 gives no positive estimate"), logs.len())
    } else {
        EstimateResult::new(method, 1.0 / (c + 2.0), logs.len())
    };
    Ok(result
        .with_fit(&fit)
        .with("clamped_ordinates", clamps as f64)
        .with("band_cutoff", logs.len() as f64))
}

fn fit_spectrum(method: Method, spectrum: &Periodogram, cutoff: usize) -> Result<EstimateResult> {
    let (logs, clamps) = spectrum.log_ordinates(cutoff);
    if clamps > 0 {
        log::debug!("{method}: {clamps} spectral ordinates floored at {LOG_FLOOR:e}");
    }
    regress(method, &logs, clamps)
}

/// Regression on explicit ordinates `I(ω_j)`, `j = 1..=ordinates.len()`.
pub fn estimate_from_ordinates(method: Method, ordinates: &[f64]) -> Result<EstimateResult> {
    let mut clamps = 0;
    let logs: Vec<f64> = ordinates
        .iter()
        .map(|&v| {
            if v < LOG_FLOOR {
                clamps += 1;
                LOG_FLOOR.ln()
            } else {
                v.ln()
            }
        })
        .collect();
    regress(method, &logs, clamps)
}

/// Raw periodogram regression over `j = 1..=⌊N^α⌋` (α = 0.5 by default).
pub fn perio_estimate(x: &[f64], band: RegressionBand) -> Result<EstimateResult> {
    check_length(x.len())?;
    let g = band_cutoff(band, x.len())?;
    let spectrum = periodogram(&crate::centered(x))?;
    fit_spectrum(Method::Perio, &spectrum, g)
}

fn smoothed_fit(
    method: Method,
    x: &[f64],
    band: RegressionBand,
    window: LagWindow,
    truncation_exponent: f64,
) -> Result<EstimateResult> {
    check_length(x.len())?;
    let g = band_cutoff(band, x.len())?;
    let spec = LagWindowSpec::for_length(window, x.len(), truncation_exponent)?;
    let spectrum = smoothed_periodogram(x, &spec)?;
    Ok(fit_spectrum(method, &spectrum, g)?.with("truncation", spec.truncation as f64))
}

/// Parzen lag-window regression, `m = ⌊N^e⌋` (e = 0.9 by default).
pub fn parzen_estimate(
    x: &[f64],
    band: RegressionBand,
    truncation_exponent: f64,
) -> Result<EstimateResult> {
    smoothed_fit(Method::Parzen, x, band, LagWindow::Parzen, truncation_exponent)
}

/// Cosine-bell lag-window regression, `m = ⌊N^e⌋`. Labelled `cos1` for
/// α = 0.5 and `cos2` otherwise; the band is recorded in the diagnostics.
pub fn cos_estimate(
    x: &[f64],
    band: RegressionBand,
    truncation_exponent: f64,
) -> Result<EstimateResult> {
    let method = if band.alpha() == 0.5 {
        Method::Cos1
    } else {
        Method::Cos2
    };
    Ok(
        smoothed_fit(method, x, band, LagWindow::CosineBell, truncation_exponent)?
            .with("band_alpha", band.alpha()),
    )
}
