//! Wavelet estimator: with `x_j` the centered `ln 2^{-2j}`,
//! `ŝ = Σ x_j² / (2 (Σ x_j² - Σ x_j ln R̂(j)))` over `j = 4..m-1`.

use super::{EstimateResult, Method};
use crate::error::Result;
use crate::wavelet::{sample_r, WaveletBasis, WaveletLadder};

pub fn wmp_from_ladder(ladder: &WaveletLadder) -> EstimateResult {
    let method = Method::Wmp(ladder.basis);
    let (points, floored) = ladder.log_points();
    let k = points.len();
    let xbar = points.iter().map(|p| p.0).sum::<f64>() / k as f64;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in &points {
        let xc = x - xbar;
        sxx += xc * xc;
        sxy += xc * y;
    }
    let denom = 2.0 * (sxx - sxy);
    let d = sxy / sxx;
    let result = if denom <= 0.0 {
        EstimateResult::invalid(method, format!("denominator {denom} <= 0"), k)
    } else {
        EstimateResult::new(method, sxx / denom, k)
    };
    let mut result = result
        .with("d_hat", d)
        .with("levels", k as f64)
        .with("floored_levels", floored as f64)
        .with("truncated", ladder.truncated as f64);
    result.slope = Some(d);
    result
}

/// Wmp on `x`, truncated to its leading `2^m` samples.
pub fn wmp_estimate(x: &[f64], basis: WaveletBasis, center: bool) -> Result<EstimateResult> {
    Ok(wmp_from_ladder(&sample_r(x, basis, center)?))
}
