//! Estimators built on the variance of partial sums.
//!
//! Varmp uses `Var(S_ℓ) ≈ ℓ^{3 - 1/s}` over disjoint blocks of one length;
//! Vpmp (the variance plot) regresses the log variance of block means on the
//! log block size, slope `2d - 1`, and maps `d = 1 - 1/(2s)` back to `s`.

use super::{ols_slope, EstimateResult, Method};
use crate::error::{invalid, Error, Result};

const MIN_BLOCKS: usize = 8;

fn block_sums(x: &[f64], len: usize) -> Vec<f64> {
    x.chunks_exact(len).map(|c| c.iter().sum()).collect()
}

/// `ŝ = 1 / (3 - ln V / ln ℓ)` for block-sum variance `V` at block length `ℓ`.
pub fn varmp_from_variance(variance: f64, block_len: usize) -> EstimateResult {
    if !(variance > 0.0) {
        return EstimateResult::invalid(Method::Varmp, "block-sum variance is zero", 1);
    }
    let ratio = variance.ln() / (block_len as f64).ln();
    EstimateResult::new(Method::Varmp, 1.0 / (3.0 - ratio), 1).with("log_ratio", ratio)
}

/// Varmp over disjoint blocks of length `ℓ = ⌊N^θ⌋`.
pub fn varmp_estimate(x: &[f64], theta: f64) -> Result<EstimateResult> {
    if !(theta > 0.0 && theta < 1.0) {
        return invalid("theta", format!("block exponent must lie in (0, 1), got {theta}"));
    }
    let len = crate::floor_pow(x.len(), theta);
    if len < 2 || x.len() / len < MIN_BLOCKS {
        return Err(Error::SeriesTooShort {
            needed: MIN_BLOCKS * len.max(2),
            got: x.len(),
        });
    }
    let sums = block_sums(x, len);
    let v = crate::sample_variance(&sums);
    Ok(varmp_from_variance(v, len)
        .with("block_len", len as f64)
        .with("blocks", sums.len() as f64)
        .with("block_variance", v))
}

/// Geometric grid of block sizes from `⌊N^lo⌋` to `⌊N^hi⌋`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockGrid {
    pub lo_exponent: f64,
    pub hi_exponent: f64,
    pub sizes: usize,
}

impl Default for BlockGrid {
    fn default() -> Self {
        BlockGrid {
            lo_exponent: 0.3,
            hi_exponent: 0.7,
            sizes: 10,
        }
    }
}

impl BlockGrid {
    /// Distinct block sizes for a series of length `n`.
    pub fn sizes_for(&self, n: usize) -> Vec<usize> {
        let lo = crate::floor_pow(n, self.lo_exponent).max(1) as f64;
        let hi = crate::floor_pow(n, self.hi_exponent).max(1) as f64;
        let steps = self.sizes.max(2) - 1;
        let mut out: Vec<usize> = (0..=steps)
            .map(|i| (lo * (hi / lo).powf(i as f64 / steps as f64)).round() as usize)
            .collect();
        out.dedup();
        out
    }
}

/// Variance-plot estimate from block sizes `k` and block-mean variances.
pub fn vpmp_from_variances(sizes: &[usize], variances: &[f64]) -> Result<EstimateResult> {
    if variances.iter().any(|&v| !(v > 0.0)) {
        return Ok(EstimateResult::invalid(
            Method::Vpmp,
            "a block-mean variance is zero",
            sizes.len(),
        ));
    }
    let xs: Vec<f64> = sizes.iter().map(|&k| (k as f64).ln()).collect();
    let ys: Vec<f64> = variances.iter().map(|v| v.ln()).collect();
    let fit = ols_slope(&xs, &ys)?;
    let d = (fit.slope + 1.0) / 2.0;
    let result = if d >= 1.0 {
        EstimateResult::invalid(Method::Vpmp, format!("memory parameter d = {d} >= 1"), sizes.len())
    } else {
        EstimateResult::new(Method::Vpmp, 1.0 / (2.0 * (1.0 - d)), sizes.len())
    };
    Ok(result.with_fit(&fit).with("d_hat", d))
}

/// Variance plot over `grid`; every size must leave at least 8 blocks and
/// the grid must hold at least 4 distinct sizes.
pub fn vpmp_estimate(x: &[f64], grid: &BlockGrid) -> Result<EstimateResult> {
    let n = x.len();
    let sizes = grid.sizes_for(n);
    if sizes.len() < 4 || sizes.iter().any(|&k| n / k < MIN_BLOCKS) {
        return Err(Error::SeriesTooShort {
            needed: MIN_BLOCKS * sizes.last().copied().unwrap_or(1).max(4),
            got: n,
        });
    }
    let variances: Vec<f64> = sizes
        .iter()
        .map(|&k| {
            let means: Vec<f64> = block_sums(x, k).iter().map(|s| s / k as f64).collect();
            crate::sample_variance(&means)
        })
        .collect();
    Ok(vpmp_from_variances(&sizes, &variances)?
        .with("block_min", sizes[0] as f64)
        .with("block_max", *sizes.last().unwrap() as f64))
}
