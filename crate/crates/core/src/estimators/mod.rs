//! Estimators of the intermittency parameter `s`.
//!
//! Long-dependence regime (`0.5 < s < 1`): the log-periodogram regressions
//! [`perio_estimate`], [`parzen_estimate`], [`cos_estimate`], the
//! partial-sum variance estimators [`varmp_estimate`] and [`vpmp_estimate`],
//! and the wavelet estimator [`wmp_estimate`]. Short-memory regime
//! (`0 < s < 0.5`): the Hölder-exponent estimators of [`holder_estimate`].
//!
//! Estimators never panic on pathological data. Input that violates a
//! precondition is an `Err`; a computation that runs but cannot produce a
//! positive finite `ŝ` yields an [`EstimateResult`] flagged invalid.

mod holder;
mod ols;
mod spectral_regression;
mod variance;
mod wmp;

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::wavelet::WaveletBasis;

pub use holder::{holder_estimate, holder_from_ordinates, HolderConfig, HolderSmoothing};
pub use ols::{ols_slope, LineFit};
pub use spectral_regression::{
    cos_estimate, estimate_from_ordinates, parzen_estimate, perio_estimate,
};
pub use variance::{
    varmp_estimate, varmp_from_variance, vpmp_estimate, vpmp_from_variances, BlockGrid,
};
pub use wmp::{wmp_estimate, wmp_from_ladder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Perio,
    Parzen,
    Cos1,
    Cos2,
    Varmp,
    Vpmp,
    Wmp(WaveletBasis),
    P,
    Sp,
}

impl Method {
    pub const ALL: [Method; 10] = [
        Method::Perio,
        Method::Parzen,
        Method::Cos1,
        Method::Cos2,
        Method::Varmp,
        Method::Vpmp,
        Method::Wmp(WaveletBasis::Haar),
        Method::Wmp(WaveletBasis::MexicanHat),
        Method::P,
        Method::Sp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Perio => "perio",
            Method::Parzen => "parzen",
            Method::Cos1 => "cos1",
            Method::Cos2 => "cos2",
            Method::Varmp => "varmp",
            Method::Vpmp => "vpmp",
            Method::Wmp(WaveletBasis::Haar) => "wmp-haar",
            Method::Wmp(WaveletBasis::MexicanHat) => "wmp-mexhat",
            Method::P => "p",
            Method::Sp => "sp",
        }
    }

    /// Stable small integer, used when deriving random streams.
    pub fn tag(self) -> u64 {
        Method::ALL.iter().position(|&m| m == self).unwrap() as u64
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "method",
                value: s.to_string(),
            })
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Low-frequency cutoff `g(N) = ⌊N^alpha⌋` of a spectral regression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionBand {
    alpha: f64,
}

impl RegressionBand {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return invalid("alpha", format!("band exponent must lie in (0, 1), got {alpha}"));
        }
        Ok(RegressionBand { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cutoff(&self, n: usize) -> usize {
        crate::floor_pow(n, self.alpha)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateResult {
    pub method: Method,
    pub s_hat: f64,
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub points_used: usize,
    pub diagnostics: BTreeMap<String, f64>,
    /// Why no usable `ŝ` came out, if so.
    pub invalid: Option<String>,
}

impl EstimateResult {
    pub(crate) fn new(method: Method, s_hat: f64, points_used: usize) -> Self {
        let invalid = if s_hat.is_finite() && s_hat > 0.0 {
            None
        } else {
            Some(format!("estimate {s_hat} is not a positive finite value"))
        };
        EstimateResult {
            method,
            s_hat,
            slope: None,
            intercept: None,
            points_used,
            diagnostics: BTreeMap::new(),
            invalid,
        }
    }

    pub(crate) fn invalid(method: Method, reason: impl Into<String>, points_used: usize) -> Self {
        EstimateResult {
            method,
            s_hat: f64::NAN,
            slope: None,
            intercept: None,
            points_used,
            diagnostics: BTreeMap::new(),
            invalid: Some(reason.into()),
        }
    }

    pub(crate) fn with_fit(mut self, fit: &LineFit) -> Self {
        self.slope = Some(fit.slope);
        self.intercept = Some(fit.intercept);
        self.diagnostics.insert("r_squared".into(), fit.r_squared);
        self
    }

    pub(crate) fn with(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }

    pub fn is_valid(&self) -> bool {
        self.invalid.is_none()
    }
}

/// Tuning of every estimator; defaults follow the Monte Carlo protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    /// Remove the sample mean before the wavelet transform. Spectral
    /// estimators always work on the centered series; the variance
    /// estimators are shift invariant.
    pub center: bool,
    pub perio_band: RegressionBand,
    pub parzen_band: RegressionBand,
    pub cos1_band: RegressionBand,
    pub cos2_band: RegressionBand,
    /// Parzen (and SP) lag-window truncation `m = ⌊N^e⌋`.
    pub truncation_exponent: f64,
    /// Cosine-bell truncation exponent. `None` uses `1 - α` of the band, so
    /// the window bandwidth spans the `⌊N^α⌋` regression frequencies.
    pub cos_truncation_exponent: Option<f64>,
    /// Varmp block length `ℓ = ⌊N^θ⌋`.
    pub varmp_theta: f64,
    pub vpmp_grid: BlockGrid,
    pub holder: HolderConfig,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            center: true,
            perio_band: RegressionBand { alpha: 0.5 },
            parzen_band: RegressionBand { alpha: 0.5 },
            cos1_band: RegressionBand { alpha: 0.5 },
            cos2_band: RegressionBand { alpha: 0.7 },
            truncation_exponent: 0.9,
            cos_truncation_exponent: None,
            varmp_theta: 0.7,
            vpmp_grid: BlockGrid::default(),
            holder: HolderConfig::default(),
        }
    }
}

impl EstimatorConfig {
    fn cos_exponent(&self, band: RegressionBand) -> f64 {
        self.cos_truncation_exponent.unwrap_or(1.0 - band.alpha())
    }
}

/// Runs `method` on `x` under `config`.
pub fn estimate(x: &[f64], method: Method, config: &EstimatorConfig) -> Result<EstimateResult> {
    match method {
        Method::Perio => perio_estimate(x, config.perio_band),
        Method::Parzen => parzen_estimate(x, config.parzen_band, config.truncation_exponent),
        Method::Cos1 => cos_estimate(x, config.cos1_band, config.cos_exponent(config.cos1_band))
            .map(|r| relabel(r, Method::Cos1)),
        Method::Cos2 => cos_estimate(x, config.cos2_band, config.cos_exponent(config.cos2_band))
            .map(|r| relabel(r, Method::Cos2)),
        Method::Varmp => varmp_estimate(x, config.varmp_theta),
        Method::Vpmp => vpmp_estimate(x, &config.vpmp_grid),
        Method::Wmp(basis) => wmp_estimate(x, basis, config.center),
        Method::P => holder_estimate(
            x,
            HolderSmoothing::None,
            &config.holder,
            config.truncation_exponent,
        ),
        Method::Sp => holder_estimate(
            x,
            HolderSmoothing::Parzen,
            &config.holder,
            config.truncation_exponent,
        ),
    }
}

fn relabel(mut r: EstimateResult, method: Method) -> EstimateResult {
    r.method = method;
    r
}
