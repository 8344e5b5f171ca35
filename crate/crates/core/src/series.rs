//! Shared domain types: model parameters, the interval observable and the
//! simulated binary series.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    MannevillePomeau,
    LinearByPart,
    MarkovChain,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::MannevillePomeau => "mp",
            ModelKind::LinearByPart => "lbp",
            ModelKind::MarkovChain => "markov",
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "mp" => Ok(ModelKind::MannevillePomeau),
            "lbp" => Ok(ModelKind::LinearByPart),
            "markov" => Ok(ModelKind::MarkovChain),
            other => Err(crate::Error::Unknown {
                kind: "model",
                value: other.to_string(),
            }),
        }
    }
}

/// Parameters of one of the three generating models.
///
/// The map is parameterised by `s`; the linear-by-part map and the Markov
/// chain by `gamma`. The two are linked by `gamma = 1 + 1/s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapParams {
    MannevillePomeau { s: f64 },
    LinearByPart { gamma: f64 },
    MarkovChain { gamma: f64 },
}

impl MapParams {
    pub fn mp(s: f64) -> Result<Self> {
        check_s(s)?;
        Ok(MapParams::MannevillePomeau { s })
    }

    pub fn lbp(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(MapParams::LinearByPart { gamma })
    }

    pub fn markov(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(MapParams::MarkovChain { gamma })
    }

    /// Builds parameters of `kind` matching intermittency `s`, converting to
    /// `gamma = 1 + 1/s` where needed.
    pub fn from_s(kind: ModelKind, s: f64) -> Result<Self> {
        check_s(s)?;
        match kind {
            ModelKind::MannevillePomeau => Self::mp(s),
            ModelKind::LinearByPart => Self::lbp(s_to_gamma(s)),
            ModelKind::MarkovChain => Self::markov(s_to_gamma(s)),
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            MapParams::MannevillePomeau { .. } => ModelKind::MannevillePomeau,
            MapParams::LinearByPart { .. } => ModelKind::LinearByPart,
            MapParams::MarkovChain { .. } => ModelKind::MarkovChain,
        }
    }

    /// The intermittency parameter, converted from `gamma` when necessary.
    pub fn s(&self) -> f64 {
        match *self {
            MapParams::MannevillePomeau { s } => s,
            MapParams::LinearByPart { gamma } | MapParams::MarkovChain { gamma } => {
                gamma_to_s(gamma)
            }
        }
    }

    pub fn gamma(&self) -> f64 {
        match *self {
            MapParams::MannevillePomeau { s } => s_to_gamma(s),
            MapParams::LinearByPart { gamma } | MapParams::MarkovChain { gamma } => gamma,
        }
    }
}

pub fn s_to_gamma(s: f64) -> f64 {
    1.0 + 1.0 / s
}

pub fn gamma_to_s(gamma: f64) -> f64 {
    1.0 / (gamma - 1.0)
}

pub(crate) fn check_s(s: f64) -> Result<()> {
    if !(s.is_finite() && s > 0.0) {
        return invalid("s", format!("must be finite and positive, got {s}"));
    }
    Ok(())
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma > 2.0) {
        return invalid("gamma", format!("must be finite and > 2, got {gamma}"));
    }
    Ok(())
}

/// Indicator of the open interval `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableSpec {
    pub lo: f64,
    pub hi: f64,
    /// Subtract the empirical mean before analysis.
    pub centered: bool,
}

impl ObservableSpec {
    pub fn new(lo: f64, hi: f64, centered: bool) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo < hi && hi <= 1.0) {
            return invalid(
                "interval",
                format!("need 0 <= lo < hi <= 1, got ({lo}, {hi})"),
            );
        }
        Ok(ObservableSpec { lo, hi, centered })
    }

    #[inline]
    pub fn indicator(&self, x: f64) -> f64 {
        if self.lo < x && x < self.hi {
            1.0
        } else {
            0.0
        }
    }
}

impl Default for ObservableSpec {
    fn default() -> Self {
        ObservableSpec {
            lo: 0.1,
            hi: 0.9,
            centered: true,
        }
    }
}

/// A finite 0/1 realization together with how it was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinarySeries {
    values: Vec<f64>,
    pub params: MapParams,
    /// `None` for the Markov chain, whose observable is fixed (state != 0).
    pub observable: Option<ObservableSpec>,
    pub seed: u64,
    pub burn_in: usize,
    /// Set when the orbit froze numerically (see [`crate::dynamics::STALL_LIMIT`]).
    pub stalled: bool,
}

impl BinarySeries {
    pub(crate) fn from_parts(
        values: Vec<f64>,
        params: MapParams,
        observable: Option<ObservableSpec>,
        seed: u64,
        burn_in: usize,
        stalled: bool,
    ) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.iter().all(|&v| v == 0.0 || v == 1.0));
        BinarySeries {
            values,
            params,
            observable,
            seed,
            burn_in,
            stalled,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        crate::mean(&self.values)
    }

    /// Values as they should enter an analysis: mean-removed when the
    /// observable asks for centering (always for the Markov chain).
    pub fn analysis_values(&self) -> Vec<f64> {
        match self.observable {
            Some(obs) if !obs.centered => self.values.clone(),
            _ => crate::centered(&self.values),
        }
    }
}
