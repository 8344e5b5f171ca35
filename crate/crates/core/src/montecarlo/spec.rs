use std::str::FromStr;

use serde::Serialize;

use crate::dynamics::DEFAULT_BURN_IN;
use crate::error::{invalid, Error, Result};
use crate::estimators::{EstimatorConfig, Method, RegressionBand};
use crate::series::{check_s, ModelKind, ObservableSpec};

/// One experiment: every combination of `s`, `N` and method, `R` times.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub s_values: Vec<f64>,
    pub n_values: Vec<usize>,
    pub methods: Vec<Method>,
    pub replications: usize,
    pub seed: u64,
    pub model: ModelKind,
    pub observable: ObservableSpec,
    pub burn_in: usize,
    pub config: EstimatorConfig,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            name: "experiment".into(),
            s_values: Vec::new(),
            n_values: Vec::new(),
            methods: Vec::new(),
            replications: 200,
            seed: 2003,
            model: ModelKind::MannevillePomeau,
            observable: ObservableSpec::default(),
            burn_in: DEFAULT_BURN_IN,
            config: EstimatorConfig::default(),
        }
    }
}

/// Flat, serialisable view used in run manifests.
#[derive(Debug, Clone, Serialize)]
pub struct SpecRecord {
    pub name: String,
    pub s: Vec<f64>,
    pub n: Vec<usize>,
    pub methods: Vec<Method>,
    pub reps: usize,
    pub seed: u64,
    pub model: &'static str,
    pub observable: (f64, f64),
    pub centered: bool,
    pub burn_in: usize,
}

fn list<T: FromStr>(key: &'static str, value: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.parse::<T>().map_err(|e| Error::InvalidParameter {
                name: key,
                reason: format!("cannot parse {v:?}: {e}"),
            })
        })
        .collect()
}

fn one<T: FromStr>(key: &'static str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.trim().parse::<T>().map_err(|e| Error::InvalidParameter {
        name: key,
        reason: format!("cannot parse {value:?}: {e}"),
    })
}

fn parse_bool(key: &'static str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => invalid(key, format!("expected true or false, got {other:?}")),
    }
}

impl ExperimentSpec {
    /// Applies one `key = value` setting. Keys may carry a leading `--`, so
    /// flag spellings work too.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches("--").replace('-', "_");
        match key.as_str() {
            "name" | "table" => self.name = value.trim().to_string(),
            "s" => self.s_values = list("s", value)?,
            "n" => self.n_values = list("n", value)?,
            "methods" | "method" => self.methods = list("methods", value)?,
            "reps" | "replications" | "r" => self.replications = one("reps", value)?,
            "seed" => self.seed = one("seed", value)?,
            "model" => self.model = value.parse()?,
            "burn_in" => self.burn_in = one("burn_in", value)?,
            "observable" => {
                let v: Vec<f64> = list("observable", value)?;
                if v.len() != 2 {
                    return invalid("observable", "expected lo,hi");
                }
                self.observable = ObservableSpec::new(v[0], v[1], self.observable.centered)?;
            }
            "centered" | "center" => {
                let c = parse_bool("centered", value)?;
                self.observable.centered = c;
                self.config.center = c;
            }
            "perio_alpha" => self.config.perio_band = RegressionBand::new(one("perio_alpha", value)?)?,
            "parzen_alpha" => self.config.parzen_band = RegressionBand::new(one("parzen_alpha", value)?)?,
            "cos1_alpha" => self.config.cos1_band = RegressionBand::new(one("cos1_alpha", value)?)?,
            "cos2_alpha" => self.config.cos2_band = RegressionBand::new(one("cos2_alpha", value)?)?,
            "truncation_exponent" => self.config.truncation_exponent = one("truncation_exponent", value)?,
            "cos_truncation_exponent" => {
                self.config.cos_truncation_exponent = Some(one("cos_truncation_exponent", value)?)
            }
            "varmp_theta" => self.config.varmp_theta = one("varmp_theta", value)?,
            "holder_j" => self.config.holder.freq_index = one("holder_j", value)?,
            _ => {
                return Err(Error::Unknown {
                    kind: "spec key",
                    value: key,
                })
            }
        }
        Ok(())
    }

    /// Parses a line-oriented `key = value` file; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = ExperimentSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::SpecParse {
                line: i + 1,
                reason: format!("expected key = value, got {line:?}"),
            })?;
            spec.set(key, value).map_err(|e| Error::SpecParse {
                line: i + 1,
                reason: e.to_string(),
            })?;
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.s_values.is_empty() || self.n_values.is_empty() || self.methods.is_empty() {
            return invalid("spec", "s, n and methods must all be non-empty");
        }
        if self.replications == 0 {
            return invalid("reps", "need at least one replication");
        }
        for &s in &self.s_values {
            check_s(s)?;
            if self.model != ModelKind::MannevillePomeau && s >= 1.0 {
                return invalid("s", format!("model {} needs s < 1, got {s}", self.model.name()));
            }
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n < 16) {
            return invalid("n", format!("series length {n} is too short"));
        }
        Ok(())
    }

    /// Number of (s, N, method) cells.
    pub fn cells(&self) -> usize {
        self.s_values.len() * self.n_values.len() * self.methods.len()
    }

    pub fn record(&self) -> SpecRecord {
        SpecRecord {
            name: self.name.clone(),
            s: self.s_values.clone(),
            n: self.n_values.clone(),
            methods: self.methods.clone(),
            reps: self.replications,
            seed: self.seed,
            model: self.model.name(),
            observable: (self.observable.lo, self.observable.hi),
            centered: self.observable.centered,
            burn_in: self.burn_in,
        }
    }
}
