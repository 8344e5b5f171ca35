//! Replication engine for the simulation tables.
//!
//! Each `(s, N, method)` cell runs `R` independent replications; replication
//! `r` simulates its own series from the stream keyed by
//! `(seed, s, N, method, model)` with index `r`, and is then estimated.
//! Summaries are computed after all values are collected in replication
//! order, so the output does not depend on the thread count.

mod presets;
mod spec;

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{LbpGenerator, LbpMap, MarkovChain, MpGenerator, SeriesGenerator};
use crate::error::{Error, Result};
use crate::estimators::{estimate, Method};
use crate::rng::StreamKey;
use crate::series::{s_to_gamma, ModelKind, ObservableSpec};

pub use presets::{preset, PRESETS};
pub use spec::{ExperimentSpec, SpecRecord};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub mean: f64,
    pub sd: f64,
    pub mse: f64,
}

/// Mean, sample standard deviation (divisor `R - 1`, zero for one value) and
/// `mse = (mean - s)² + sd²`.
pub fn summarize(values: &[f64], true_s: f64) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    let mean = crate::mean(values);
    let sd = if values.len() > 1 {
        crate::sample_variance(values).sqrt()
    } else {
        0.0
    };
    let bias = mean - true_s;
    Ok(Summary {
        mean,
        sd,
        mse: bias * bias + sd * sd,
    })
}

/// One row of a results table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    pub s: f64,
    pub n: usize,
    pub method: Method,
    pub mean: f64,
    pub sd: f64,
    pub mse: f64,
    /// Replications whose estimate was flagged or failed.
    pub invalid: usize,
    pub replications: usize,
    /// Set when more than half of the replications were invalid; the
    /// statistics are then NaN.
    pub failure: Option<String>,
}

impl McSummary {
    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

fn model_tag(model: ModelKind) -> u64 {
    match model {
        ModelKind::MannevillePomeau => 0,
        ModelKind::LinearByPart => 1,
        ModelKind::MarkovChain => 2,
    }
}

/// Random stream for replication `r` of a cell.
pub fn cell_stream(seed: u64, model: ModelKind, s: f64, n: usize, method: Method, r: usize) -> StreamKey {
    StreamKey::new(
        seed,
        [s.to_bits(), n as u64, method.tag() | (model_tag(model) << 32)],
        r as u64,
    )
}

/// Generator for `model` at intermittency `s`; the linear-by-part map and the
/// Markov chain use `gamma = 1 + 1/s`.
pub fn generator_for(
    model: ModelKind,
    s: f64,
    burn_in: usize,
    observable: ObservableSpec,
) -> Result<Arc<dyn SeriesGenerator>> {
    Ok(match model {
        ModelKind::MannevillePomeau => Arc::new(MpGenerator::new(s, burn_in, observable)?),
        ModelKind::LinearByPart => Arc::new(LbpGenerator::new(
            Arc::new(LbpMap::new(s_to_gamma(s))?),
            burn_in,
            observable,
        )),
        ModelKind::MarkovChain => Arc::new(MarkovChain::new(s_to_gamma(s))?),
    })
}

struct Cell {
    s: f64,
    n: usize,
    method: Method,
    generator: Arc<dyn SeriesGenerator>,
}

/// Runs every cell of `spec` on a pool of `threads` workers (default: all
/// cores). Rows come out ordered by `s`, then `N`, then method as listed.
pub fn run_experiment(spec: &ExperimentSpec, threads: Option<usize>) -> Result<Vec<McSummary>> {
    spec.validate()?;
    let mut cells = Vec::with_capacity(spec.cells());
    for &s in &spec.s_values {
        let generator = generator_for(spec.model, s, spec.burn_in, spec.observable)?;
        for &n in &spec.n_values {
            for &method in &spec.methods {
                cells.push(Cell {
                    s,
                    n,
                    method,
                    generator: Arc::clone(&generator),
                });
            }
        }
    }
    let reps = spec.replications;
    let tasks: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..reps).map(move |r| (c, r)))
        .collect();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::InvalidParameter {
        name: "threads",
        reason: e.to_string(),
    })?;

    let estimates: Vec<Option<f64>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(c, r)| {
                let cell = &cells[c];
                let mut rng = cell_stream(spec.seed, spec.model, cell.s, cell.n, cell.method, r).rng();
                let x = cell.generator.sample_path(cell.n, &mut rng);
                match estimate(&x, cell.method, &spec.config) {
                    Ok(res) if res.is_valid() => Some(res.s_hat),
                    Ok(res) => {
                        log::debug!("{} s={} N={} r={r}: {:?}", cell.method, cell.s, cell.n, res.invalid);
                        None
                    }
                    Err(e) => {
                        log::debug!("{} s={} N={} r={r}: {e}", cell.method, cell.s, cell.n);
                        None
                    }
                }
            })
            .collect()
    });

    cells
        .iter()
        .zip(estimates.chunks(reps))
        .map(|(cell, chunk)| {
            let valid: Vec<f64> = chunk.iter().flatten().copied().collect();
            let invalid = reps - valid.len();
            let mut row = McSummary {
                s: cell.s,
                n: cell.n,
                method: cell.method,
                mean: f64::NAN,
                sd: f64::NAN,
                mse: f64::NAN,
                invalid,
                replications: reps,
                failure: None,
            };
            if 2 * invalid > reps {
                let msg = format!("{invalid} of {reps} replications gave no valid estimate");
                log::warn!("{} s={} N={}: {msg}", cell.method, cell.s, cell.n);
                row.failure = Some(msg);
            } else {
                let sum = summarize(&valid, cell.s)?;
                row.mean = sum.mean;
                row.sd = sum.sd;
                row.mse = sum.mse;
            }
            Ok(row)
        })
        .collect()
}
