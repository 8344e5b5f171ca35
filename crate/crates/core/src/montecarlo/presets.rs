//! The simulation tables as ready-made experiments.

use super::ExperimentSpec;
use crate::dynamics::DEFAULT_BURN_IN;
use crate::error::{Error, Result};
use crate::estimators::Method;
use crate::wavelet::WaveletBasis;

pub const PRESETS: [&str; 5] = ["table51", "table52", "table53", "table54", "table71"];

const LONG_MEMORY: [Method; 6] = [
    Method::Perio,
    Method::Parzen,
    Method::Cos1,
    Method::Cos2,
    Method::Varmp,
    Method::Vpmp,
];

const WAVELETS: [Method; 2] = [
    Method::Wmp(WaveletBasis::Haar),
    Method::Wmp(WaveletBasis::MexicanHat),
];

/// The named table with its replication count multiplied by `scale`
/// (rounded up, at least one).
pub fn preset(name: &str, scale: f64) -> Result<ExperimentSpec> {
    if !(scale > 0.0 && scale <= 1.0) {
        return crate::error::invalid("scale", format!("must lie in (0, 1], got {scale}"));
    }
    let (s_values, n_values, methods, reps): (Vec<f64>, Vec<usize>, Vec<Method>, usize) =
        match name {
            "table51" => (vec![0.60, 0.65], vec![10_000, 20_000, 30_000], LONG_MEMORY.to_vec(), 200),
            "table52" => (vec![0.80], vec![10_000, 20_000, 30_000], LONG_MEMORY.to_vec(), 200),
            "table53" => (vec![0.65, 0.80], vec![8_192, 16_384, 32_768], WAVELETS.to_vec(), 50),
            "table54" => (vec![1.0, 1.1, 1.2, 1.3], vec![32_768], WAVELETS.to_vec(), 50),
            "table71" => (vec![0.35, 0.40, 0.45], vec![10_000, 30_000], vec![Method::P, Method::Sp], 200),
            other => {
                return Err(Error::Unknown {
                    kind: "preset",
                    value: other.to_string(),
                })
            }
        };
    // Above s = 1 the map has no invariant probability to relax towards;
    // those runs start from the uniform draw itself.
    let burn_in = if name == "table54" { 0 } else { DEFAULT_BURN_IN };
    Ok(ExperimentSpec {
        name: name.to_string(),
        burn_in,
        s_values,
        n_values,
        methods,
        replications: ((reps as f64 * scale).ceil() as usize).max(1),
        ..ExperimentSpec::default()
    })
}
