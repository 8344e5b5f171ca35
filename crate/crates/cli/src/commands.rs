use std::io::Write;
use std::path::Path;

use anyhow::anyhow;
use mplm_core::dynamics::{simulate_lbp, simulate_markov, simulate_mp};
use mplm_core::estimators::{estimate as run_estimator, EstimatorConfig, Method};
use mplm_core::montecarlo::{generator_for, preset, run_experiment, ExperimentSpec};
use mplm_core::partial_sums::scaling_exponent;
use mplm_core::series::{gamma_to_s, s_to_gamma};
use mplm_core::spectral::{periodogram, smoothed_periodogram, LagWindow, LagWindowSpec};
use mplm_core::{ModelKind, ObservableSpec};
use serde_json::json;

use crate::cli::*;
use crate::output::{csv_writer, fmt_f64, manifest_path, sink, RunManifest};
use crate::Failure;

type Outcome = Result<(), Failure>;

fn invalid(msg: impl std::fmt::Display) -> Failure {
    Failure::Invalid(anyhow!("{msg}"))
}

fn model_kind(m: Model) -> ModelKind {
    match m {
        Model::Mp => ModelKind::MannevillePomeau,
        Model::Lbp => ModelKind::LinearByPart,
        Model::Markov => ModelKind::MarkovChain,
    }
}

/// Reads a series from CSV: the last column of each row, after an optional
/// header. Accepts `simulate` output as is.
pub fn read_series(path: &Path) -> Result<Vec<f64>, Failure> {
    let file = std::fs::File::open(path)
        .map_err(|e| invalid(format!("cannot open {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(file);
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let Some(field) = record.iter().next_back() else {
            continue;
        };
        match field.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            _ if i == 0 => continue,
            _ => {
                return Err(invalid(format!(
                    "{}: line {}: not a finite number: {field:?}",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    if values.is_empty() {
        return Err(invalid(format!("{}: no values", path.display())));
    }
    Ok(values)
}

pub fn simulate(a: SimulateArgs) -> Outcome {
    let kind = model_kind(a.model);
    let (s, gamma) = match (a.s, a.gamma) {
        (Some(s), None) => (s, s_to_gamma(s)),
        (None, Some(g)) => (gamma_to_s(g), g),
        _ => return Err(invalid("give exactly one of --s and --gamma")),
    };
    if a.n == 0 {
        return Err(invalid("--n must be positive"));
    }
    let observable = ObservableSpec::new(a.lo, a.hi, true)?;
    let (mut manifest, started) = RunManifest::start("simulate", Some(a.seed));
    let series = match kind {
        ModelKind::MannevillePomeau => simulate_mp(s, a.n, a.seed, a.burn_in, observable)?,
        ModelKind::LinearByPart => simulate_lbp(gamma, a.n, a.seed, a.burn_in, observable)?,
        ModelKind::MarkovChain => simulate_markov(gamma, a.n, a.seed)?,
    };
    let mut w = csv_writer(sink(a.out.as_deref())?);
    w.write_record(["t", "x"])?;
    for (t, x) in series.values().iter().enumerate() {
        w.write_record([t.to_string(), fmt_f64(*x)])?;
    }
    w.flush()?;
    manifest
        .param("model", kind.name())
        .param("s", s)
        .param("gamma", gamma)
        .param("n", a.n)
        .param("burn_in", series.burn_in)
        .param("observable", [a.lo, a.hi])
        .param("out", &a.out)
        .result("mean", series.mean())
        .result("stalled", series.stalled);
    manifest.finish(started, manifest_path(a.out.as_deref()))?;
    Ok(())
}

pub fn spectrum(a: SpectrumArgs) -> Outcome {
    let x = read_series(&a.input)?;
    let (mut manifest, started) = RunManifest::start("spectrum", None);
    let window = match a.smooth {
        Smooth::None => None,
        Smooth::Parzen => Some(LagWindow::Parzen),
        Smooth::Cosbell => Some(LagWindow::CosineBell),
    };
    let spec = match (window, a.m) {
        (Some(w), Some(m)) => Some(LagWindowSpec::new(w, m)?),
        (Some(w), None) => Some(LagWindowSpec::for_length(w, x.len(), 0.9)?),
        (None, _) => None,
    };
    let p = match &spec {
        None if a.no_center => periodogram(&x)?,
        None => {
            let mean = x.iter().sum::<f64>() / x.len() as f64;
            periodogram(&x.iter().map(|v| v - mean).collect::<Vec<_>>())?
        }
        Some(spec) => smoothed_periodogram(&x, spec)?,
    };
    let mut w = csv_writer(sink(a.out.as_deref())?);
    w.write_record(["omega", "ordinate"])?;
    for h in 1..=p.len() {
        w.write_record([fmt_f64(p.frequency(h)), fmt_f64(p.ordinate(h))])?;
    }
    w.flush()?;
    manifest
        .param("in", &a.input)
        .param("smooth", format!("{:?}", a.smooth).to_lowercase())
        .param("m", spec.map(|s| s.truncation))
        .param("centered", spec.is_some() || !a.no_center)
        .param("n", x.len())
        .param("out", &a.out);
    manifest.finish(started, manifest_path(a.out.as_deref()))?;
    Ok(())
}

pub fn estimate(a: EstimateArgs) -> Outcome {
    let method: Method = a.method.parse()?;
    let x = read_series(&a.input)?;
    let config = EstimatorConfig {
        center: !a.no_center,
        ..EstimatorConfig::default()
    };
    let result = run_estimator(&x, method, &config)?;
    if a.json {
        let diagnostics: serde_json::Map<String, serde_json::Value> = result
            .diagnostics
            .iter()
            .map(|(k, v)| (k.clone(), json_number(*v)))
            .collect();
        let mut out = json!({
            "method": method.name(),
            "s_hat": json_number(result.s_hat),
            "slope": result.slope.map(json_number),
            "points_used": result.points_used,
            "diagnostics": diagnostics,
        });
        if let Some(reason) = &result.invalid {
            out["invalid"] = json!(reason);
        }
        println!("{}", serde_json::to_string_pretty(&out).map_err(anyhow::Error::from)?);
    } else {
        match &result.invalid {
            None => println!("{} {}", method.name(), fmt_f64(result.s_hat)),
            Some(reason) => println!("{} NaN invalid: {reason}", method.name()),
        }
    }
    Ok(())
}

/// JSON has no NaN; non-finite values become null.
fn json_number(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

pub fn montecarlo(a: MontecarloArgs) -> Outcome {
    let mut spec = match (&a.spec, &a.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
            let mut spec = ExperimentSpec::parse(&text)?;
            if a.scale != 1.0 {
                if !(a.scale > 0.0 && a.scale <= 1.0) {
                    return Err(invalid(format!("--scale must lie in (0, 1], got {}", a.scale)));
                }
                spec.replications = ((spec.replications as f64 * a.scale).ceil() as usize).max(1);
            }
            spec
        }
        (None, Some(name)) => preset(name, a.scale)?,
        (None, None) => return Err(invalid("give --spec or --preset")),
    };
    if let Some(seed) = a.seed {
        spec.seed = seed;
    }
    if a.threads == Some(0) {
        return Err(invalid("--threads must be positive"));
    }
    let (mut manifest, started) = RunManifest::start("montecarlo", Some(spec.seed));
    let rows = run_experiment(&spec, a.threads)?;

    let csv_path = match &a.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(anyhow::Error::from)?;
            Some(dir.join(format!("{}.csv", spec.name)))
        }
        None => None,
    };
    let mut w = csv_writer(sink(csv_path.as_deref())?);
    w.write_record(["s", "N", "method", "mean", "sd", "mse", "invalid"])?;
    for r in &rows {
        w.write_record([
            fmt_f64(r.s),
            r.n.to_string(),
            r.method.name().to_string(),
            fmt_f64(r.mean),
            fmt_f64(r.sd),
            fmt_f64(r.mse),
            r.invalid.to_string(),
        ])?;
    }
    w.flush()?;

    let failures: Vec<_> = rows
        .iter()
        .filter_map(|r| {
            r.failure
                .as_ref()
                .map(|f| json!({"s": r.s, "N": r.n, "method": r.method.name(), "reason": f}))
        })
        .collect();
    manifest
        .param("spec", spec.record())
        .param("preset", &a.preset)
        .param("spec_file", &a.spec)
        .param("scale", a.scale)
        .param("threads", a.threads)
        .param("out", &csv_path)
        .result("rows", rows.len())
        .result("failed_cells", failures);
    manifest.finish(started, a.out_dir.as_ref().map(|d| d.join("manifest.json")))?;
    Ok(())
}

pub fn appendixb(a: AppendixbArgs) -> Outcome {
    let kind = model_kind(a.model);
    if a.threads == Some(0) {
        return Err(invalid("--threads must be positive"));
    }
    let (mut manifest, started) = RunManifest::start("appendixb", Some(a.seed));
    let generator = generator_for(kind, a.s, a.burn_in, ObservableSpec::default())?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = a.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(anyhow::Error::from)?;
    let fit = pool.install(|| scaling_exponent(generator.as_ref(), &a.grid, a.reps, a.seed))?;

    let target = 3.0 - 1.0 / a.s;
    let footer = json!({
        "exponent": fit.exponent,
        "intercept": fit.intercept,
        "target": if a.s > 0.5 && a.s < 1.0 { json!(target) } else { serde_json::Value::Null },
        "s": a.s,
        "reps": a.reps,
    });
    let mut w = csv_writer(sink(a.out.as_deref())?);
    w.write_record(["N", "var", "log_var"])?;
    for (n, v) in fit.grid.iter().zip(&fit.variances) {
        w.write_record([n.to_string(), fmt_f64(*v), fmt_f64(v.ln())])?;
    }
    let mut out = w.into_inner().map_err(|e| anyhow!("{}", e.error()))?;
    writeln!(out, "# {footer}")?;
    out.flush()?;
    manifest
        .param("model", kind.name())
        .param("s", a.s)
        .param("grid", &a.grid)
        .param("reps", a.reps)
        .param("burn_in", a.burn_in)
        .param("threads", a.threads)
        .param("out", &a.out)
        .result("exponent", fit.exponent);
    manifest.finish(started, manifest_path(a.out.as_deref()))?;
    Ok(())
}
