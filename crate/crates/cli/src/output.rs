use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use serde_json::{Map, Value};

/// Shortest decimal that round-trips (at most 17 significant digits);
/// scientific notation outside `[1e-5, 1e16)`.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Writer for `path`, or stdout.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub parameters: Map<String, Value>,
    pub seed: Option<u64>,
    pub tool_version: &'static str,
    pub rng: &'static str,
    pub started: String,
    pub finished: String,
    pub wall_seconds: f64,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub results: Map<String, Value>,
}

impl RunManifest {
    pub fn start(subcommand: &'static str, seed: Option<u64>) -> (Self, DateTime<Utc>) {
        let now = Utc::now();
        (
            RunManifest {
                subcommand,
                parameters: Map::new(),
                seed,
                tool_version: env!("CARGO_PKG_VERSION"),
                rng: mplm_core::rng::RNG_NAME,
                started: now.to_rfc3339_opts(SecondsFormat::Millis, true),
                finished: String::new(),
                wall_seconds: 0.0,
                results: Map::new(),
            },
            now,
        )
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    /// Stamps the end time and writes the manifest to `path`, or to stderr.
    pub fn finish(mut self, started: DateTime<Utc>, path: Option<PathBuf>) -> Result<()> {
        let end = Utc::now();
        self.finished = end.to_rfc3339_opts(SecondsFormat::Millis, true);
        self.wall_seconds = (end - started).num_milliseconds() as f64 / 1000.0;
        let json = serde_json::to_string_pretty(&self)?;
        match path {
            Some(p) => std::fs::write(&p, json + "\n")
                .with_context(|| format!("cannot write {}", p.display()))?,
            None => eprintln!("{json}"),
        }
        Ok(())
    }
}

/// `<file>.manifest.json` next to an output file.
pub fn manifest_path(out: Option<&Path>) -> Option<PathBuf> {
    out.map(|p| {
        let mut name = p.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        p.with_file_name(name)
    })
}
