use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Simulate Manneville-Pomeau processes and estimate their intermittency.
#[derive(Debug, Parser)]
#[command(name = "mplm", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a binary series and write it as `t,x` CSV.
    Simulate(SimulateArgs),
    /// Raw or lag-window spectrum of a series, as `omega,ordinate` CSV.
    Spectrum(SpectrumArgs),
    /// Estimate s from a series.
    Estimate(EstimateArgs),
    /// Run a Monte Carlo table.
    Montecarlo(MontecarloArgs),
    /// Growth of Var(S_N) over a grid of N.
    Appendixb(AppendixbArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Mp,
    Lbp,
    Markov,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value = "mp", env = "MPLM_MODEL")]
    pub model: Model,
    /// Intermittency parameter; lbp and markov use gamma = 1 + 1/s.
    #[arg(long, env = "MPLM_S", conflicts_with = "gamma")]
    pub s: Option<f64>,
    /// Tail exponent of the lbp and markov models.
    #[arg(long, env = "MPLM_GAMMA")]
    pub gamma: Option<f64>,
    #[arg(long, env = "MPLM_N")]
    pub n: usize,
    #[arg(long, default_value_t = 1, env = "MPLM_SEED")]
    pub seed: u64,
    #[arg(long, default_value_t = mplm_core::dynamics::DEFAULT_BURN_IN, env = "MPLM_BURN_IN")]
    pub burn_in: usize,
    /// Observable interval (lo, hi).
    #[arg(long, default_value_t = 0.1, env = "MPLM_LO")]
    pub lo: f64,
    #[arg(long, default_value_t = 0.9, env = "MPLM_HI")]
    pub hi: f64,
    #[arg(long, env = "MPLM_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Smooth {
    None,
    Parzen,
    Cosbell,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long = "in", env = "MPLM_IN")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "none", env = "MPLM_SMOOTH")]
    pub smooth: Smooth,
    /// Lag-window truncation; defaults to floor(N^0.9).
    #[arg(long, env = "MPLM_M")]
    pub m: Option<usize>,
    /// Use the series as given instead of removing its mean.
    #[arg(long, env = "MPLM_NO_CENTER")]
    pub no_center: bool,
    #[arg(long, env = "MPLM_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long = "in", env = "MPLM_IN")]
    pub input: PathBuf,
    /// perio, parzen, cos1, cos2, varmp, vpmp, wmp-haar, wmp-mexhat, p or sp.
    #[arg(long, env = "MPLM_METHOD")]
    pub method: String,
    #[arg(long, env = "MPLM_JSON")]
    pub json: bool,
    /// Skip mean removal before the wavelet transform.
    #[arg(long, env = "MPLM_NO_CENTER")]
    pub no_center: bool,
}

#[derive(Debug, Args)]
pub struct MontecarloArgs {
    /// Experiment file of `key = value` lines.
    #[arg(long, env = "MPLM_SPEC", conflicts_with = "preset", required_unless_present = "preset")]
    pub spec: Option<PathBuf>,
    /// table51, table52, table53, table54 or table71.
    #[arg(long, env = "MPLM_PRESET")]
    pub preset: Option<String>,
    /// Fraction of the table's replications to run.
    #[arg(long, default_value_t = 1.0, env = "MPLM_SCALE")]
    pub scale: f64,
    /// Override the base seed.
    #[arg(long, env = "MPLM_SEED")]
    pub seed: Option<u64>,
    #[arg(long, env = "MPLM_THREADS")]
    pub threads: Option<usize>,
    /// Directory for `<name>.csv` and `manifest.json`; stdout otherwise.
    #[arg(long, env = "MPLM_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AppendixbArgs {
    #[arg(long, env = "MPLM_S")]
    pub s: f64,
    #[arg(long, value_enum, default_value = "mp", env = "MPLM_MODEL")]
    pub model: Model,
    #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096,8192,16384", env = "MPLM_GRID")]
    pub grid: Vec<usize>,
    #[arg(long, default_value_t = 200, env = "MPLM_REPS")]
    pub reps: usize,
    #[arg(long, default_value_t = 1, env = "MPLM_SEED")]
    pub seed: u64,
    #[arg(long, default_value_t = mplm_core::dynamics::DEFAULT_BURN_IN, env = "MPLM_BURN_IN")]
    pub burn_in: usize,
    #[arg(long, env = "MPLM_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, env = "MPLM_OUT")]
    pub out: Option<PathBuf>,
}
