//! `risopt` command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure (optimality gap), 2 usage,
//! parse or runtime error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::Format;

#[derive(Debug, Parser, Serialize)]
#[command(name = "risopt", version, about = "Discrete RIS beamforming with phase-dependent amplitude")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Read angle flags and print angles in degrees. Files stay in radians.
    #[arg(long, global = true)]
    pub degrees: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Solve one channel instance read from a JSON file.
    Solve(SolveArgs),
    /// Compare the sweep against exhaustive search on random instances.
    Validate(ValidateArgs),
    /// Large-N loss in dB for uniform phase sets.
    LossTable(LossTableArgs),
    /// Run a Monte-Carlo campaign described by a JSON config file.
    Montecarlo(MonteCarloArgs),
    /// Decision-boundary offsets of a coefficient set.
    Boundaries(CoefficientArgs),
    /// Approximation ratios over K, R and beta_min.
    Ratios(RatiosArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// Profile peak on the grid phase nearest zero.
    PeakAligned,
    /// Profile evaluated at the phases as they are.
    Profile,
}

#[derive(Debug, Args, Serialize)]
pub struct CoefficientArgs {
    /// Number of discrete phases.
    #[arg(long, short)]
    pub k: usize,
    /// Phase range R (default: full circle).
    #[arg(long, short)]
    pub range: Option<f64>,
    /// Minimum reflection gain of the amplitude profile.
    #[arg(long, default_value_t = 1.0)]
    pub beta_min: f64,
    /// Steepness of the amplitude profile.
    #[arg(long, default_value_t = 1.6)]
    pub alpha_r: f64,
    /// Horizontal offset of the amplitude profile (default: π/2).
    #[arg(long, allow_hyphen_values = true)]
    pub phi_r: Option<f64>,
    #[arg(long, value_enum, default_value_t = Sampling::PeakAligned)]
    pub sampling: Sampling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmArg {
    Alg1,
    Apq,
    Eapq,
    Exhaustive,
}

#[derive(Debug, Args, Serialize)]
pub struct SolveArgs {
    /// Channel instance: {"direct": {"beta", "alpha"}, "cascaded": [...]}.
    #[arg(long, short)]
    pub instance: PathBuf,
    #[command(flatten)]
    pub coefficients: CoefficientArgs,
    #[arg(long, short, value_enum, default_value_t = AlgorithmArg::Alg1)]
    pub algorithm: AlgorithmArg,
    /// Largest number of selections exhaustive search may evaluate.
    #[arg(long, default_value_t = risopt::optimal::DEFAULT_EVALUATION_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct ValidateArgs {
    #[arg(long, short)]
    pub n: usize,
    #[command(flatten)]
    pub coefficients: CoefficientArgs,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = risopt::optimal::DEFAULT_EVALUATION_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct LossTableArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.5, 0.8])]
    pub beta_min: Vec<f64>,
    #[arg(long, short, value_delimiter = ',', default_values_t = [2, 3, 4, 6, 8])]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 1.6)]
    pub alpha_r: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub phi_r: Option<f64>,
    #[arg(long, value_enum, default_value_t = Sampling::PeakAligned)]
    pub sampling: Sampling,
}

#[derive(Debug, Args, Serialize)]
pub struct MonteCarloArgs {
    /// Experiment config (JSON).
    #[arg(long, short)]
    pub config: PathBuf,
    /// Aggregate table destination. Defaults to `<output>.aggregate.csv`
    /// next to `--output`, or standard error without `--output`. Unused for
    /// JSON, which embeds the aggregates.
    #[arg(long)]
    pub aggregate: Option<PathBuf>,
    /// Run trials on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct RatiosArgs {
    #[arg(long, short, value_delimiter = ',', default_values_t = [2, 3, 4, 8])]
    pub k: Vec<usize>,
    /// Phase ranges (default: full circle).
    #[arg(long, short, value_delimiter = ',')]
    pub range: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.5, 0.8])]
    pub beta_min: Vec<f64>,
    #[arg(long, default_value_t = 1.6)]
    pub alpha_r: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub phi_r: Option<f64>,
    #[arg(long, value_enum, default_value_t = Sampling::PeakAligned)]
    pub sampling: Sampling,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
