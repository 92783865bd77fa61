use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::channel_model::{generate_channel, ChannelModelConfig};
use super::stats::{cdf, mean, percentile};
use crate::error::{Error, Result};
use crate::model::{BeamformingSolution, ChannelInstance, CoefficientSet};
use crate::optimal::{algorithm1_optimize, exhaustive_search_with_budget, DEFAULT_EVALUATION_BUDGET};
use crate::quantizers::{apq_solve, eapq_solve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Alg1,
    Apq,
    Eapq,
    Exhaustive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Alg1, Algorithm::Apq, Algorithm::Eapq, Algorithm::Exhaustive];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Alg1 => "alg1",
            Algorithm::Apq => "apq",
            Algorithm::Eapq => "eapq",
            Algorithm::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm '{s}' (expected alg1, apq, eapq or exhaustive)")))
    }
}

/// Runs one algorithm on one instance.
pub fn solve(
    algorithm: Algorithm,
    channel: &ChannelInstance,
    ws: &CoefficientSet,
    exhaustive_budget: u64,
) -> Result<BeamformingSolution> {
    match algorithm {
        Algorithm::Alg1 => algorithm1_optimize(channel, ws),
        Algorithm::Apq => apq_solve(channel, ws),
        Algorithm::Eapq => eapq_solve(channel, ws),
        Algorithm::Exhaustive => exhaustive_search_with_budget(channel, ws, exhaustive_budget),
    }
}

/// How trials are scheduled. `Parallel` falls back to sequential execution
/// when the crate is built without the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSetup {
    pub channel: ChannelModelConfig,
    pub coefficients: CoefficientSet,
    pub algorithms: Vec<Algorithm>,
    pub trials: u64,
    pub exhaustive_budget: u64,
    pub execution: Execution,
}

impl MonteCarloSetup {
    pub fn new(channel: ChannelModelConfig, coefficients: CoefficientSet, algorithms: Vec<Algorithm>, trials: u64) -> Self {
        Self {
            channel,
            coefficients,
            algorithms,
            trials,
            exhaustive_budget: DEFAULT_EVALUATION_BUDGET,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub algorithm: Algorithm,
    pub power: f64,
    pub snr_boost: Option<f64>,
    /// Power over `(Σ_{n=0..N} β_n)²`.
    pub normalized_power: f64,
    pub steps: u64,
    /// Means over elements of `β(θ_n)·cos δ_n` and `β(θ_n)·sin δ_n`, for the
    /// quantizers.
    pub projection: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Power,
    SnrBoost,
    NormalizedPower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub trials: usize,
    pub mean_power: f64,
    pub mean_snr_boost: Option<f64>,
    pub mean_normalized_power: f64,
    pub mean_steps: f64,
    /// Mean projection terms (cos, sin) of the quantizers. The large-N ratio
    /// equals cos² + sin²; the closed forms assume the sine term vanishes.
    pub mean_projection: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    /// Ordered by trial, then by the setup's algorithm order.
    pub records: Vec<TrialRecord>,
    pub algorithms: Vec<Algorithm>,
}

impl ExperimentResult {
    pub fn records_for(&self, algorithm: Algorithm) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(move |r| r.algorithm == algorithm)
    }

    /// Metric values for one algorithm in trial order. Trials without a
    /// defined SNR boost are skipped for [`Metric::SnrBoost`].
    pub fn values(&self, algorithm: Algorithm, metric: Metric) -> Vec<f64> {
        self.records_for(algorithm)
            .filter_map(|r| match metric {
                Metric::Power => Some(r.power),
                Metric::SnrBoost => r.snr_boost,
                Metric::NormalizedPower => Some(r.normalized_power),
            })
            .collect()
    }

    pub fn summary(&self, algorithm: Algorithm) -> Option<AlgorithmSummary> {
        let records: Vec<&TrialRecord> = self.records_for(algorithm).collect();
        if records.is_empty() {
            return None;
        }
        let boosts = self.values(algorithm, Metric::SnrBoost);
        let projections: Vec<(f64, f64)> = records.iter().filter_map(|r| r.projection).collect();
        let mean_projection = (!projections.is_empty()).then(|| {
            let n = projections.len() as f64;
            let (c, s) = projections.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
            (c / n, s / n)
        });
        Some(AlgorithmSummary {
            algorithm,
            trials: records.len(),
            mean_power: mean(&self.values(algorithm, Metric::Power)),
            mean_snr_boost: (boosts.len() == records.len()).then(|| mean(&boosts)),
            mean_normalized_power: mean(&self.values(algorithm, Metric::NormalizedPower)),
            mean_steps: records.iter().map(|r| r.steps as f64).sum::<f64>() / records.len() as f64,
            mean_projection,
        })
    }

    pub fn summaries(&self) -> Vec<AlgorithmSummary> {
        self.algorithms.iter().filter_map(|&a| self.summary(a)).collect()
    }

    pub fn cdf(&self, algorithm: Algorithm, metric: Metric, grid: &[f64]) -> Vec<f64> {
        cdf(&self.values(algorithm, metric), grid)
    }

    pub fn percentile(&self, algorithm: Algorithm, metric: Metric, p: f64) -> Result<f64> {
        percentile(&self.values(algorithm, metric), p)
    }
}

fn projection_terms(sol: &BeamformingSolution, ws: &CoefficientSet) -> Option<(f64, f64)> {
    let errors = sol.quantization_errors.as_ref()?;
    if errors.is_empty() {
        return None;
    }
    let n = errors.len() as f64;
    let (c, s) = sol
        .selections
        .iter()
        .zip(errors)
        .fold((0.0, 0.0), |acc, (&k, &d)| (acc.0 + ws.gain(k) * d.cos(), acc.1 + ws.gain(k) * d.sin()));
    Some((c / n, s / n))
}

fn run_trial(setup: &MonteCarloSetup, trial: u64) -> Result<Vec<TrialRecord>> {
    let wrap = |e: Error| Error::Trial {
        trial,
        source: Box::new(e),
    };
    let channel = generate_channel(&setup.channel, trial).map_err(wrap)?;
    setup
        .algorithms
        .iter()
        .map(|&algorithm| {
            let sol = solve(algorithm, &channel, &setup.coefficients, setup.exhaustive_budget).map_err(wrap)?;
            Ok(TrialRecord {
                trial,
                algorithm,
                power: sol.power,
                snr_boost: sol.snr_boost,
                normalized_power: sol.normalized_power(&channel),
                steps: sol.stats.steps,
                projection: projection_terms(&sol, &setup.coefficients),
            })
        })
        .collect()
}

/// Runs every algorithm on the same channel realization in each trial.
pub fn run_monte_carlo(setup: &MonteCarloSetup) -> Result<ExperimentResult> {
    if setup.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if setup.algorithms.is_empty() {
        return Err(Error::InvalidConfig("no algorithms selected".into()));
    }
    setup.channel.validate()?;
    let per_trial = match setup.execution {
        Execution::Sequential => run_sequential(setup),
        Execution::Parallel => run_parallel(setup),
    }?;
    Ok(ExperimentResult {
        records: per_trial.into_iter().flatten().collect(),
        algorithms: setup.algorithms.clone(),
    })
}

fn run_sequential(setup: &MonteCarloSetup) -> Result<Vec<Vec<TrialRecord>>> {
    (0..setup.trials).map(|t| run_trial(setup, t)).collect()
}

#[cfg(feature = "parallel")]
fn run_parallel(setup: &MonteCarloSetup) -> Result<Vec<Vec<TrialRecord>>> {
    use rayon::prelude::*;
    // indexed collect keeps trial order
    (0..setup.trials).into_par_iter().map(|t| run_trial(setup, t)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(setup: &MonteCarloSetup) -> Result<Vec<Vec<TrialRecord>>> {
    run_sequential(setup)
}
