use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use super::channel_model::ChannelModelConfig;
use super::monte_carlo::{Algorithm, Execution, Metric, MonteCarloSetup};
use crate::error::{Error, Result};
use crate::model::{build_phase_set, CoefficientSet, GainSampling, PdaProfile};
use crate::optimal::DEFAULT_EVALUATION_BUDGET;

/// A scalar or a list of values to sweep over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

impl<T> From<T> for OneOrMany<T> {
    fn from(v: T) -> Self {
        OneOrMany::One(v)
    }
}

fn default_range() -> OneOrMany<f64> {
    OneOrMany::One(TAU)
}
fn default_alpha_r() -> f64 {
    1.6
}
fn default_phi_r() -> f64 {
    FRAC_PI_2
}
fn default_true() -> bool {
    true
}
fn default_power() -> f64 {
    1.0
}
fn default_budget() -> u64 {
    DEFAULT_EVALUATION_BUDGET
}
fn default_metric() -> Metric {
    Metric::SnrBoost
}

/// Monte-Carlo campaign description. `N`, `K`, `R` and `beta_min` accept a
/// single value or a list; the campaign runs their cartesian product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "N")]
    pub n: OneOrMany<usize>,
    #[serde(rename = "K")]
    pub k: OneOrMany<usize>,
    /// Phase range in radians.
    #[serde(rename = "R", default = "default_range")]
    pub range: OneOrMany<f64>,
    pub beta_min: OneOrMany<f64>,
    #[serde(default = "default_alpha_r")]
    pub alpha_r: f64,
    #[serde(default = "default_phi_r")]
    pub phi_r: f64,
    /// Place the profile peak on the grid phase nearest zero. When false the
    /// profile is sampled at the phases as they are.
    #[serde(default = "default_true")]
    pub peak_aligned: bool,
    #[serde(default)]
    pub kappa: f64,
    pub trials: u64,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub percentiles: Vec<f64>,
    #[serde(default)]
    pub cdf_grid: Vec<f64>,
    #[serde(default = "default_metric")]
    pub cdf_metric: Metric,
    #[serde(default = "default_power")]
    pub direct_power: f64,
    #[serde(default = "default_power")]
    pub element_power: f64,
    #[serde(default = "default_budget")]
    pub exhaustive_budget: u64,
    #[serde(default)]
    pub execution: Execution,
}

/// One point of the sweep, ready to run.
#[derive(Debug, Clone, PartialEq)]
pub struct Setting {
    pub n: usize,
    pub k: usize,
    pub range: f64,
    pub beta_min: f64,
    pub setup: MonteCarloSetup,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("algorithms must not be empty".into()));
        }
        for (name, list) in [("N", self.n.to_vec().len()), ("K", self.k.to_vec().len())] {
            if list == 0 {
                return Err(Error::InvalidConfig(format!("{name} must not be empty")));
            }
        }
        if self.range.to_vec().is_empty() || self.beta_min.to_vec().is_empty() {
            return Err(Error::InvalidConfig("R and beta_min must not be empty".into()));
        }
        if let Some(p) = self.percentiles.iter().find(|p| !(**p > 0.0 && **p <= 100.0)) {
            return Err(Error::InvalidConfig(format!("percentile {p} outside (0, 100]")));
        }
        if !self.cdf_grid.is_sorted() {
            return Err(Error::InvalidConfig("cdf_grid must be sorted".into()));
        }
        Ok(())
    }

    /// Expands the sweep in the order N, K, R, beta_min (last varies fastest).
    pub fn settings(&self) -> Result<Vec<Setting>> {
        self.validate()?;
        let sampling = if self.peak_aligned {
            GainSampling::PeakAligned
        } else {
            GainSampling::Profile
        };
        let mut out = Vec::new();
        for n in self.n.to_vec() {
            for k in self.k.to_vec() {
                for range in self.range.to_vec() {
                    for beta_min in self.beta_min.to_vec() {
                        let profile = PdaProfile::new(beta_min, self.alpha_r, self.phi_r)?;
                        let ws = CoefficientSet::build(build_phase_set(k, range)?, profile, sampling)?;
                        let channel = ChannelModelConfig {
                            n_elements: n,
                            direct_power: self.direct_power,
                            element_power: self.element_power,
                            rician_kappa: self.kappa,
                            seed: self.seed,
                        };
                        channel.validate()?;
                        let setup = MonteCarloSetup {
                            channel,
                            coefficients: ws,
                            algorithms: self.algorithms.clone(),
                            trials: self.trials,
                            exhaustive_budget: self.exhaustive_budget,
                            execution: self.execution,
                        };
                        out.push(Setting { n, k, range, beta_min, setup });
                    }
                }
            }
        }
        Ok(out)
    }
}
