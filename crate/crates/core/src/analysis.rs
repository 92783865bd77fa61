//! Large-N approximation ratios of APQ relative to the ideal continuous,
//! lossless configuration.
//!
//! With the ideal phases uniformly distributed, the ratio is the square of
//! `E[β(θ)·cos δ]` where δ is the quantization error. For a uniform grid this
//! factors into the mean gain times `sinc(1/K)`; for a limited range the two
//! edge phases collect the wide wrap cell and carry more probability.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::uniform_threshold;
use crate::model::{CoefficientSet, PdaProfile, Regime};

/// Nodes of the periodic trapezoidal rule used for the continuous limit.
pub const CONTINUOUS_NODES: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RatioRegime {
    Uniform,
    Limited,
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub e_pda: f64,
    /// `−10·log10(e_pda)`, positive for a loss.
    pub loss_db: f64,
    pub regime: RatioRegime,
    pub k: Option<usize>,
    pub range: Option<f64>,
    pub profile: Option<PdaProfile>,
}

impl RatioReport {
    fn new(e_pda: f64, regime: RatioRegime, ws: Option<&CoefficientSet>) -> Self {
        Self {
            e_pda,
            loss_db: loss_db(e_pda),
            regime,
            k: ws.map(|w| w.k()),
            range: ws.map(|w| w.phase_set().range()),
            profile: ws.and_then(|w| w.profile().copied()),
        }
    }
}

/// Normalized sinc, `sin(πx)/(πx)`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

pub fn loss_db(ratio: f64) -> f64 {
    -10.0 * ratio.log10()
}

fn require(ws: &CoefficientSet, expected: Regime, operation: &'static str) -> Result<()> {
    let actual = ws.phase_set().regime();
    if actual != expected {
        return Err(Error::WrongRegime {
            operation,
            expected: expected.name(),
            actual: actual.name(),
        });
    }
    Ok(())
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// `(sinc(1/K)/K · Σ β(φ_k))²` for a uniform grid.
pub fn approx_ratio_uniform(ws: &CoefficientSet) -> Result<RatioReport> {
    require(ws, Regime::Uniform, "approx_ratio_uniform")?;
    Ok(RatioReport::new(
        uniform_ratio(ws.gains()),
        RatioRegime::Uniform,
        Some(ws),
    ))
}

/// The uniform-grid ratio for the given gain samples, K = `gains.len()`.
pub fn uniform_ratio(gains: &[f64]) -> f64 {
    (sinc(1.0 / gains.len() as f64) * mean(gains)).powi(2)
}

/// Loss split into the attenuation part and the quantization part, both in dB
/// and positive for a loss.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossDecomposition {
    pub gain_loss_db: f64,
    pub quantization_loss_db: f64,
}

impl LossDecomposition {
    pub fn total_db(&self) -> f64 {
        self.gain_loss_db + self.quantization_loss_db
    }
}

pub fn loss_db_decomposition(ws: &CoefficientSet) -> Result<LossDecomposition> {
    require(ws, Regime::Uniform, "loss_db_decomposition")?;
    Ok(LossDecomposition {
        gain_loss_db: -20.0 * mean(ws.gains()).log10(),
        quantization_loss_db: -20.0 * sinc(1.0 / ws.k() as f64).log10(),
    })
}

/// Probability that APQ selects each phase of the limited grid when the ideal
/// phase is uniform on the circle.
///
/// The two edge phases own half an interior cell plus half the wrap gap; the
/// interior phases own one step `R/(K−1)` each.
pub fn limited_pmf(k: usize, range: f64) -> Result<Vec<f64>> {
    if k < 2 {
        return Err(Error::TooFewPhases(k));
    }
    if !(range >= 0.0 && range.is_finite()) {
        return Err(Error::InvalidRange(range));
    }
    let threshold = uniform_threshold(k);
    if range > threshold + 1e-12 {
        return Err(Error::WrongRegime {
            operation: "limited_pmf",
            expected: Regime::Limited.name(),
            actual: Regime::Uniform.name(),
        });
    }
    if k == 2 {
        return Ok(vec![0.5, 0.5]);
    }
    let step = range / (k as f64 - 1.0);
    let edge = (PI - range / 2.0 + step / 2.0) / TAU;
    let mut pmf = vec![step / TAU; k];
    pmf[0] = edge;
    pmf[k - 1] = edge;
    Ok(pmf)
}

/// The limited-range ratio for gain samples on the grid `[−R/2, R/2]`,
/// K = `gains.len()`. Evaluates the closed form without regime checks, so it
/// also serves at and beyond the uniform threshold for continuity studies.
pub fn limited_ratio(gains: &[f64], range: f64) -> f64 {
    let k = gains.len();
    let edges = gains[0] + gains[k - 1];
    if k == 2 {
        return (range / 2.0).sin().powi(2) / (PI * PI) * edges * edges;
    }
    let half_step = (range / (2.0 * (k as f64 - 1.0))).sin();
    let interior: f64 = gains[1..k - 1].iter().sum();
    let inner = interior * half_step + edges / 2.0 * (half_step + (range / 2.0).sin());
    inner * inner / (PI * PI)
}

pub fn approx_ratio_limited(ws: &CoefficientSet) -> Result<RatioReport> {
    require(ws, Regime::Limited, "approx_ratio_limited")?;
    Ok(RatioReport::new(
        limited_ratio(ws.gains(), ws.phase_set().range()),
        RatioRegime::Limited,
        Some(ws),
    ))
}

/// Ratio for whichever closed form applies to the set's regime.
pub fn approx_ratio(ws: &CoefficientSet) -> Result<RatioReport> {
    match ws.phase_set().regime() {
        Regime::Uniform => approx_ratio_uniform(ws),
        Regime::Limited => approx_ratio_limited(ws),
        Regime::Arbitrary => Err(Error::WrongRegime {
            operation: "approx_ratio",
            expected: "uniform or limited",
            actual: Regime::Arbitrary.name(),
        }),
    }
}

/// Squared mean of the gain profile over one period: the ratio reached with
/// continuous phases and attenuation.
pub fn approx_ratio_continuous(profile: &PdaProfile) -> RatioReport {
    let h = TAU / CONTINUOUS_NODES as f64;
    // periodic trapezoid: every node has unit weight
    let sum: f64 = (0..CONTINUOUS_NODES).map(|i| profile.gain(i as f64 * h)).sum();
    let mean = sum / CONTINUOUS_NODES as f64;
    RatioReport {
        e_pda: mean * mean,
        loss_db: loss_db(mean * mean),
        regime: RatioRegime::Continuous,
        k: None,
        range: None,
        profile: Some(*profile),
    }
}
