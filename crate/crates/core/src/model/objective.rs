use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::channel::ChannelInstance;
use super::coefficients::CoefficientSet;
use crate::error::{Error, Result};

/// Returns `g = h₀ + Σ h_n·w_{k_n}` and `|g|²`.
pub fn received_power(
    channel: &ChannelInstance,
    ws: &CoefficientSet,
    selections: &[usize],
) -> Result<(Complex64, f64)> {
    check_selections(channel, ws, selections)?;
    let g = channel.direct_complex()
        + channel
            .cascaded
            .iter()
            .zip(selections)
            .map(|(h, &k)| h.to_complex() * ws.coefficient(k))
            .sum::<Complex64>();
    Ok((g, g.norm_sqr()))
}

/// Received power relative to the direct link alone, `|g|²/β₀²`. `None` when
/// the direct link is absent.
pub fn snr_boost(
    channel: &ChannelInstance,
    ws: &CoefficientSet,
    selections: &[usize],
) -> Result<Option<f64>> {
    let (_, power) = received_power(channel, ws, selections)?;
    Ok(boost_of(channel, power))
}

fn boost_of(channel: &ChannelInstance, power: f64) -> Option<f64> {
    let direct = channel.direct.beta * channel.direct.beta;
    (direct > 0.0).then(|| power / direct)
}

fn check_selections(
    channel: &ChannelInstance,
    ws: &CoefficientSet,
    selections: &[usize],
) -> Result<()> {
    if selections.len() != channel.n() {
        return Err(Error::SelectionCountMismatch {
            expected: channel.n(),
            actual: selections.len(),
        });
    }
    if let Some((element, &index)) = selections.iter().enumerate().find(|(_, &k)| k >= ws.k()) {
        return Err(Error::SelectionOutOfRange {
            element,
            index,
            k: ws.k(),
        });
    }
    Ok(())
}

/// Diagnostics recorded by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SolveStats {
    /// Boundary crossings evaluated by the sweep, or objective evaluations for
    /// the exhaustive search. Zero for the quantizers.
    pub steps: u64,
    /// Number of distinct boundary angles L (sweep only).
    pub boundaries: usize,
    /// Complex vector additions spent building and updating g (sweep only).
    pub vector_additions: u64,
}

/// A phase selection for every element together with the resulting sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamformingSolution {
    /// Zero-based phase index per element.
    pub selections: Vec<usize>,
    /// Selected phase per element, radians.
    pub phases: Vec<f64>,
    pub g: Complex64,
    pub power: f64,
    pub snr_boost: Option<f64>,
    /// `θ_n − θ_n^ideal` wrapped to (−π, π], filled by the quantizers.
    pub quantization_errors: Option<Vec<f64>>,
    /// Whether the result is a proven global optimum.
    pub certified_optimal: bool,
    pub stats: SolveStats,
}

impl BeamformingSolution {
    pub fn evaluate(
        channel: &ChannelInstance,
        ws: &CoefficientSet,
        selections: Vec<usize>,
    ) -> Result<Self> {
        let (g, power) = received_power(channel, ws, &selections)?;
        let phases = selections.iter().map(|&k| ws.phase(k)).collect();
        Ok(Self {
            phases,
            g,
            power,
            snr_boost: boost_of(channel, power),
            selections,
            quantization_errors: None,
            certified_optimal: false,
            stats: SolveStats::default(),
        })
    }

    /// Power divided by the perfectly aligned power `(Σ_{n=0..N} β_n)²`.
    pub fn normalized_power(&self, channel: &ChannelInstance) -> f64 {
        let ideal = channel.aligned_magnitude().powi(2);
        if ideal > 0.0 {
            self.power / ideal
        } else {
            0.0
        }
    }
}
