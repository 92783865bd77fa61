use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::angle::wrap_pi;
use crate::error::{Error, Result};

/// Which construction produced a phase set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// K phases spaced 2π/K apart, symmetric about zero.
    Uniform,
    /// K phases equally spaced over [−R/2, R/2], leaving a wide wrap gap.
    Limited,
    /// User supplied phases with no placement guarantee.
    Arbitrary,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Uniform => "uniform",
            Regime::Limited => "limited",
            Regime::Arbitrary => "arbitrary",
        }
    }
}

/// An ordered set of K discrete phase shifts in [−π, π) together with the
/// gaps between cyclically adjacent phases.
///
/// `gaps[k]` is the counter-clockwise distance from `phases[k]` to
/// `phases[(k + 1) % K]`, so the last entry is the wrap gap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseShiftSet {
    phases: Vec<f64>,
    gaps: Vec<f64>,
    range: f64,
    regime: Regime,
}

/// Smallest range for which K phases can be placed uniformly over the circle.
pub fn uniform_threshold(k: usize) -> f64 {
    TAU * (k as f64 - 1.0) / k as f64
}

/// Builds the equally spaced phase set for K phases and phase range R.
///
/// For `R ≥ 2π(K−1)/K` the phases are the uniform grid
/// `{0, ω′, …, (K−1)ω′} − (K−1)ω′/2` with `ω′ = 2π/K`; otherwise they span
/// `[−R/2, R/2]` in K−1 equal steps.
pub fn build_phase_set(k: usize, range: f64) -> Result<PhaseShiftSet> {
    if k < 2 {
        return Err(Error::TooFewPhases(k));
    }
    if !range.is_finite() || range <= 0.0 || range > TAU + 1e-12 {
        return Err(Error::InvalidRange(range));
    }
    let range = range.min(TAU);
    let kf = k as f64;
    let (phases, regime) = if range >= uniform_threshold(k) {
        let step = TAU / kf;
        let offset = (kf - 1.0) * step / 2.0;
        ((0..k).map(|i| i as f64 * step - offset).collect(), Regime::Uniform)
    } else {
        let step = range / (kf - 1.0);
        let mut phases: Vec<f64> = (0..k).map(|i| i as f64 * step - range / 2.0).collect();
        phases[k - 1] = range / 2.0;
        (phases, Regime::Limited)
    };
    Ok(PhaseShiftSet::assemble(phases, range, regime))
}

impl PhaseShiftSet {
    /// Wraps arbitrary phases into [−π, π) and sorts them. The stored range is
    /// the span `φ_K − φ_1` of the sorted set. Gains given to
    /// [`CoefficientSet::from_gains`](crate::model::CoefficientSet::from_gains)
    /// follow the sorted order.
    pub fn from_phases(phases: &[f64]) -> Result<Self> {
        if phases.len() < 2 {
            return Err(Error::TooFewPhases(phases.len()));
        }
        if let Some(bad) = phases.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite phase {bad}")));
        }
        let mut sorted: Vec<f64> = phases.iter().map(|&p| wrap_pi(p)).collect();
        sorted.sort_by(f64::total_cmp);
        if let Some(i) = sorted.windows(2).position(|w| w[1] - w[0] <= 0.0) {
            return Err(Error::DuplicatePhase(i + 1));
        }
        let span = sorted[sorted.len() - 1] - sorted[0];
        Ok(Self::assemble(sorted, span, Regime::Arbitrary))
    }

    fn assemble(phases: Vec<f64>, range: f64, regime: Regime) -> Self {
        let k = phases.len();
        let mut gaps: Vec<f64> = phases.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.push(TAU - (phases[k - 1] - phases[0]));
        Self {
            phases,
            gaps,
            range,
            regime,
        }
    }

    pub fn k(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn phase(&self, k: usize) -> f64 {
        self.phases[k]
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    /// Gap from the cyclic predecessor of `k` to `k`, i.e. ω_{k⊖1}.
    pub fn gap_before(&self, k: usize) -> f64 {
        self.gaps[self.prev(k)]
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// k ⊕ 1 on zero-based indices.
    pub fn next(&self, k: usize) -> usize {
        (k + 1) % self.k()
    }

    /// k ⊖ 1 on zero-based indices.
    pub fn prev(&self, k: usize) -> usize {
        (k + self.k() - 1) % self.k()
    }

    /// Index of the phase closest to zero, ties resolved to the smaller index.
    pub fn index_nearest_zero(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.phases.iter().enumerate() {
            if p.abs() < self.phases[best].abs() {
                best = i;
            }
        }
        best
    }
}
