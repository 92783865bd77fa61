use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pda::{pda_gain, PdaProfile};
use super::phase_set::PhaseShiftSet;
use super::TOLERANCE;
use crate::error::{Error, Result};

/// Where the gain profile's peak is placed relative to the phase grid when
/// sampling coefficient gains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GainSampling {
    /// Rotate the profile so its peak lands on the grid phase closest to zero.
    /// Gains are then sampled at offsets that are multiples of the grid step
    /// from the peak.
    #[default]
    PeakAligned,
    /// Evaluate the profile at each phase as is.
    Profile,
    /// Rotate the profile so its peak sits at the given phase (radians).
    PeakAt(f64),
}

/// The K reflection coefficients `β(φ_k)·e^{jφ_k}` available to every element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    phase_set: PhaseShiftSet,
    gains: Vec<f64>,
    profile: Option<PdaProfile>,
    locally_convex: bool,
}

impl CoefficientSet {
    /// Samples `profile` on the phases of `phase_set`.
    pub fn build(
        phase_set: PhaseShiftSet,
        profile: PdaProfile,
        sampling: GainSampling,
    ) -> Result<Self> {
        profile.validate()?;
        let peak = match sampling {
            GainSampling::Profile => None,
            GainSampling::PeakAligned => Some(phase_set.phase(phase_set.index_nearest_zero())),
            GainSampling::PeakAt(p) => Some(p),
        };
        let gains = phase_set
            .phases()
            .iter()
            .map(|&phi| match peak {
                None => pda_gain(phi, &profile),
                Some(p) => pda_gain(phi - p + profile.peak_phase(), &profile),
            })
            .collect();
        let mut set = Self::from_gains(phase_set, gains)?;
        set.profile = Some(profile);
        Ok(set)
    }

    /// Pairs explicit gains with a phase set.
    pub fn from_gains(phase_set: PhaseShiftSet, gains: Vec<f64>) -> Result<Self> {
        if gains.len() != phase_set.k() {
            return Err(Error::GainCountMismatch {
                expected: phase_set.k(),
                actual: gains.len(),
            });
        }
        if let Some((index, &gain)) = gains
            .iter()
            .enumerate()
            .find(|(_, g)| !(0.0..=1.0).contains(*g))
        {
            return Err(Error::InvalidGain { index, gain });
        }
        let locally_convex = convex_triplets(&phase_set, &gains);
        Ok(Self {
            phase_set,
            gains,
            profile: None,
            locally_convex,
        })
    }

    /// Unit gains on every phase.
    pub fn lossless(phase_set: PhaseShiftSet) -> Self {
        let gains = vec![1.0; phase_set.k()];
        Self::from_gains(phase_set, gains).expect("unit gains are valid")
    }

    pub fn k(&self) -> usize {
        self.gains.len()
    }

    pub fn phase_set(&self) -> &PhaseShiftSet {
        &self.phase_set
    }

    pub fn phases(&self) -> &[f64] {
        self.phase_set.phases()
    }

    pub fn phase(&self, k: usize) -> f64 {
        self.phase_set.phase(k)
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn gain(&self, k: usize) -> f64 {
        self.gains[k]
    }

    pub fn profile(&self) -> Option<&PdaProfile> {
        self.profile.as_ref()
    }

    pub fn locally_convex(&self) -> bool {
        self.locally_convex
    }

    pub fn coefficient(&self, k: usize) -> Complex64 {
        Complex64::from_polar(self.gains[k], self.phase_set.phase(k))
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        (0..self.k()).map(|k| self.coefficient(k)).collect()
    }

    /// Projection `β(φ_k)·cos(φ_k − direction)` of coefficient k onto a unit
    /// vector at angle `direction`.
    pub fn projection(&self, k: usize, direction: f64) -> f64 {
        self.gains[k] * (self.phase_set.phase(k) - direction).cos()
    }

    /// Index maximizing the projection onto `direction`, smallest index on ties.
    pub fn best_toward(&self, direction: f64) -> usize {
        let mut best = 0;
        let mut best_val = self.projection(0, direction);
        for k in 1..self.k() {
            let v = self.projection(k, direction);
            if v > best_val {
                best = k;
                best_val = v;
            }
        }
        best
    }
}

/// Checks that every cyclically consecutive triplet spanning less than π has
/// its middle coefficient strictly outside the chord joining its neighbours
/// (on the far side from the origin). Sets with K = 2 pass vacuously.
pub fn check_local_convexity(ws: &CoefficientSet) -> bool {
    convex_triplets(&ws.phase_set, &ws.gains)
}

fn convex_triplets(phase_set: &PhaseShiftSet, gains: &[f64]) -> bool {
    let k = phase_set.k();
    if k < 3 {
        return true;
    }
    let point = |i: usize| Complex64::from_polar(gains[i], phase_set.phase(i));
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    (0..k).all(|mid| {
        let span = phase_set.gap_before(mid) + phase_set.gaps()[mid];
        if span >= PI {
            return true;
        }
        let a = point(phase_set.prev(mid));
        let b = point(mid);
        let c = point(phase_set.next(mid));
        let chord = c - a;
        let middle_side = cross(chord, b - a);
        let origin_side = cross(chord, -a);
        // points within tolerance of the chord count as on it
        middle_side * origin_side.signum() < -TOLERANCE * chord.norm()
    })
}
