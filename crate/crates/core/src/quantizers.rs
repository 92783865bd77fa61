//! The continuous ideal solution and the two quantization heuristics.
//!
//! APQ quantizes the ideal phase of every element to the nearest available
//! phase and ignores the gains. EAPQ picks, per element, the coefficient with
//! the largest projection onto the direct link, which accounts for the gains
//! but skips the search over the sum direction.

use serde::{Deserialize, Serialize};

use crate::angle::{angular_difference, wrap_pi, wrap_pi_upper};
use crate::error::Result;
use crate::model::{BeamformingSolution, ChannelInstance, CoefficientSet, PhaseShiftSet};
use crate::optimal::lemma1_assign;

/// Continuous phases aligning every cascaded path with the direct link, and
/// the power they reach with unit gains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealSolution {
    pub angles: Vec<f64>,
    pub max_power: f64,
}

pub fn ideal_phases(channel: &ChannelInstance) -> IdealSolution {
    let reference = channel.reference_angle();
    IdealSolution {
        angles: channel
            .cascaded
            .iter()
            .map(|h| wrap_pi(reference - h.alpha))
            .collect(),
        max_power: channel.aligned_magnitude().powi(2),
    }
}

/// Index of the phase nearest to `theta` under wrapped distance. A point
/// exactly between two neighbours belongs to the counter-clockwise one, as
/// each decision cell includes its lower edge only.
pub fn quantize_nearest(theta: f64, phase_set: &PhaseShiftSet) -> usize {
    let key = |k: usize| {
        let d = angular_difference(theta, phase_set.phase(k));
        (d.abs(), d > 0.0)
    };
    (0..phase_set.k())
        .min_by(|&a, &b| {
            let (da, ra) = key(a);
            let (db, rb) = key(b);
            da.total_cmp(&db).then(ra.cmp(&rb))
        })
        .expect("phase set is never empty")
}

pub fn apq_assign(channel: &ChannelInstance, phase_set: &PhaseShiftSet) -> Vec<usize> {
    ideal_phases(channel)
        .angles
        .iter()
        .map(|&theta| quantize_nearest(theta, phase_set))
        .collect()
}

/// Projection-maximizing selection toward the direct-link angle (zero when
/// the direct link is absent). Ties go to the smaller index.
pub fn eapq_assign(channel: &ChannelInstance, ws: &CoefficientSet) -> Vec<usize> {
    lemma1_assign(channel.reference_angle(), channel, ws)
}

pub fn apq_solve(channel: &ChannelInstance, ws: &CoefficientSet) -> Result<BeamformingSolution> {
    with_errors(channel, ws, apq_assign(channel, ws.phase_set()))
}

pub fn eapq_solve(channel: &ChannelInstance, ws: &CoefficientSet) -> Result<BeamformingSolution> {
    with_errors(channel, ws, eapq_assign(channel, ws))
}

fn with_errors(
    channel: &ChannelInstance,
    ws: &CoefficientSet,
    selections: Vec<usize>,
) -> Result<BeamformingSolution> {
    let ideal = ideal_phases(channel);
    let mut sol = BeamformingSolution::evaluate(channel, ws, selections)?;
    sol.quantization_errors = Some(
        sol.phases
            .iter()
            .zip(&ideal.angles)
            .map(|(theta, ideal)| wrap_pi_upper(theta - ideal))
            .collect(),
    );
    Ok(sol)
}
