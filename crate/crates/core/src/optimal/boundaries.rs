use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::angle::{wrap_2pi, wrap_pi};
use crate::error::{Error, Result};
use crate::model::{ChannelInstance, CoefficientSet};

/// Boundary angles closer than this are merged into one crossing.
pub const GROUPING_TOLERANCE: f64 = 1e-12;

/// Per-phase decision boundary offsets of a coefficient set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryOffsets {
    /// Angle Δ_k from the boundary s_k to φ_k, in (−π, π].
    pub deltas: Vec<f64>,
    /// Boundary direction s_k = φ_k − Δ_k at which coefficient k⊖1 hands over
    /// to coefficient k, wrapped to [−π, π).
    pub s_angles: Vec<f64>,
}

/// Computes the direction at which the projections of each pair of adjacent
/// coefficients are equal.
///
/// Solving `β_k cos Δ = β_{k⊖1} cos(ω_{k⊖1} − Δ)` gives
/// `tan Δ = (β_k − β_{k⊖1} cos ω) / (β_{k⊖1} sin ω)`. The two-argument
/// arctangent picks the root where the projection difference changes sign
/// from favouring k⊖1 to favouring k, which also holds for gaps wider than π.
pub fn boundary_offsets(ws: &CoefficientSet) -> Result<BoundaryOffsets> {
    if let Some(k) = ws.gains().iter().position(|&g| g == 0.0) {
        return Err(Error::ZeroGain(k));
    }
    let set = ws.phase_set();
    let deltas: Vec<f64> = (0..ws.k())
        .map(|k| {
            let prev = set.prev(k);
            let omega = set.gap_before(k);
            let y = ws.gain(k) - ws.gain(prev) * omega.cos();
            let x = ws.gain(prev) * omega.sin();
            y.atan2(x)
        })
        .collect();
    let s_angles = deltas
        .iter()
        .enumerate()
        .map(|(k, d)| wrap_pi(ws.phase(k) - d))
        .collect();
    Ok(BoundaryOffsets { deltas, s_angles })
}

/// All `(element, phase index)` pairs switching at one boundary angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    /// λ_l in [0, 2π).
    pub angle: f64,
    pub updates: Vec<(usize, usize)>,
}

/// Decision boundaries of every element, sorted and deduplicated into a
/// crossing schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySet {
    pub offsets: BoundaryOffsets,
    /// `α_n + s_k` wrapped to [0, 2π), row-major over (n, k).
    pub element_boundaries: Vec<f64>,
    pub schedule: Vec<Crossing>,
    k: usize,
}

impl BoundarySet {
    pub fn element_boundary(&self, n: usize, k: usize) -> f64 {
        self.element_boundaries[n * self.k + k]
    }

    /// Number of distinct boundary angles L.
    pub fn len(&self) -> usize {
        self.schedule.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schedule.is_empty()
    }
}

pub fn build_boundary_schedule(channel: &ChannelInstance, ws: &CoefficientSet) -> Result<BoundarySet> {
    let offsets = boundary_offsets(ws)?;
    let k = ws.k();
    let mut element_boundaries = Vec::with_capacity(channel.n() * k);
    for h in &channel.cascaded {
        for s in &offsets.s_angles {
            element_boundaries.push(wrap_2pi(h.alpha + s));
        }
    }

    let mut order: Vec<usize> = (0..element_boundaries.len()).collect();
    order.sort_by(|&a, &b| element_boundaries[a].total_cmp(&element_boundaries[b]));

    let mut schedule: Vec<Crossing> = Vec::new();
    for idx in order {
        let angle = element_boundaries[idx];
        let update = (idx / k, idx % k);
        match schedule.last_mut() {
            Some(last) if angle - last.angle <= GROUPING_TOLERANCE => last.updates.push(update),
            _ => schedule.push(Crossing {
                angle,
                updates: vec![update],
            }),
        }
    }
    // boundaries just below 2π coincide with those just above 0
    if schedule.len() > 1 {
        let first = schedule[0].angle;
        let last = schedule[schedule.len() - 1].angle;
        if first + TAU - last <= GROUPING_TOLERANCE {
            let tail = schedule.pop().expect("len > 1");
            let mut updates = tail.updates;
            updates.append(&mut schedule[0].updates);
            schedule[0].updates = updates;
        }
    }

    Ok(BoundarySet {
        offsets,
        element_boundaries,
        schedule,
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_phase_set, PathGain, PhaseShiftSet};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn channel(alphas: &[f64]) -> ChannelInstance {
        ChannelInstance::new(
            PathGain::new(1.0, 0.0).unwrap(),
            alphas.iter().map(|&a| PathGain::new(1.0, a).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn equal_gains_quarter_gap() {
        let ws = CoefficientSet::lossless(build_phase_set(4, TAU).unwrap());
        let off = boundary_offsets(&ws).unwrap();
        for d in &off.deltas {
            assert_abs_diff_eq!(*d, FRAC_PI_4, epsilon = 1e-15);
        }
    }

    #[test]
    fn equal_gains_half_angle_over_full_gap_range() {
        for i in 1..200 {
            let omega = TAU * i as f64 / 200.0;
            let set = PhaseShiftSet::from_phases(&[0.0, omega]).unwrap();
            let ws = CoefficientSet::from_gains(set, vec![0.7, 0.7]).unwrap();
            let off = boundary_offsets(&ws).unwrap();
            let gap_before_second = ws.phase_set().gap_before(1);
            assert_abs_diff_eq!(off.deltas[1], gap_before_second / 2.0, epsilon = 1e-12);
            let gap_before_first = ws.phase_set().gap_before(0);
            assert_abs_diff_eq!(off.deltas[0], gap_before_first / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn unequal_gains() {
        // previous gain 1, current 0.5, gap π/2: atan2(0.5, 1)
        let set = PhaseShiftSet::from_phases(&[-FRAC_PI_2, 0.0, FRAC_PI_2]).unwrap();
        let ws = CoefficientSet::from_gains(set, vec![1.0, 0.5, 1.0]).unwrap();
        let off = boundary_offsets(&ws).unwrap();
        assert_abs_diff_eq!(off.deltas[1], 0.463_647_609_000_806_1, epsilon = 1e-15);
        // projections of both neighbours agree on the boundary
        let s = off.s_angles[1];
        assert_abs_diff_eq!(ws.projection(0, s), ws.projection(1, s), epsilon = 1e-15);
    }

    #[test]
    fn rejects_zero_gain() {
        let set = build_phase_set(3, TAU).unwrap();
        let ws = CoefficientSet::from_gains(set, vec![1.0, 0.0, 1.0]).unwrap();
        assert_eq!(boundary_offsets(&ws), Err(Error::ZeroGain(1)));
        assert!(build_boundary_schedule(&channel(&[0.1]), &ws).is_err());
    }

    #[test]
    fn single_element_has_k_boundaries() {
        let ws = CoefficientSet::lossless(build_phase_set(5, TAU).unwrap());
        let set = build_boundary_schedule(&channel(&[0.3]), &ws).unwrap();
        assert_eq!(set.len(), 5);
        assert!(set.schedule.windows(2).all(|w| w[0].angle < w[1].angle));
        let mut want: Vec<f64> = set.offsets.s_angles.iter().map(|s| wrap_2pi(0.3 + s)).collect();
        want.sort_by(f64::total_cmp);
        for (c, w) in set.schedule.iter().zip(want) {
            assert_eq!(c.angle, w);
        }
    }

    #[test]
    fn identical_elements_merge() {
        let ws = CoefficientSet::lossless(build_phase_set(4, TAU).unwrap());
        let set = build_boundary_schedule(&channel(&[0.7, 0.7]), &ws).unwrap();
        assert_eq!(set.len(), 4);
        assert!(set.schedule.iter().all(|c| c.updates.len() == 2));
    }

    #[test]
    fn wrap_point_merges() {
        // K = 2 lossless: boundaries at α + 0 and α + π; α = -π puts one at 0
        // and the other at π, while α slightly below 0 puts one just under 2π.
        let ws = CoefficientSet::lossless(build_phase_set(2, PI).unwrap());
        let set = build_boundary_schedule(&channel(&[-1e-14, 0.0]), &ws).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.schedule[0].updates.len(), 2);
    }
}
