use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::boundaries::{build_boundary_schedule, BoundarySet, GROUPING_TOLERANCE};
use crate::error::Result;
use crate::model::{BeamformingSolution, ChannelInstance, CoefficientSet, SolveStats};

/// For every element, the phase index maximizing `β(θ)·cos(θ + α_n − μ)`.
/// Ties go to the smaller index.
pub fn lemma1_assign(mu: f64, channel: &ChannelInstance, ws: &CoefficientSet) -> Vec<usize> {
    channel
        .cascaded
        .iter()
        .map(|h| ws.best_toward(mu - h.alpha))
        .collect()
}

/// Incremental state of the boundary sweep.
///
/// Starts from the [`lemma1_assign`] assignment inside the arc that wraps through zero
/// and applies one crossing per [`advance`](Self::advance), keeping g up to
/// date with two vector additions per changed element.
pub struct BoundarySweep<'a> {
    boundaries: &'a BoundarySet,
    terms: Vec<Complex64>,
    k: usize,
    selections: Vec<usize>,
    g: Complex64,
    applied: usize,
    additions: u64,
}

impl<'a> BoundarySweep<'a> {
    pub fn new(channel: &ChannelInstance, ws: &CoefficientSet, boundaries: &'a BoundarySet) -> Self {
        let k = ws.k();
        let coeffs = ws.coefficients();
        let terms: Vec<Complex64> = channel
            .cascaded
            .iter()
            .flat_map(|h| {
                let h = h.to_complex();
                coeffs.iter().map(move |w| h * w)
            })
            .collect();
        let cursor = initial_cursor(boundaries);
        let selections = lemma1_assign(cursor, channel, ws);
        let mut g = channel.direct_complex();
        let mut additions = 0;
        for (n, &sel) in selections.iter().enumerate() {
            g += terms[n * k + sel];
            additions += 1;
        }
        Self {
            boundaries,
            terms,
            k,
            selections,
            g,
            applied: 0,
            additions,
        }
    }

    /// Applies the next crossing. Returns `false` once all L crossings (one
    /// full revolution) have been applied.
    pub fn advance(&mut self) -> bool {
        let Some(crossing) = self.boundaries.schedule.get(self.applied) else {
            return false;
        };
        for &(n, k) in &crossing.updates {
            let old = self.selections[n];
            if old == k {
                continue;
            }
            self.g += self.terms[n * self.k + k];
            self.g -= self.terms[n * self.k + old];
            self.additions += 2;
            self.selections[n] = k;
        }
        self.applied += 1;
        true
    }

    pub fn g(&self) -> Complex64 {
        self.g
    }

    pub fn selections(&self) -> &[usize] {
        &self.selections
    }

    pub fn crossings_applied(&self) -> usize {
        self.applied
    }

    pub fn vector_additions(&self) -> u64 {
        self.additions
    }

    /// Open arc `(start, end)` of μ directions the current assignment belongs
    /// to. `start` may be negative for the arc wrapping through zero.
    pub fn arc(&self) -> (f64, f64) {
        arc_after(self.boundaries, self.applied)
    }
}

fn arc_after(boundaries: &BoundarySet, applied: usize) -> (f64, f64) {
    let s = &boundaries.schedule;
    let l = s.len();
    if l == 0 {
        return (0.0, TAU);
    }
    match applied % l {
        0 => (s[l - 1].angle - TAU, s[0].angle),
        a => (s[a - 1].angle, s[a].angle),
    }
}

/// μ = 0 unless a boundary sits on zero, in which case the middle of the arc
/// wrapping through zero.
fn initial_cursor(boundaries: &BoundarySet) -> f64 {
    let s = &boundaries.schedule;
    match (s.first(), s.last()) {
        (Some(first), Some(last)) if first.angle <= GROUPING_TOLERANCE || last.angle >= TAU - GROUPING_TOLERANCE => {
            let start = last.angle - TAU;
            (start + first.angle) / 2.0
        }
        _ => 0.0,
    }
}

/// Best assignment found by the sweep with the arc it was found in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOptimum {
    pub selections: Vec<usize>,
    pub power: f64,
    pub arc: (f64, f64),
    pub stats: SolveStats,
}

/// Runs the sweep over the first L−1 crossings and keeps the largest |g|.
pub fn sweep_optimum(channel: &ChannelInstance, ws: &CoefficientSet) -> Result<SweepOptimum> {
    let boundaries = build_boundary_schedule(channel, ws)?;
    let mut sweep = BoundarySweep::new(channel, ws, &boundaries);
    let mut best = SweepOptimum {
        selections: sweep.selections().to_vec(),
        power: sweep.g().norm_sqr(),
        arc: sweep.arc(),
        stats: SolveStats::default(),
    };
    let crossings = boundaries.len().saturating_sub(1);
    for _ in 0..crossings {
        sweep.advance();
        let power = sweep.g().norm_sqr();
        if power > best.power {
            best.power = power;
            best.selections.copy_from_slice(sweep.selections());
            best.arc = sweep.arc();
        }
    }
    best.stats = SolveStats {
        steps: crossings as u64,
        boundaries: boundaries.len(),
        vector_additions: sweep.vector_additions(),
    };
    Ok(best)
}

/// Globally optimal phase selection by sweeping the decision boundaries.
///
/// The optimum is certified when the coefficient set is locally convex. For
/// other sets the sweep still runs and the result is flagged as uncertified.
pub fn algorithm1_optimize(channel: &ChannelInstance, ws: &CoefficientSet) -> Result<BeamformingSolution> {
    if !ws.locally_convex() {
        log::warn!("coefficient set is not locally convex; sweep result is not certified optimal");
    }
    let best = sweep_optimum(channel, ws)?;
    let mut solution = BeamformingSolution::evaluate(channel, ws, best.selections)?;
    solution.certified_optimal = ws.locally_convex();
    solution.stats = best.stats;
    Ok(solution)
}
