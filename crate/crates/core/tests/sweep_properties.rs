use std::f64::consts::{FRAC_PI_2, TAU};

use proptest::prelude::*;
use risopt::optimal::{build_boundary_schedule, sweep_optimum, BoundarySweep};
use risopt::{
    algorithm1_optimize, build_phase_set, exhaustive_search, lemma1_assign, received_power, ChannelInstance,
    CoefficientSet, GainSampling, PathGain, PdaProfile,
};

fn coefficient_set(k: usize, range: f64, beta_min: f64, alpha_r: f64) -> CoefficientSet {
    let profile = PdaProfile::new(beta_min, alpha_r, FRAC_PI_2).unwrap();
    CoefficientSet::build(build_phase_set(k, range).unwrap(), profile, GainSampling::PeakAligned).unwrap()
}

fn channel(direct: (f64, f64), elements: &[(f64, f64)]) -> ChannelInstance {
    ChannelInstance::new(
        PathGain::new(direct.0, direct.1).unwrap(),
        elements.iter().map(|&(b, a)| PathGain::new(b, a).unwrap()).collect(),
    )
    .unwrap()
}

fn convex_set() -> impl Strategy<Value = CoefficientSet> {
    (2usize..=8, prop_oneof![Just(TAU), 0.3..TAU], 0.4..=1.0f64, 0.5..2.5f64)
        .prop_map(|(k, r, b, a)| coefficient_set(k, r, b, a))
        .prop_filter("locally convex", |ws| ws.locally_convex())
}

fn elements(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.05..2.0f64, -3.2..3.2f64), 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn every_arc_holds_the_lemma1_assignment(
        ws in convex_set(),
        els in elements(24),
        direct in (0.0..2.0f64, -3.2..3.2f64),
    ) {
        let ch = channel(direct, &els);
        let boundaries = build_boundary_schedule(&ch, &ws).unwrap();
        let mut sweep = BoundarySweep::new(&ch, &ws, &boundaries);
        loop {
            let (start, end) = sweep.arc();
            if end - start > 1e-9 {
                let mid = (start + end) / 2.0;
                let expected = lemma1_assign(mid, &ch, &ws);
                prop_assert_eq!(sweep.selections(), expected.as_slice());
            }
            if !sweep.advance() {
                break;
            }
        }
    }

    #[test]
    fn full_revolution_closes(ws in convex_set(), els in elements(32)) {
        let ch = channel((1.0, 0.0), &els);
        let boundaries = build_boundary_schedule(&ch, &ws).unwrap();
        let mut sweep = BoundarySweep::new(&ch, &ws, &boundaries);
        let initial = sweep.selections().to_vec();
        while sweep.advance() {}
        prop_assert_eq!(sweep.crossings_applied(), boundaries.len());
        prop_assert_eq!(sweep.selections(), initial.as_slice());
        prop_assert!(boundaries.len() <= ch.n() * ws.k());
    }

    #[test]
    fn incremental_sum_tracks_recomputation(ws in convex_set(), els in elements(40)) {
        let ch = channel((0.5, 1.0), &els);
        let boundaries = build_boundary_schedule(&ch, &ws).unwrap();
        let mut sweep = BoundarySweep::new(&ch, &ws, &boundaries);
        loop {
            let (g, p) = received_power(&ch, &ws, sweep.selections()).unwrap();
            prop_assert!((sweep.g() - g).norm() <= 1e-9 * p.sqrt().max(1.0));
            if !sweep.advance() {
                break;
            }
        }
    }

    #[test]
    fn matches_exhaustive_on_small_instances(
        ws in convex_set(),
        els in elements(6),
        direct in (0.0..2.0f64, -3.2..3.2f64),
    ) {
        prop_assume!(ws.k().pow(els.len() as u32) <= 200_000);
        let ch = channel(direct, &els);
        let opt = algorithm1_optimize(&ch, &ws).unwrap();
        let oracle = exhaustive_search(&ch, &ws).unwrap();
        prop_assert!(opt.certified_optimal);
        prop_assert!((opt.power - oracle.power).abs() <= 1e-9 * oracle.power.max(1e-300));
        let budget = (ch.n() * (2 * ws.k() + 1)) as u64;
        prop_assert!(opt.stats.vector_additions <= budget);
    }
}

#[test]
fn coincident_elements_share_boundaries() {
    let ws = coefficient_set(4, TAU, 0.2, 1.6);
    let ch = channel((1.0, 0.0), &[(1.0, 0.7), (0.4, 0.7)]);
    let boundaries = build_boundary_schedule(&ch, &ws).unwrap();
    assert_eq!(boundaries.len(), 4);
    assert!(boundaries.schedule.iter().all(|c| c.updates.len() == 2));
}

#[test]
fn best_arc_contains_the_optimal_direction() {
    let ws = coefficient_set(3, 2.0, 0.5, 1.6);
    let ch = channel((0.8, -2.0), &[(1.0, 0.4), (0.7, 2.9), (1.3, -1.1), (0.2, 1.8), (0.9, -2.6)]);
    let best = sweep_optimum(&ch, &ws).unwrap();
    let (g, _) = received_power(&ch, &ws, &best.selections).unwrap();
    // the optimum is a fixed point: its own direction reproduces it
    assert_eq!(lemma1_assign(g.arg(), &ch, &ws), best.selections);
    let (start, end) = best.arc;
    let mu = g.arg().rem_euclid(TAU);
    let inside = |m: f64| m > start && m < end;
    assert!(inside(mu) || inside(mu - TAU));
}
