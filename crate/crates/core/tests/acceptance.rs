//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use risopt::analysis::{approx_ratio_continuous, approx_ratio_uniform, limited_ratio};
use risopt::experiments::{
    generate_channel, run_monte_carlo, Algorithm, ChannelModelConfig, Metric, MonteCarloSetup,
};
use risopt::model::uniform_threshold;
use risopt::optimal::{boundary_offsets, build_boundary_schedule, BoundarySweep};
use risopt::{
    algorithm1_optimize, build_phase_set, exhaustive_search, lemma1_assign, received_power, ChannelInstance,
    CoefficientSet, GainSampling, PathGain, PdaProfile,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn peak_aligned(k: usize, range: f64, beta_min: f64, alpha_r: f64) -> CoefficientSet {
    let profile = PdaProfile::new(beta_min, alpha_r, FRAC_PI_2).unwrap();
    CoefficientSet::build(build_phase_set(k, range).unwrap(), profile, GainSampling::PeakAligned).unwrap()
}

fn oracle_optimality() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut uncertified = 0;
    for (i, beta_min) in [0.2, 0.5, 0.8].into_iter().enumerate() {
        let ws = peak_aligned(4, TAU, beta_min, 1.6);
        if !ws.locally_convex() {
            uncertified += 1;
        }
        let mut setup = MonteCarloSetup::new(
            ChannelModelConfig::rayleigh(10, 1000 + i as u64),
            ws,
            vec![Algorithm::Alg1, Algorithm::Exhaustive],
            1000,
        );
        setup.exhaustive_budget = 1 << 20;
        let res = run_monte_carlo(&setup).unwrap();
        let alg1 = res.values(Algorithm::Alg1, Metric::Power);
        let oracle = res.values(Algorithm::Exhaustive, Metric::Power);
        for (a, o) in alg1.iter().zip(&oracle) {
            worst = worst.max((o - a).abs() / o);
        }
    }
    Outcome {
        pass: worst <= 1e-9 && uncertified == 0,
        detail: format!("max relative gap {worst:.3e} over 3x1000 trials"),
    }
}

const LOSS_TABLE_DB: [(f64, [f64; 5]); 3] = [
    (0.2, [8.359, 7.252, 6.395, 5.906, 5.731]),
    (0.5, [6.421, 4.712, 3.918, 3.416, 3.242]),
    (0.8, [4.838, 2.749, 1.993, 1.485, 1.309]),
];

fn loss_table() -> Outcome {
    let mut worst: f64 = 0.0;
    for (beta_min, row) in LOSS_TABLE_DB {
        for (k, want) in [2, 3, 4, 6, 8].into_iter().zip(row) {
            let got = approx_ratio_uniform(&peak_aligned(k, TAU, beta_min, 1.6)).unwrap().loss_db;
            worst = worst.max((got - want).abs());
        }
    }
    Outcome {
        pass: worst <= 0.002,
        detail: format!("max deviation {worst:.5} dB over 15 entries"),
    }
}

fn constant_gain_half_angle() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 2..=8 {
        for range in [FRAC_PI_2, PI, 1.5 * PI, TAU] {
            let ws = peak_aligned(k, range, 1.0, 1.6);
            let off = boundary_offsets(&ws).unwrap();
            let set = ws.phase_set();
            for (i, d) in off.deltas.iter().enumerate() {
                worst = worst.max((d - set.gap_before(i) / 2.0).abs());
            }
        }
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("max |Δ_k − ω/2| {worst:.3e} over K=2..8, 4 ranges"),
    }
}

/// Random convex coefficient set and channel with N ≤ 64, K ≤ 8.
fn random_instance(rng: &mut ChaCha8Rng) -> (ChannelInstance, CoefficientSet) {
    let ws = loop {
        let k = rng.random_range(2..=8);
        let range = if rng.random_bool(0.5) { TAU } else { rng.random_range(0.2..TAU) };
        let ws = if rng.random_bool(0.2) {
            CoefficientSet::lossless(build_phase_set(k, range).unwrap())
        } else {
            peak_aligned(k, range, rng.random_range(0.05..=1.0), rng.random_range(0.5..3.0))
        };
        if ws.locally_convex() {
            break ws;
        }
    };
    let n = rng.random_range(1..=64);
    let cfg = ChannelModelConfig::rayleigh(n, rng.random());
    // every tenth instance has colliding element angles
    let mut ch = generate_channel(&cfg, 0).unwrap();
    if rng.random_ratio(1, 10) && n > 1 {
        let a = ch.cascaded[0].alpha;
        for h in ch.cascaded.iter_mut().step_by(2) {
            h.alpha = a;
        }
    }
    (ch, ws)
}

const PROPERTY_INSTANCES: usize = 10_000;

struct SweepAudit {
    bound_ok: usize,
    closure_ok: usize,
    max_incremental_err: f64,
    additions_ok: usize,
}

fn sweep_audit() -> SweepAudit {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_401);
    let mut audit = SweepAudit {
        bound_ok: 0,
        closure_ok: 0,
        max_incremental_err: 0.0,
        additions_ok: 0,
    };
    for _ in 0..PROPERTY_INSTANCES {
        let (ch, ws) = random_instance(&mut rng);
        let (n, k) = (ch.n(), ws.k());
        let boundaries = build_boundary_schedule(&ch, &ws).unwrap();
        if boundaries.len() <= n * k {
            audit.bound_ok += 1;
        }
        let mut sweep = BoundarySweep::new(&ch, &ws, &boundaries);
        let initial = sweep.selections().to_vec();
        let at_zero = lemma1_assign(0.0, &ch, &ws);
        let mut check = |s: &BoundarySweep| {
            let (_, p) = received_power(&ch, &ws, s.selections()).unwrap();
            let err = (s.g().norm_sqr() - p).abs() / p.max(f64::MIN_POSITIVE);
            audit.max_incremental_err = audit.max_incremental_err.max(err);
        };
        check(&sweep);
        while sweep.advance() {
            check(&sweep);
        }
        // with no boundary on zero the sweep starts from lemma1_assign at μ = 0
        let zero_is_interior = boundaries.schedule.first().is_none_or(|c| c.angle > 1e-12)
            && boundaries.schedule.last().is_none_or(|c| c.angle < TAU - 1e-12);
        if sweep.selections() == initial.as_slice() && (!zero_is_interior || initial == at_zero) {
            audit.closure_ok += 1;
        }
        if sweep.vector_additions() <= (n * (2 * k + 1)) as u64 {
            audit.additions_ok += 1;
        }
    }
    audit
}

fn threshold_continuity() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in [2, 3, 4, 8] {
        for beta_min in [0.2, 0.5, 0.8, 1.0] {
            let r = uniform_threshold(k);
            let ws = peak_aligned(k, r, beta_min, 1.6);
            let uniform = approx_ratio_uniform(&ws).unwrap().e_pda;
            let limited = limited_ratio(ws.gains(), r);
            worst = worst.max((uniform - limited).abs());
        }
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("max |limited − uniform| {worst:.3e} at R = 2π(K−1)/K"),
    }
}

fn monte_carlo_convergence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut dominance_violations = 0;
    for (i, beta_min) in [0.2, 0.8].into_iter().enumerate() {
        for k in [2, 3, 4] {
            let ws = peak_aligned(k, TAU, beta_min, 1.6);
            let theory = approx_ratio_uniform(&ws).unwrap().e_pda;
            let setup = MonteCarloSetup::new(
                ChannelModelConfig::rayleigh(1024, 600 + 10 * i as u64 + k as u64),
                ws,
                vec![Algorithm::Alg1, Algorithm::Apq, Algorithm::Eapq],
                2000,
            );
            let res = run_monte_carlo(&setup).unwrap();
            let apq = res.summary(Algorithm::Apq).unwrap().mean_normalized_power;
            worst = worst.max((apq - theory).abs());
            let alg1 = res.values(Algorithm::Alg1, Metric::Power);
            for other in [Algorithm::Apq, Algorithm::Eapq] {
                dominance_violations += alg1
                    .iter()
                    .zip(res.values(other, Metric::Power))
                    .filter(|(a, o)| **a < o * (1.0 - 1e-12))
                    .count();
            }
        }
    }
    Outcome {
        pass: worst <= 0.01 && dominance_violations == 0,
        detail: format!(
            "max |APQ mean − E_PDA(K)| {worst:.4} over 6 settings, {dominance_violations} dominance violations"
        ),
    }
}

fn continuous_limit() -> Outcome {
    let lossless = approx_ratio_continuous(&PdaProfile::new(1.0, 1.6, FRAC_PI_2).unwrap()).e_pda;
    let mut worst_linear: f64 = 0.0;
    for beta_min in [0.0, 0.2, 0.5, 0.8, 1.0] {
        let got = approx_ratio_continuous(&PdaProfile::new(beta_min, 1.0, FRAC_PI_2).unwrap()).e_pda;
        worst_linear = worst_linear.max((got - ((1.0 + beta_min) / 2.0).powi(2)).abs());
    }
    let lossless_err = (lossless - 1.0).abs();
    Outcome {
        pass: lossless_err <= 1e-12 && worst_linear <= 1e-10,
        detail: format!("lossless error {lossless_err:.3e}, α=1 max error {worst_linear:.3e}"),
    }
}

fn report(id: usize, name: &str, outcome: &Outcome, seconds: f64) -> bool {
    let tag = if outcome.pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id}. {name}: {} ({seconds:.1}s)", outcome.detail);
    outcome.pass
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, f64) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed().as_secs_f64())
}

fn main() -> ExitCode {
    // sanity: a single sweep agrees with the oracle before the long runs
    let ws = peak_aligned(4, TAU, 0.2, 1.6);
    let ch = ChannelInstance::new(
        PathGain::new(0.7, 0.3).unwrap(),
        (0..6).map(|i| PathGain::new(1.0, i as f64).unwrap()).collect(),
    )
    .unwrap();
    assert!(
        (algorithm1_optimize(&ch, &ws).unwrap().power - exhaustive_search(&ch, &ws).unwrap().power).abs() < 1e-9
    );

    let mut all = true;
    let (o, t) = timed(oracle_optimality);
    all &= report(1, "oracle optimality", &o, t);
    let (o, t) = timed(loss_table);
    all &= report(2, "large-N loss table", &o, t);
    let (o, t) = timed(constant_gain_half_angle);
    all &= report(3, "constant-gain half-angle boundaries", &o, t);

    let start = Instant::now();
    let audit = sweep_audit();
    let t = start.elapsed().as_secs_f64();
    let structural = Outcome {
        pass: audit.bound_ok == PROPERTY_INSTANCES
            && audit.closure_ok == PROPERTY_INSTANCES
            && audit.max_incremental_err <= 1e-9,
        detail: format!(
            "L ≤ NK on {}/{n}, closure on {}/{n}, max incremental error {:.3e}",
            audit.bound_ok,
            audit.closure_ok,
            audit.max_incremental_err,
            n = PROPERTY_INSTANCES
        ),
    };
    all &= report(4, "sweep structural invariants", &structural, t);

    let (o, t) = timed(threshold_continuity);
    all &= report(5, "threshold continuity", &o, t);
    let (o, t) = timed(monte_carlo_convergence);
    all &= report(6, "Monte-Carlo convergence of APQ", &o, t);
    let (o, t) = timed(continuous_limit);
    all &= report(7, "continuous limit", &o, t);

    let additions = Outcome {
        pass: audit.additions_ok == PROPERTY_INSTANCES,
        detail: format!(
            "additions ≤ N(2K+1) on {}/{} full sweeps",
            audit.additions_ok, PROPERTY_INSTANCES
        ),
    };
    all &= report(8, "vector-addition accounting", &additions, 0.0);

    if all {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
