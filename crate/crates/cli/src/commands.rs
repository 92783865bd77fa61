use std::f64::consts::{FRAC_PI_2, TAU};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use risopt::analysis::{approx_ratio, approx_ratio_continuous, approx_ratio_uniform, loss_db_decomposition};
use risopt::experiments::{
    run_monte_carlo, solve, Algorithm, ChannelModelConfig, Execution, ExperimentConfig, MonteCarloSetup,
};
use risopt::optimal::boundary_offsets;
use risopt::{build_phase_set, ChannelInstance, CoefficientSet, GainSampling, PdaProfile};
use serde_json::{json, Value};

use crate::output::{emit, num, opt, sink, write_json, Format, Table};
use crate::{
    AlgorithmArg, Cli, CoefficientArgs, Command, LossTableArgs, MonteCarloArgs, RatiosArgs, Sampling, SolveArgs,
    ValidateArgs,
};

/// Relative gap above which `validate` reports a failure.
const GAP_TOLERANCE: f64 = 1e-9;

pub enum Status {
    Success,
    ValidationFailed,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Success => ExitCode::SUCCESS,
            Status::ValidationFailed => ExitCode::from(1),
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    meta: Value,
}

impl Ctx<'_> {
    fn angle_in(&self, x: f64) -> f64 {
        if self.cli.degrees {
            x.to_radians()
        } else {
            x
        }
    }

    fn angle_out(&self, x: f64) -> Value {
        num(if self.cli.degrees { x.to_degrees() } else { x })
    }

    fn emit(&self, table: &Table) -> Result<()> {
        emit(table, self.cli.format, self.cli.output.as_deref(), &self.meta)
    }

    fn profile(&self, beta_min: f64, alpha_r: f64, phi_r: Option<f64>) -> Result<PdaProfile> {
        let phi_r = phi_r.map_or(FRAC_PI_2, |p| self.angle_in(p));
        Ok(PdaProfile::new(beta_min, alpha_r, phi_r)?)
    }

    fn coefficients(&self, k: usize, range: Option<f64>, profile: PdaProfile, sampling: Sampling) -> Result<CoefficientSet> {
        let range = range.map_or(TAU, |r| self.angle_in(r));
        let sampling = match sampling {
            Sampling::PeakAligned => GainSampling::PeakAligned,
            Sampling::Profile => GainSampling::Profile,
        };
        Ok(CoefficientSet::build(build_phase_set(k, range)?, profile, sampling)?)
    }

    fn coefficient_args(&self, a: &CoefficientArgs) -> Result<CoefficientSet> {
        let profile = self.profile(a.beta_min, a.alpha_r, a.phi_r)?;
        self.coefficients(a.k, a.range, profile, a.sampling)
    }
}

pub fn run(cli: &Cli) -> Result<Status> {
    let meta = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "invocation": cli,
    });
    let mut ctx = Ctx { cli, meta };
    match &cli.command {
        Command::Solve(a) => cmd_solve(&ctx, a),
        Command::Validate(a) => cmd_validate(&ctx, a),
        Command::LossTable(a) => cmd_loss_table(&ctx, a),
        Command::Montecarlo(a) => cmd_montecarlo(&mut ctx, a),
        Command::Boundaries(a) => cmd_boundaries(&ctx, a),
        Command::Ratios(a) => cmd_ratios(&ctx, a),
    }
}

fn algorithm(a: AlgorithmArg) -> Algorithm {
    match a {
        AlgorithmArg::Alg1 => Algorithm::Alg1,
        AlgorithmArg::Apq => Algorithm::Apq,
        AlgorithmArg::Eapq => Algorithm::Eapq,
        AlgorithmArg::Exhaustive => Algorithm::Exhaustive,
    }
}

pub fn read_instance(path: &Path) -> Result<ChannelInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("invalid instance file {}", path.display()))
}

fn cmd_solve(ctx: &Ctx, a: &SolveArgs) -> Result<Status> {
    let channel = read_instance(&a.instance)?;
    let ws = ctx.coefficient_args(&a.coefficients)?;
    let alg = algorithm(a.algorithm);
    let sol = solve(alg, &channel, &ws, a.budget)?;
    let mut table = Table::new([
        "algorithm",
        "n",
        "k",
        "power",
        "snr_boost",
        "normalized_power",
        "steps",
        "vector_additions",
        "certified_optimal",
        "selections",
        "phases",
    ]);
    table.push(vec![
        json!(alg.name()),
        json!(channel.n()),
        json!(ws.k()),
        num(sol.power),
        opt(sol.snr_boost),
        num(sol.normalized_power(&channel)),
        json!(sol.stats.steps),
        json!(sol.stats.vector_additions),
        json!(sol.certified_optimal),
        json!(sol.selections),
        Value::Array(sol.phases.iter().map(|&p| ctx.angle_out(p)).collect()),
    ]);
    ctx.emit(&table)?;
    Ok(Status::Success)
}

fn cmd_validate(ctx: &Ctx, a: &ValidateArgs) -> Result<Status> {
    let ws = ctx.coefficient_args(&a.coefficients)?;
    let certified = ws.locally_convex();
    let evaluations = (ws.k() as f64).powi(a.n as i32);
    if evaluations > a.budget as f64 {
        bail!(
            "exhaustive search needs {}^{} = {evaluations:.3e} evaluations, over the budget of {}",
            ws.k(),
            a.n,
            a.budget
        );
    }
    let setup = MonteCarloSetup {
        exhaustive_budget: a.budget,
        ..MonteCarloSetup::new(
            ChannelModelConfig::rayleigh(a.n, a.seed),
            ws,
            vec![Algorithm::Alg1, Algorithm::Exhaustive],
            a.trials,
        )
    };
    let res = run_monte_carlo(&setup)?;
    let mut table = Table::new(["trial", "alg1_power", "exhaustive_power", "relative_gap"]);
    let mut gaps = Vec::with_capacity(a.trials as usize);
    for pair in res.records.chunks(2) {
        let (p, o) = (pair[0].power, pair[1].power);
        let gap = if o > 0.0 { (o - p).abs() / o } else { (o - p).abs() };
        gaps.push(gap);
        table.push(vec![json!(pair[0].trial), num(p), num(o), num(gap)]);
    }
    let max_gap = gaps.iter().copied().fold(0.0, f64::max);
    let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let failed = certified && max_gap > GAP_TOLERANCE;
    let summary = json!({
        "trials": a.trials,
        "max_gap": num(max_gap),
        "mean_gap": num(mean_gap),
        "locally_convex": certified,
        "passed": !failed,
    });
    match ctx.cli.format {
        Format::Csv => {
            table.write_csv(sink(ctx.cli.output.as_deref())?)?;
            eprintln!("trials {}  max gap {max_gap:e}  mean gap {mean_gap:e}  locally convex {certified}", a.trials);
        }
        Format::Json => write_json(
            sink(ctx.cli.output.as_deref())?,
            &ctx.meta,
            json!({ "trials": table.to_json(), "summary": summary }),
        )?,
    }
    if !certified {
        log::warn!("coefficient set is not locally convex; gaps are reported but not enforced");
    }
    Ok(if failed { Status::ValidationFailed } else { Status::Success })
}

fn cmd_loss_table(ctx: &Ctx, a: &LossTableArgs) -> Result<Status> {
    let mut table = Table::new([
        "beta_min",
        "k",
        "loss_db",
        "e_pda",
        "gain_loss_db",
        "quantization_loss_db",
    ]);
    for &beta_min in &a.beta_min {
        let profile = ctx.profile(beta_min, a.alpha_r, a.phi_r)?;
        for &k in &a.k {
            let ws = ctx.coefficients(k, None, profile, a.sampling)?;
            let report = approx_ratio_uniform(&ws)?;
            let split = loss_db_decomposition(&ws)?;
            table.push(vec![
                num(beta_min),
                json!(k),
                num(report.loss_db),
                num(report.e_pda),
                num(split.gain_loss_db),
                num(split.quantization_loss_db),
            ]);
        }
    }
    ctx.emit(&table)?;
    Ok(Status::Success)
}

fn aggregate_path(a: &MonteCarloArgs, output: Option<&Path>) -> Option<PathBuf> {
    a.aggregate
        .clone()
        .or_else(|| output.map(|p| p.with_extension("aggregate.csv")))
}

fn cmd_montecarlo(ctx: &mut Ctx, a: &MonteCarloArgs) -> Result<Status> {
    let text = fs::read_to_string(&a.config).with_context(|| format!("cannot read {}", a.config.display()))?;
    let mut config =
        ExperimentConfig::from_json(&text).with_context(|| format!("invalid config file {}", a.config.display()))?;
    if a.sequential {
        config.execution = Execution::Sequential;
    }
    let settings = config.settings()?;
    ctx.meta["config"] = serde_json::to_value(&config)?;

    let mut records = Table::new([
        "setting",
        "n",
        "k",
        "r",
        "beta_min",
        "trial",
        "algorithm",
        "power",
        "snr_boost",
        "normalized_power",
        "steps",
    ]);
    let mut columns: Vec<String> = [
        "setting",
        "n",
        "k",
        "r",
        "beta_min",
        "algorithm",
        "trials",
        "mean_power",
        "mean_snr_boost",
        "mean_normalized_power",
        "mean_steps",
        "theory_ratio",
    ]
    .map(String::from)
    .to_vec();
    columns.extend(config.percentiles.iter().map(|p| format!("p{p}")));
    columns.extend(config.cdf_grid.iter().map(|x| format!("cdf_{x}")));
    let mut aggregates = Table::new(columns);

    for (idx, s) in settings.iter().enumerate() {
        let res = run_monte_carlo(&s.setup).with_context(|| {
            format!("setting {idx} (N={}, K={}, R={}, beta_min={})", s.n, s.k, s.range, s.beta_min)
        })?;
        let head = [json!(idx), json!(s.n), json!(s.k), ctx.angle_out(s.range), num(s.beta_min)];
        for r in &res.records {
            let mut row = head.to_vec();
            row.extend([
                json!(r.trial),
                json!(r.algorithm.name()),
                num(r.power),
                opt(r.snr_boost),
                num(r.normalized_power),
                json!(r.steps),
            ]);
            records.push(row);
        }
        let theory = approx_ratio(&s.setup.coefficients).ok().map(|r| r.e_pda);
        for summary in res.summaries() {
            let alg = summary.algorithm;
            let mut row = head.to_vec();
            row.extend([
                json!(alg.name()),
                json!(summary.trials),
                num(summary.mean_power),
                opt(summary.mean_snr_boost),
                num(summary.mean_normalized_power),
                num(summary.mean_steps),
                opt(theory),
            ]);
            for &p in &config.percentiles {
                row.push(opt(res.percentile(alg, config.cdf_metric, p).ok()));
            }
            row.extend(res.cdf(alg, config.cdf_metric, &config.cdf_grid).into_iter().map(num));
            aggregates.push(row);
        }
    }

    let output = ctx.cli.output.as_deref();
    match ctx.cli.format {
        Format::Json => write_json(
            sink(output)?,
            &ctx.meta,
            json!({ "records": records.to_json(), "aggregates": aggregates.to_json() }),
        )?,
        Format::Csv => {
            records.write_csv(sink(output)?)?;
            match aggregate_path(a, output) {
                Some(p) => aggregates.write_csv(sink(Some(&p))?)?,
                None => aggregates.write_csv(std::io::stderr().lock())?,
            }
        }
    }
    Ok(Status::Success)
}

fn cmd_boundaries(ctx: &Ctx, a: &CoefficientArgs) -> Result<Status> {
    let ws = ctx.coefficient_args(a)?;
    let off = boundary_offsets(&ws)?;
    let mut table = Table::new(["k", "phase", "gain", "delta", "s"]);
    for k in 0..ws.k() {
        table.push(vec![
            json!(k),
            ctx.angle_out(ws.phase(k)),
            num(ws.gain(k)),
            ctx.angle_out(off.deltas[k]),
            ctx.angle_out(off.s_angles[k]),
        ]);
    }
    ctx.emit(&table)?;
    Ok(Status::Success)
}

fn cmd_ratios(ctx: &Ctx, a: &RatiosArgs) -> Result<Status> {
    let ranges: Vec<Option<f64>> = if a.range.is_empty() {
        vec![None]
    } else {
        a.range.iter().copied().map(Some).collect()
    };
    let mut table = Table::new(["k", "r", "beta_min", "regime", "e_pda", "loss_db"]);
    for &beta_min in &a.beta_min {
        let profile = ctx.profile(beta_min, a.alpha_r, a.phi_r)?;
        for &k in &a.k {
            for &r in &ranges {
                let ws = ctx.coefficients(k, r, profile, a.sampling)?;
                let report = approx_ratio(&ws)?;
                table.push(vec![
                    json!(k),
                    ctx.angle_out(ws.phase_set().range()),
                    num(beta_min),
                    serde_json::to_value(report.regime)?,
                    num(report.e_pda),
                    num(report.loss_db),
                ]);
            }
        }
        let cont = approx_ratio_continuous(&profile);
        table.push(vec![
            Value::Null,
            Value::Null,
            num(beta_min),
            serde_json::to_value(cont.regime)?,
            num(cont.e_pda),
            num(cont.loss_db),
        ]);
    }
    ctx.emit(&table)?;
    Ok(Status::Success)
}
