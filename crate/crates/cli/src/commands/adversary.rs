use std::fs;

use revcurve::adversary::{
    build_slow_rate_distribution, monotone_envelope, validate_construction, LevelCheck,
    ProbeConfig, ProbeStats, RateSpec,
};
use revcurve::curves::McConfig;
use revcurve::learners::parse_learner;
use serde::Serialize;

use super::{base_seed, write_json};
use crate::cli::AdversaryArgs;
use crate::failure::{CmdResult, Failure};

/// Horizon used to estimate `inf_j R(j)` for the untruncated optimum.
const LIMIT_HORIZON: usize = 1 << 20;

#[derive(Debug, Serialize)]
struct LevelRow {
    #[serde(flatten)]
    check: LevelCheck,
    meets_target: bool,
}

#[derive(Debug, Serialize)]
struct Report {
    learner: String,
    phi: String,
    depth: usize,
    trials: usize,
    base_seed: u64,
    /// `2 - inf_j R(j)`, estimated at the horizon above.
    reference_opt: f64,
    truncated_opt: f64,
    invariant_violations: Vec<String>,
    probe_stats: Vec<ProbeStats>,
    levels: Vec<LevelRow>,
}

pub fn run(args: AdversaryArgs) -> CmdResult {
    if args.depth < 2 {
        return Err(Failure::usage(format!("--depth must be at least 2, got {}", args.depth)));
    }
    if args.trials < 2 {
        return Err(Failure::usage("--trials must be at least 2"));
    }
    let phi: RateSpec = args.phi.parse()?;
    let seed = base_seed(args.seed)?;
    let learner = parse_learner::<f64>(&args.learner)?;
    let rate = monotone_envelope(|j| phi.eval(j), args.depth)?;
    let limit = monotone_envelope(|j| phi.eval(j), LIMIT_HORIZON.max(args.depth))?;
    let reference_opt = 2.0 - limit.r(limit.horizon());

    let config = ProbeConfig {
        enumeration_limit: args.enumeration_limit,
        trials: args.probe_trials,
        max_invocations: args.max_invocations,
        base_seed: seed,
        workers: args.workers,
    };
    let (pmf, construction) = build_slow_rate_distribution(&learner, &rate, args.depth, &config)?;
    fs::create_dir_all(&args.out)?;
    write_json(&args.out.join("construction.json"), &construction)?;

    let mut mc = McConfig::new(args.trials, seed);
    if let Some(w) = args.workers {
        mc = mc.with_workers(w);
    }
    let checks = validate_construction(&learner, &pmf, &construction, reference_opt, &mc)?;
    let report = Report {
        learner: construction.learner.clone(),
        phi: phi.to_string(),
        depth: args.depth,
        trials: args.trials,
        base_seed: seed,
        reference_opt,
        truncated_opt: pmf.optimum().0,
        invariant_violations: construction.check_invariants(1e-9),
        probe_stats: construction.probe_stats.clone(),
        levels: checks
            .into_iter()
            .map(|check| LevelRow {
                meets_target: check.gap >= check.target,
                check,
            })
            .collect(),
    };
    write_json(&args.out.join("report.json"), &report)?;

    println!(
        "support i = {:?}\ntails P = {:?}\nbounds c = {:?}",
        construction.points, construction.tails, construction.bounds
    );
    if report.invariant_violations.is_empty() {
        println!("invariants: all hold");
    } else {
        for v in &report.invariant_violations {
            println!("invariant violated: {v}");
        }
    }
    println!("{:>3} {:>12} {:>12} {:>12} {:>10}  ok", "n", "gap", "std_err", "R(n)/4", "trunc_gap");
    for row in &report.levels {
        let c = &row.check;
        println!(
            "{:>3} {:>12.6} {:>12.6} {:>12.6} {:>10.6}  {}",
            c.n,
            c.gap,
            c.std_err,
            c.target,
            c.gap_truncated,
            if row.meets_target { "yes" } else { "no" }
        );
    }
    Ok(())
}
