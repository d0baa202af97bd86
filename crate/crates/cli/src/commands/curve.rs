use std::fs;
use std::path::PathBuf;

use revcurve::curves::{curve_to_csv, learning_curve, McConfig};
use revcurve::learners::parse_learner;
use serde::Deserialize;

use super::{base_seed, fit_summary, load_dist, parse_list, print_fit_summary, write_json};
use crate::cli::CurveArgs;
use crate::failure::{CmdResult, Failure};
use crate::svg::curve_svg;

/// The `--config` file; every field is optional and flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentConfig {
    learner: Option<String>,
    dist: Option<String>,
    grid: Option<Vec<usize>>,
    trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    workers: Option<usize>,
}

pub fn run(args: CurveArgs) -> CmdResult {
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<ExperimentConfig>(&text)
                .map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))?
        }
        None => ExperimentConfig::default(),
    };
    let learner_spec = args
        .learner
        .or(file.learner)
        .ok_or_else(|| Failure::usage("missing --learner"))?;
    let dist_spec = args
        .dist
        .or(file.dist)
        .ok_or_else(|| Failure::usage("missing --dist"))?;
    let grid = match args.grid {
        Some(g) => parse_list::<usize>(&g, "grid")?,
        None => file.grid.ok_or_else(|| Failure::usage("missing --grid"))?,
    };
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] == 0 {
        return Err(Failure::usage("grid must be nonempty, positive and strictly increasing"));
    }
    let trials = args.trials.or(file.trials).unwrap_or(1000);
    if trials == 0 {
        return Err(Failure::usage("trials must be at least 1"));
    }
    let seed = base_seed(args.seed.or(file.seed))?;
    let out = args.out.or(file.out).unwrap_or_else(|| PathBuf::from("curve-out"));
    let workers = args.workers.or(file.workers);

    let learner = parse_learner::<f64>(&learner_spec)?;
    let dist = load_dist(&dist_spec)?;
    let mut mc = McConfig::new(trials, seed);
    if let Some(w) = workers {
        mc = mc.with_workers(w);
    }
    let curve = learning_curve(&learner, &dist, &grid, &mc)?;

    fs::create_dir_all(&out)?;
    fs::write(out.join("curve.csv"), curve_to_csv(&curve))?;
    write_json(&out.join("curve.json"), &curve)?;
    fs::write(out.join("curve.svg"), curve_svg(&curve))?;
    print_fit_summary(&fit_summary(&curve))
}
