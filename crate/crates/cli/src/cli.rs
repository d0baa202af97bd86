use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "revcurve", version, about = "Learning-curve experiments for posted-price revenue maximization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate a learning curve and write curve.csv, curve.json and curve.svg.
    Curve(CurveArgs),
    /// Build the slow-rate distribution against a learner and validate it.
    Adversary(AdversaryArgs),
    /// Build and verify both members of a uniform gadget.
    Gadget(GadgetArgs),
    /// Play the coin-distinguishing game.
    Coin(CoinArgs),
    /// Fit power and exponential rates to a curve CSV.
    Fit(FitArgs),
    /// Inspect the distribution zoo.
    Zoo {
        #[command(subcommand)]
        command: ZooCommand,
    },
    /// Serve a built-in learner over the subprocess protocol on stdin/stdout.
    LearnerStdio {
        /// Learner spec, e.g. `erm` or `capped:g=sqrt`.
        spec: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZooCommand {
    /// List distribution names and parameters.
    List,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// JSON experiment config; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Learner spec, e.g. `erm`, `structural`, `subprocess:./my-learner`.
    #[arg(long)]
    pub learner: Option<String>,
    /// Distribution spec (`name:key=value,...`) or a distribution JSON file.
    #[arg(long)]
    pub dist: Option<String>,
    /// Comma-separated, strictly increasing sample sizes.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Base seed; defaults to $REVCURVE_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AdversaryArgs {
    #[arg(long, default_value = "erm")]
    pub learner: String,
    /// Target rate: `1/j`, `j^-a`, `1/ln(j+b)`, `const:v` or a value list.
    #[arg(long, default_value = "1/j")]
    pub phi: String,
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    #[arg(long, default_value = "adversary-out")]
    pub out: PathBuf,
    /// Monte Carlo trials per validation level.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Learner runs per probed dataset for randomized learners.
    #[arg(long, default_value_t = 10_000)]
    pub probe_trials: usize,
    #[arg(long, default_value_t = 3125)]
    pub enumeration_limit: usize,
    #[arg(long, default_value_t = 50_000_000)]
    pub max_invocations: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GadgetArgs {
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub q: f64,
    #[arg(long)]
    pub p: f64,
    /// Separation, or `auto` for min(p, x - x_pq)/50.
    #[arg(long, default_value = "auto")]
    pub gamma: String,
    #[arg(long, default_value = "gadget-out")]
    pub out: PathBuf,
    /// Evenly spaced prices swept on each side, in addition to the atoms.
    #[arg(long, default_value_t = 20_000)]
    pub resolution: usize,
    /// Coin-game trials per constant.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CoinArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub gamma: f64,
    /// Comma-separated sample constants; n = ceil(c·p/gamma²).
    #[arg(long, default_value = "1")]
    pub c: String,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write coin.json here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Curve CSV as written by `curve`.
    #[arg(long)]
    pub csv: PathBuf,
}
