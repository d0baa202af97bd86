use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{Distribution, SearchBudget};
use crate::error::{Error, Result};
use crate::learners::{run_learner, Learner};
use crate::scalar::Real;
use crate::seed;

/// Monte Carlo settings shared by every curve point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub trials: usize,
    pub base_seed: u64,
    /// Worker threads; `None` uses the ambient rayon pool. Results never
    /// depend on this value.
    pub workers: Option<usize>,
}

impl McConfig {
    pub fn new(trials: usize, base_seed: u64) -> Self {
        Self {
            trials,
            base_seed,
            workers: None,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: usize,
    pub mean_gap: f64,
    pub std_err: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningCurve {
    pub learner: String,
    pub distribution: String,
    pub points: Vec<CurvePoint>,
    pub base_seed: u64,
}

/// Mean true revenue at one sample size, for distributions whose optimum is
/// infinite and therefore have no gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RevenuePoint {
    pub n: usize,
    pub mean_revenue: f64,
    pub std_err: f64,
    pub trials: usize,
}

/// Maps `f` over `0..count`, in parallel, returning results in index order.
pub fn parallel_map<R, F>(workers: Option<usize>, count: usize, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(usize) -> Result<R> + Sync + Send,
{
    let run = || (0..count).into_par_iter().map(&f).collect::<Result<Vec<R>>>();
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

/// True revenue of the learner's price on each trial, in trial order.
fn trial_revenues<T, L>(
    learner: &L,
    dist: &Distribution<T>,
    n: usize,
    mc: &McConfig,
) -> Result<Vec<f64>>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    if n == 0 {
        return Err(Error::Domain("sample size must be at least 1".into()));
    }
    parallel_map(mc.workers, mc.trials, |t| {
        let mut rng = seed::stream(mc.base_seed, n as u64, t as u64);
        let sample = dist.sample(&mut rng, n);
        let price = run_learner(learner, sample, &mut rng)?;
        Ok(dist.revenue(price)?.as_f64())
    })
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let sd = (ss / (k - 1.0)).sqrt();
    (mean, sd / k.sqrt())
}

/// Estimates `opt - E[rev(t_n)]` by `mc.trials` independent replications.
///
/// Trial `t` at size `n` draws from its own stream seeded by
/// `(base_seed, n, t)`; revenues are summed in trial order, so the result is
/// bit-identical for any worker count.
pub fn estimate_gap<T, L>(
    learner: &L,
    dist: &Distribution<T>,
    n: usize,
    mc: &McConfig,
) -> Result<CurvePoint>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    if mc.trials < 2 {
        return Err(Error::Domain("estimate_gap needs at least 2 trials".into()));
    }
    let opt = dist.optimal_revenue(&SearchBudget::default())?.value.as_f64();
    if opt.is_infinite() {
        return Err(Error::InfiniteOptimum);
    }
    let revenues = trial_revenues(learner, dist, n, mc)?;
    let (mean_rev, std_err) = mean_and_se(&revenues);
    Ok(CurvePoint {
        n,
        mean_gap: opt - mean_rev,
        std_err,
        trials: mc.trials,
    })
}

/// Mean true revenue at size `n`; defined even when the optimum is infinite.
pub fn expected_revenue<T, L>(
    learner: &L,
    dist: &Distribution<T>,
    n: usize,
    mc: &McConfig,
) -> Result<RevenuePoint>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    if mc.trials < 2 {
        return Err(Error::Domain("expected_revenue needs at least 2 trials".into()));
    }
    let revenues = trial_revenues(learner, dist, n, mc)?;
    let (mean_revenue, std_err) = mean_and_se(&revenues);
    Ok(RevenuePoint {
        n,
        mean_revenue,
        std_err,
        trials: mc.trials,
    })
}

pub fn learning_curve<T, L>(
    learner: &L,
    dist: &Distribution<T>,
    grid: &[usize],
    mc: &McConfig,
) -> Result<LearningCurve>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    if grid.is_empty() {
        return Err(Error::Domain("empty sample-size grid".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("sample-size grid must be strictly increasing".into()));
    }
    let points = grid
        .iter()
        .map(|&n| estimate_gap(learner, dist, n, mc))
        .collect::<Result<Vec<_>>>()?;
    Ok(LearningCurve {
        learner: learner.name(),
        distribution: dist.label().to_string(),
        points,
        base_seed: mc.base_seed,
    })
}
