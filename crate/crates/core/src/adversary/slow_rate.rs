use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::curves::{expected_revenue, parallel_map, McConfig};
use crate::dist::{Distribution, FinitePmf};
use crate::empirical::Sample;
use crate::error::{Error, Result};
use crate::learners::{run_learner, Learner};
use crate::scalar::Real;
use crate::seed;

use super::RateFn;

/// Failure probability of the one-sided quantile margin.
pub const QUANTILE_DELTA: f64 = 1e-3;

/// An upper bound on a learner's output on one dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutputBound<T> {
    pub price: T,
    /// Empirical quantile level used; 1 means the maximum observed output.
    pub quantile_level: f64,
    /// One-sided DKW margin added to the nominal level.
    pub margin: f64,
    pub invocations: usize,
}

/// Bounds `t(dataset)` so that `Pr[t > price] <= confidence_mass` holds up
/// to the reported quantile error.
///
/// Deterministic learners are called once and the bound is exact.
/// Randomized learners are run `trials` times and the empirical
/// `1 - confidence_mass/2` quantile is taken after raising the level by
/// `sqrt(ln(2/δ) / (2·trials))` with `δ = QUANTILE_DELTA`.
pub fn bound_learner_output<T, L>(
    learner: &L,
    dataset: &Sample<T>,
    confidence_mass: f64,
    trials: usize,
    rng: &mut dyn RngCore,
) -> Result<OutputBound<T>>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    if !(confidence_mass > 0.0 && confidence_mass < 1.0) {
        return Err(Error::Domain(format!(
            "confidence mass {confidence_mass} is outside (0, 1)"
        )));
    }
    if learner.is_deterministic() {
        let price = run_learner(learner, dataset.clone(), rng)?;
        return Ok(OutputBound {
            price,
            quantile_level: 1.0,
            margin: 0.0,
            invocations: 1,
        });
    }
    if trials == 0 {
        return Err(Error::Domain("randomized learners need at least 1 trial".into()));
    }
    let mut outputs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let t = run_learner(learner, dataset.clone(), rng)?;
        if t.is_nan() {
            return Err(Error::Learner {
                name: learner.name(),
                reason: "returned NaN".into(),
            });
        }
        outputs.push(t);
    }
    outputs.sort_by(|a, b| a.partial_cmp(b).expect("NaN filtered above"));
    let margin = ((2.0 / QUANTILE_DELTA).ln() / (2.0 * trials as f64)).sqrt();
    let level = (1.0 - confidence_mass / 2.0 + margin).min(1.0);
    let idx = ((level * trials as f64).ceil() as usize).clamp(1, trials) - 1;
    Ok(OutputBound {
        price: outputs[idx],
        quantile_level: level,
        margin,
        invocations: trials,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    /// Levels with more ordered datasets than this are probed on a random
    /// subset of this size.
    pub enumeration_limit: usize,
    /// Learner runs per dataset for randomized learners.
    pub trials: usize,
    /// Total learner invocations allowed over the whole construction.
    pub max_invocations: u64,
    pub base_seed: u64,
    pub workers: Option<usize>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            enumeration_limit: 3125,
            trials: 10_000,
            max_invocations: 50_000_000,
            base_seed: 0,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeStats {
    pub level: usize,
    /// `(level-1)^(level-1)`, saturating.
    pub datasets_total: u64,
    pub datasets_probed: u64,
    /// False when `c` comes from a random subset of datasets and is only a
    /// statistical bound.
    pub exhaustive: bool,
    pub invocations: u64,
    pub confidence_mass: f64,
}

/// Transcript of the adaptive construction: support points `i_j`, tail
/// masses `P_j = Pr[X >= i_j]` and output bounds `c_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlowRateConstruction {
    pub depth: usize,
    pub learner: String,
    /// `R(1..=depth)`.
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    /// `i_1..=i_depth`, with `i_1 = 0`.
    #[serde(rename = "i")]
    pub points: Vec<f64>,
    /// `P_1..=P_depth`, with `P_1 = 1`.
    #[serde(rename = "P")]
    pub tails: Vec<f64>,
    /// `c_1..c_{depth-1}`.
    #[serde(rename = "c")]
    pub bounds: Vec<f64>,
    pub trials_per_dataset: usize,
    pub probe_stats: Vec<ProbeStats>,
}

impl SlowRateConstruction {
    /// `R(j)` for `1 <= j <= depth`.
    pub fn r_at(&self, j: usize) -> f64 {
        self.r[j - 1]
    }

    /// Atom masses `P_j - P_{j+1}`, with the last atom carrying `P_depth`.
    pub fn masses(&self) -> Vec<f64> {
        let k = self.tails.len();
        (0..k)
            .map(|j| self.tails[j] - if j + 1 < k { self.tails[j + 1] } else { 0.0 })
            .collect()
    }

    /// Returns one message per violated invariant, checked to `tol`.
    pub fn check_invariants(&self, tol: f64) -> Vec<String> {
        let mut bad = Vec::new();
        let (i, p) = (&self.points, &self.tails);
        if i.len() != self.depth || p.len() != self.depth || self.bounds.len() + 1 != self.depth {
            bad.push("transcript lengths do not match depth".to_string());
            return bad;
        }
        if i[0] != 0.0 {
            bad.push(format!("i_1 = {} (expected 0)", i[0]));
        }
        if p[0] != 1.0 {
            bad.push(format!("P_1 = {} (expected 1)", p[0]));
        }
        for j in 2..=self.depth {
            let (ij, pj) = (i[j - 1], p[j - 1]);
            let floor = i[j - 2].max(self.bounds[j - 2]);
            if ij <= floor {
                bad.push(format!("level {j}: i_j = {ij} <= max(i_(j-1), c_(j-1)) = {floor}"));
            }
            let r_prev = self.r_at(j - 1);
            let cap = (p[j - 2] / 2.0).min(r_prev / (2.0 * (j - 1) as f64));
            if pj > cap + tol {
                bad.push(format!("level {j}: P_j = {pj} exceeds cap {cap}"));
            }
            let target = 2.0 - r_prev;
            if (ij * pj - target).abs() > tol {
                bad.push(format!("level {j}: i_j * P_j = {} != {target}", ij * pj));
            }
        }
        for (j, m) in self.masses().iter().enumerate() {
            if *m <= 0.0 {
                bad.push(format!("atom {} has mass {m}", j + 1));
            }
        }
        let total: f64 = self.masses().iter().sum();
        if (total - 1.0).abs() > tol {
            bad.push(format!("masses sum to {total}"));
        }
        bad
    }
}

/// Smallest integer strictly above `x`.
fn next_int_above(x: f64) -> f64 {
    x.floor() + 1.0
}

/// Builds the depth-`depth` truncation of the distribution that defeats
/// `learner` at rate `R`.
///
/// Level `j` probes the learner on every ordered dataset of size `j-1` over
/// the support built so far (or a random subset beyond
/// `config.enumeration_limit`), takes `c_{j-1}` as the largest output bound
/// at confidence `R(j-1)/4`, and picks the smallest integer `i_j` with
/// `i_j > i_{j-1}`, `i_j > c_{j-1}` and `(2 - R(j-1)) / i_j <=
/// min(P_{j-1}/2, R(j-1)/(2(j-1)))`.
pub fn build_slow_rate_distribution<T, L>(
    learner: &L,
    rate: &RateFn,
    depth: usize,
    config: &ProbeConfig,
) -> Result<(FinitePmf<T>, SlowRateConstruction)>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    if depth < 2 {
        return Err(Error::Domain(format!("depth must be at least 2, got {depth}")));
    }
    if rate.horizon() < depth {
        return Err(Error::Domain(format!(
            "rate defined up to {} but depth is {depth}",
            rate.horizon()
        )));
    }
    let mut points = vec![0.0_f64];
    let mut tails = vec![1.0_f64];
    let mut bounds = Vec::new();
    let mut stats = Vec::new();
    let mut invocations = 0_u64;
    let per_dataset = if learner.is_deterministic() {
        1
    } else {
        config.trials as u64
    };

    for j in 2..=depth {
        let m = j - 1;
        let total = (m as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        let exhaustive = total <= config.enumeration_limit as u64;
        let probed = if exhaustive {
            total
        } else {
            config.enumeration_limit as u64
        };
        let needed = probed.saturating_mul(per_dataset);
        if invocations.saturating_add(needed) > config.max_invocations {
            return Err(Error::ProbeBudget {
                level: j,
                detail: format!(
                    "{probed} datasets x {per_dataset} runs would exceed the budget of {} invocations",
                    config.max_invocations
                ),
            });
        }
        let r_prev = rate.r(j - 1);
        let conf = r_prev / 4.0;
        let support: Vec<T> = points.iter().map(|&v| T::lit(v)).collect();
        let outputs = parallel_map(config.workers, probed as usize, |d| {
            let mut rng = seed::stream(config.base_seed, j as u64, d as u64);
            let values: Vec<T> = if exhaustive {
                let mut code = d;
                (0..m)
                    .map(|_| {
                        let digit = code % m;
                        code /= m;
                        support[digit]
                    })
                    .collect()
            } else {
                (0..m).map(|_| support[rng.random_range(0..m)]).collect()
            };
            let bound = bound_learner_output(
                learner,
                &Sample::from_values_unchecked(values),
                conf,
                config.trials,
                &mut rng,
            )?;
            Ok(bound.price.as_f64())
        })?;
        let c = outputs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !c.is_finite() {
            return Err(Error::Learner {
                name: learner.name(),
                reason: format!("non-finite output bound {c} at level {j}"),
            });
        }
        invocations += needed;

        let cap = (tails[j - 2] / 2.0).min(r_prev / (2.0 * m as f64));
        let target = 2.0 - r_prev;
        let mut i_j = next_int_above(points[j - 2])
            .max(next_int_above(c))
            .max((target / cap - 1e-9).ceil());
        while target / i_j > cap {
            i_j += 1.0;
        }
        points.push(i_j);
        tails.push(target / i_j);
        bounds.push(c);
        stats.push(ProbeStats {
            level: j,
            datasets_total: total,
            datasets_probed: probed,
            exhaustive,
            invocations: needed,
            confidence_mass: conf,
        });
    }

    let construction = SlowRateConstruction {
        depth,
        learner: learner.name(),
        r: rate.envelope()[..depth].to_vec(),
        points,
        tails,
        bounds,
        trials_per_dataset: per_dataset as usize,
        probe_stats: stats,
    };
    let atoms = construction
        .points
        .iter()
        .zip(construction.masses())
        .map(|(&v, m)| (T::lit(v), T::lit(m)))
        .collect();
    Ok((FinitePmf::new(atoms)?, construction))
}

/// Monte Carlo check of one level of a construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelCheck {
    pub n: usize,
    pub mean_revenue: f64,
    pub std_err: f64,
    /// Gap against the truncated distribution's own optimum `2 - R(depth-1)`.
    pub gap_truncated: f64,
    /// Gap against `reference_opt`, the optimum of the untruncated
    /// construction.
    pub gap: f64,
    /// `R(n)/4`.
    pub target: f64,
}

/// Estimates the learner's revenue at `n = j` for `j = 1..=depth` on the
/// truncated distribution. `reference_opt` is the untruncated optimum
/// `2 - inf_j R(j)`, which the truncation cannot represent.
pub fn validate_construction<T, L>(
    learner: &L,
    pmf: &FinitePmf<T>,
    construction: &SlowRateConstruction,
    reference_opt: f64,
    mc: &McConfig,
) -> Result<Vec<LevelCheck>>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    let dist = Distribution::finite("slow-rate construction", pmf.clone());
    let opt_truncated = pmf.optimum().0.as_f64();
    (1..=construction.depth)
        .map(|j| {
            let rev = expected_revenue(learner, &dist, j, mc)?;
            Ok(LevelCheck {
                n: j,
                mean_revenue: rev.mean_revenue,
                std_err: rev.std_err,
                gap_truncated: opt_truncated - rev.mean_revenue,
                gap: reference_opt - rev.mean_revenue,
                target: construction.r_at(j) / 4.0,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{monotone_envelope, RateSpec};
    use crate::learners::{BuiltinLearner, FnLearner};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reciprocal(depth: usize) -> RateFn {
        monotone_envelope(|j| RateSpec::Reciprocal.eval(j), depth).unwrap()
    }

    #[test]
    fn deterministic_bound_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = Sample::new(vec![1.0, 1.0, 4.0]).unwrap();
        let b = bound_learner_output(&BuiltinLearner::erm(), &s, 0.1, 10, &mut rng).unwrap();
        assert_eq!(b.price, 4.0);
        let b = bound_learner_output(&BuiltinLearner::constant(7.0), &s, 0.9, 10, &mut rng).unwrap();
        assert_eq!(b.price, 7.0);
        assert!(bound_learner_output(&BuiltinLearner::erm(), &s, 1.0, 10, &mut rng).is_err());
    }

    #[test]
    fn randomized_bound_takes_upper_quantile() {
        let coin = FnLearner::new("coin", false, |_: &Sample<f64>, rng: &mut dyn RngCore| {
            if rng.next_u32() & 1 == 0 {
                1.0
            } else {
                10.0
            }
        });
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = Sample::new(vec![1.0]).unwrap();
        let b = bound_learner_output(&coin, &s, 0.25, 10_000, &mut rng).unwrap();
        assert_eq!(b.price, 10.0);
        assert!(b.quantile_level > 0.875 && b.margin > 0.0);
    }

    #[test]
    fn erm_construction_invariants() {
        let rate = reciprocal(6);
        let (pmf, c) = build_slow_rate_distribution::<f64, _>(
            &BuiltinLearner::erm(),
            &rate,
            6,
            &ProbeConfig::default(),
        )
        .unwrap();
        assert!(c.check_invariants(1e-9).is_empty(), "{:?}", c.check_invariants(1e-9));
        assert_eq!(&c.points[..3], &[0.0, 2.0, 12.0]);
        let total: f64 = pmf.atoms().iter().map(|a| a.1).sum();
        assert!((total - 1.0).abs() < 1e-9);
        for j in 2..=6 {
            let rev = pmf.revenue(c.points[j - 1]);
            assert!((rev - (2.0 - c.r_at(j - 1))).abs() < 1e-9);
        }
        let (opt, at) = pmf.optimum();
        assert!((opt - (2.0 - c.r_at(5))).abs() < 1e-9);
        assert_eq!(at, c.points[5]);
        assert!(c.probe_stats.iter().all(|s| s.exhaustive));
        assert_eq!(c.probe_stats[4].datasets_total, 3125);
    }

    #[test]
    fn constant_learner_gap() {
        let rate = reciprocal(5);
        let learner = BuiltinLearner::constant(1.0);
        let (pmf, c) =
            build_slow_rate_distribution::<f64, _>(&learner, &rate, 5, &ProbeConfig::default())
                .unwrap();
        // the learner always earns rev(1) = P_2
        let gap = pmf.optimum().0 - pmf.revenue(1.0);
        assert!((pmf.revenue(1.0) - c.tails[1]).abs() < 1e-12);
        assert!(gap >= c.r_at(4) / 4.0);
        let checks =
            validate_construction(&learner, &pmf, &c, 2.0, &McConfig::new(100, 3)).unwrap();
        assert!((checks[3].gap_truncated - gap).abs() < 1e-12);
    }

    #[test]
    fn budget_and_depth_errors() {
        let rate = reciprocal(6);
        let cfg = ProbeConfig {
            max_invocations: 100,
            ..ProbeConfig::default()
        };
        let err = build_slow_rate_distribution::<f64, _>(&BuiltinLearner::erm(), &rate, 6, &cfg)
            .unwrap_err();
        assert!(matches!(err, Error::ProbeBudget { level: 5, .. }), "{err}");
        assert!(build_slow_rate_distribution::<f64, _>(
            &BuiltinLearner::erm(),
            &rate,
            1,
            &ProbeConfig::default()
        )
        .is_err());
    }

    #[test]
    fn sampled_levels_are_flagged() {
        let rate = reciprocal(5);
        let cfg = ProbeConfig {
            enumeration_limit: 50,
            ..ProbeConfig::default()
        };
        let (_, c) =
            build_slow_rate_distribution::<f64, _>(&BuiltinLearner::erm(), &rate, 5, &cfg).unwrap();
        assert!(c.probe_stats[2].exhaustive);
        assert!(!c.probe_stats[3].exhaustive);
        assert_eq!(c.probe_stats[3].datasets_probed, 50);
        assert!(c.check_invariants(1e-9).is_empty());
    }
}
