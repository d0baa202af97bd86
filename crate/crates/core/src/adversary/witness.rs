use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::empirical::Sample;
use crate::error::{Error, Result};
use crate::learners::{run_learner, Learner};
use crate::scalar::Real;

/// The member of the two-distribution pair that exhibits the gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Point mass at `p`.
    PointMass,
    /// Mass `q = 1 - c·p/p'` at `p` and the rest at `p'`.
    TwoPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub n: usize,
    /// Fraction of runs on the all-`p` dataset that returned exactly `p`.
    pub a_n: f64,
    pub witness: Witness,
    pub gap: f64,
}

/// For each `n`, estimates `a_n = Pr[t_n(p, ..., p) = p]` and reports the
/// gap the pair forces: `p/2` under the point mass when `a_n <= 1/2`,
/// otherwise `q^n (c - 1) p / 2` under the two-point distribution.
///
/// Deterministic learners are run once per `n`.
pub fn exp_lb_witness<T, L>(
    learner: &L,
    p: T,
    p_high: T,
    c: T,
    grid: &[usize],
    trials: usize,
    rng: &mut dyn RngCore,
) -> Result<Vec<WitnessRow>>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    if !(p > T::zero() && p < p_high && c > T::one() && c * p < p_high) {
        return Err(Error::Domain(format!(
            "need 0 < p < p', c > 1 and c·p < p' (p = {p}, p' = {p_high}, c = {c})"
        )));
    }
    let runs = if learner.is_deterministic() {
        1
    } else {
        trials.max(1)
    };
    let (pf, cf) = (p.as_f64(), c.as_f64());
    let q = 1.0 - cf * pf / p_high.as_f64();
    grid.iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::Domain("sample size must be at least 1".into()));
            }
            let mut hits = 0;
            for _ in 0..runs {
                let sample = Sample::from_values_unchecked(vec![p; n]);
                if run_learner(learner, sample, rng)? == p {
                    hits += 1;
                }
            }
            let a_n = hits as f64 / runs as f64;
            let (witness, gap) = if a_n <= 0.5 {
                (Witness::PointMass, pf / 2.0)
            } else {
                (Witness::TwoPoint, q.powi(n as i32) * (cf - 1.0) * pf / 2.0)
            };
            Ok(WitnessRow {
                n,
                a_n,
                witness,
                gap,
            })
        })
        .collect()
}
