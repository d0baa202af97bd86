use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dist::FinitePmf;
use crate::empirical::EmpiricalDist;
use crate::error::{Error, Result};
use crate::learners::Learner;
use crate::scalar::Real;

/// Exact `opt - E[rev(t_n)]` for a deterministic learner on a finite PMF,
/// by summing over every multinomial count vector of `n` draws.
///
/// Only usable for small supports: the number of count vectors is
/// `C(n + m - 1, m - 1)` and must not exceed `max_outcomes`.
pub fn exact_expected_gap<T, L>(
    learner: &L,
    pmf: &FinitePmf<T>,
    n: usize,
    max_outcomes: u64,
) -> Result<f64>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    if !learner.is_deterministic() {
        return Err(Error::Domain("exact enumeration needs a deterministic learner".into()));
    }
    if n == 0 {
        return Err(Error::Domain("sample size must be at least 1".into()));
    }
    let m = pmf.len();
    let outcomes = binomial_u64(n + m - 1, m - 1);
    if outcomes.is_none_or(|c| c > max_outcomes) {
        return Err(Error::Domain(format!(
            "{m} atoms and n = {n} give more than {max_outcomes} outcomes"
        )));
    }
    let ln_fact: Vec<f64> = std::iter::once(0.0)
        .chain((1..=n).scan(0.0, |acc, k| {
            *acc += (k as f64).ln();
            Some(*acc)
        }))
        .collect();
    let ln_mass: Vec<f64> = pmf.atoms().iter().map(|a| a.1.as_f64().ln()).collect();
    let prices: Vec<T> = pmf.prices().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let opt = pmf.optimum().0;
    let mut counts = vec![0usize; m];
    // Summing per-outcome regret avoids the cancellation in opt - E[rev].
    let mut regret = 0.0;
    let mut err = None;
    compositions(&mut counts, 0, n, &mut |counts| {
        if err.is_some() {
            return;
        }
        let ln_p = ln_fact[n]
            + counts
                .iter()
                .zip(&ln_mass)
                .map(|(&c, &lm)| if c == 0 { 0.0 } else { c as f64 * lm - ln_fact[c] })
                .sum::<f64>();
        let values: Vec<T> = counts
            .iter()
            .zip(&prices)
            .flat_map(|(&c, &p)| std::iter::repeat_n(p, c))
            .collect();
        let decided = EmpiricalDist::from_values(values)
            .and_then(|e| learner.decide_sorted(&e, &mut rng));
        match decided {
            Ok(price) if price >= T::zero() => {
                regret += ln_p.exp() * (opt - pmf.revenue(price)).as_f64();
            }
            Ok(price) => err = Some(Error::Domain(format!("learner posted {price}"))),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(regret)
}

fn compositions(counts: &mut [usize], at: usize, left: usize, visit: &mut dyn FnMut(&[usize])) {
    if at + 1 == counts.len() {
        counts[at] = left;
        visit(counts);
        return;
    }
    for c in 0..=left {
        counts[at] = c;
        compositions(counts, at + 1, left - c, visit);
    }
}

fn binomial_u64(n: usize, k: usize) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::BuiltinLearner;

    #[test]
    fn matches_hand_computation() {
        // mass 1/3 at 1, 2/3 at 3; ERM posts 1 iff #3s <= n/3.
        let pmf = FinitePmf::new(vec![(1.0, 1.0 / 3.0), (3.0, 2.0 / 3.0)]).unwrap();
        let gap = exact_expected_gap(&BuiltinLearner::erm(), &pmf, 2, 1000).unwrap();
        // n = 2: posts 1 only when both draws are 1 (prob 1/9), losing 2 - 1.
        assert!((gap - 1.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn binomial_counts() {
        assert_eq!(binomial_u64(5, 2), Some(10));
        assert_eq!(binomial_u64(201, 1), Some(201));
    }
}
