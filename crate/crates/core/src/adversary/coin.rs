use rand::RngCore;
use rand_distr::{Binomial, Distribution as _};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinGameResult {
    pub p: f64,
    pub gamma: f64,
    pub c: f64,
    pub n: u64,
    pub trials: usize,
    pub error_rate: f64,
    /// Binomial standard error of `error_rate`.
    pub std_err: f64,
    /// Exact error probability of the same decision rule.
    pub oracle_error: f64,
}

/// `n = ceil(c·p/γ²)`, ignoring rounding noise just above an integer.
pub fn coin_sample_size(p: f64, gamma: f64, c: f64) -> Result<u64> {
    if !(gamma > 0.0 && gamma < p && p + gamma < 1.0) {
        return Err(Error::Domain(format!(
            "need 0 < gamma < p and p + gamma < 1 (p = {p}, gamma = {gamma})"
        )));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain(format!("c must be positive, got {c}")));
    }
    let raw = c * p / (gamma * gamma);
    let rounded = raw.round();
    let n = if (raw - rounded).abs() <= 1e-9 * raw.max(1.0) {
        rounded
    } else {
        raw.ceil()
    };
    if !(1.0..=1e15).contains(&n) {
        return Err(Error::Domain(format!("sample size {n} out of range")));
    }
    Ok(n as u64)
}

/// Likelihood-ratio decision between `Bernoulli(p - γ)` and
/// `Bernoulli(p + γ)` from `k` heads in `n` tosses; ties go to `-1`.
pub fn coin_decision(k: u64, n: u64, p: f64, gamma: f64) -> Sign {
    let up = ((p + gamma) / (p - gamma)).ln();
    let down = ((1.0 - p + gamma) / (1.0 - p - gamma)).ln();
    if k as f64 * up > (n - k) as f64 * down {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Exact error probability of [`coin_decision`] under a uniform prior on
/// the sign, summing the two binomial PMFs term by term.
pub fn coin_oracle_error(p: f64, gamma: f64, n: u64) -> f64 {
    let mut wrong = 0.0;
    for (sigma, theta) in [(Sign::Minus, p - gamma), (Sign::Plus, p + gamma)] {
        let ratio = (theta / (1.0 - theta)).ln();
        let mut log_pmf = n as f64 * (1.0 - theta).ln();
        for k in 0..=n {
            if k > 0 {
                log_pmf += ((n - k + 1) as f64 / k as f64).ln() + ratio;
            }
            if coin_decision(k, n, p, gamma) != sigma {
                wrong += 0.5 * log_pmf.exp();
            }
        }
    }
    wrong
}

/// Plays the coin-distinguishing game `trials` times: draw the sign
/// uniformly, draw the head count from `Binomial(n, p + σγ)`, decide.
pub fn coin_game(
    p: f64,
    gamma: f64,
    c: f64,
    trials: usize,
    rng: &mut dyn RngCore,
) -> Result<CoinGameResult> {
    let n = coin_sample_size(p, gamma, c)?;
    if trials == 0 {
        return Err(Error::Domain("coin game needs at least 1 trial".into()));
    }
    let minus = Binomial::new(n, p - gamma).map_err(|e| Error::Domain(e.to_string()))?;
    let plus = Binomial::new(n, p + gamma).map_err(|e| Error::Domain(e.to_string()))?;
    let mut errors = 0_usize;
    for _ in 0..trials {
        let sigma = if rng.next_u32() & 1 == 0 {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let k = match sigma {
            Sign::Minus => minus.sample(rng),
            Sign::Plus => plus.sample(rng),
        };
        if coin_decision(k, n, p, gamma) != sigma {
            errors += 1;
        }
    }
    let rate = errors as f64 / trials as f64;
    Ok(CoinGameResult {
        p,
        gamma,
        c,
        n,
        trials,
        error_rate: rate,
        std_err: (rate * (1.0 - rate) / trials as f64).sqrt(),
        oracle_error: coin_oracle_error(p, gamma, n),
    })
}
