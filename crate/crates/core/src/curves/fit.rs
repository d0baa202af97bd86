use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::LearningCurve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateModel {
    /// `log gap = intercept + slope · log n`
    Power,
    /// `log gap = intercept + rate · n`
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub model: RateModel,
    pub slope_or_rate: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Standard error of `slope_or_rate`; zero for an exact fit, NaN with
    /// only two points.
    pub slope_std_err: f64,
    pub points_used: usize,
}

/// Ordinary least squares of `y` on `x`.
pub fn fit_xy(model: RateModel, xs: &[f64], ys: &[f64]) -> Result<RateFit> {
    let k = xs.len();
    if k < 3 || ys.len() != k {
        return Err(Error::InsufficientData(format!(
            "need at least 3 positive-signal points, have {k}"
        )));
    }
    let kf = k as f64;
    let mx = xs.iter().sum::<f64>() / kf;
    let my = ys.iter().sum::<f64>() / kf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(RateFit {
        model,
        slope_or_rate: slope,
        intercept,
        r_squared,
        slope_std_err: (ss_res / (kf - 2.0) / sxx).sqrt(),
        points_used: k,
    })
}

/// Points whose gap clears three standard errors.
fn signal(curve: &LearningCurve) -> impl Iterator<Item = (f64, f64)> + '_ {
    curve
        .points
        .iter()
        .filter(|p| p.mean_gap > 0.0 && p.mean_gap > 3.0 * p.std_err)
        .map(|p| (p.n as f64, p.mean_gap))
}

/// Least squares of `log gap` on `log n`.
pub fn fit_power(curve: &LearningCurve) -> Result<RateFit> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = signal(curve).map(|(n, g)| (n.ln(), g.ln())).unzip();
    fit_xy(RateModel::Power, &xs, &ys)
}

/// Least squares of `log gap` on `n`.
pub fn fit_exponential(curve: &LearningCurve) -> Result<RateFit> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = signal(curve).map(|(n, g)| (n, g.ln())).unzip();
    fit_xy(RateModel::Exponential, &xs, &ys)
}

/// A fit shows decay when the slope is negative by more than two of its
/// standard errors.
pub fn decay_detected(fit: &RateFit) -> bool {
    let se = if fit.slope_std_err.is_finite() {
        fit.slope_std_err
    } else {
        0.0
    };
    fit.slope_or_rate < 0.0 && fit.slope_or_rate + 2.0 * se < 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::CurvePoint;

    fn synthetic(grid: &[usize], gap: impl Fn(f64) -> f64) -> LearningCurve {
        LearningCurve {
            learner: "synthetic".into(),
            distribution: "synthetic".into(),
            points: grid
                .iter()
                .map(|&n| CurvePoint {
                    n,
                    mean_gap: gap(n as f64),
                    std_err: 0.0,
                    trials: 1,
                })
                .collect(),
            base_seed: 0,
        }
    }

    #[test]
    fn recovers_power_laws() {
        let grid = [10, 100, 1000, 10_000];
        let f = fit_power(&synthetic(&grid, |n| n.powf(-0.5))).unwrap();
        assert!((f.slope_or_rate + 0.5).abs() < 1e-9);
        assert!(f.intercept.abs() < 1e-9);
        assert!((f.r_squared - 1.0).abs() < 1e-9);

        let f = fit_power(&synthetic(&grid, |n| 3.0 / n)).unwrap();
        assert!((f.slope_or_rate + 1.0).abs() < 1e-9);
        assert!((f.intercept - 3.0_f64.ln()).abs() < 1e-9);
        assert!(decay_detected(&f));
    }

    #[test]
    fn recovers_exponentials() {
        let grid = [5, 10, 20, 40];
        let f = fit_exponential(&synthetic(&grid, |n| (-0.2 * n).exp())).unwrap();
        assert!((f.slope_or_rate + 0.2).abs() < 1e-9);
        assert!((f.r_squared - 1.0).abs() < 1e-9);
        let f = fit_exponential(&synthetic(&grid, |n| 5.0 * (-n).exp())).unwrap();
        assert!((f.slope_or_rate + 1.0).abs() < 1e-9);
        assert!((f.intercept - 5.0_f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn filters_noise_and_requires_three_points() {
        let mut c = synthetic(&[10, 100, 1000, 10_000], |n| 1.0 / n);
        c.points[2].std_err = 1.0;
        c.points[3].mean_gap = -1e-4;
        assert!(matches!(fit_power(&c), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn flat_curve_shows_no_decay() {
        let f = fit_power(&synthetic(&[10, 100, 1000], |_| 0.3)).unwrap();
        assert_eq!(f.slope_or_rate, 0.0);
        assert!(!decay_detected(&f));
    }
}
