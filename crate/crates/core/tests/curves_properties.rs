use proptest::prelude::*;
use revcurve::curves::{
    curve_from_csv, curve_to_csv, delta_eps, estimate_gap, fit_exponential, fit_power,
    learning_curve, CurvePoint, LearningCurve, McConfig,
};
use revcurve::dist::{parse_dist_spec, Distribution, FinitePmf, Variant};
use revcurve::learners::parse_learner;

#[test]
fn gaps_nonnegative_up_to_noise() {
    let pairs = [
        ("erm", "two_point:p=1,p2=3,c=2", 40),
        ("erm", "erm_hard", 64),
        ("structural", "erm_hard", 64),
        ("erm", "uniform01", 100),
        ("capped", "finite:1@0.2,10@0.79,1000@0.01", 100),
        ("truncated", "finite:1@0.2,10@0.79,1000@0.01", 100),
        ("erm", "discrete_no_opt", 50),
        ("erm", "point_mass:v=1", 10),
    ];
    for (l, d, n) in pairs {
        let learner = parse_learner::<f64>(l).unwrap();
        let dist: Distribution = parse_dist_spec(d).unwrap();
        let pt = estimate_gap(&learner, &dist, n, &McConfig::new(2000, 11)).unwrap();
        assert!(pt.mean_gap >= -3.0 * pt.std_err, "{l} on {d}: {pt:?}");
    }
}

#[test]
fn curves_independent_of_worker_count() {
    let learner = parse_learner::<f64>("erm").unwrap();
    let dist: Distribution = parse_dist_spec("uniform01").unwrap();
    let grid = [10, 100, 300];
    let base = learning_curve(&learner, &dist, &grid, &McConfig::new(300, 5).with_workers(1)).unwrap();
    for w in [2, 3, 8] {
        let c = learning_curve(&learner, &dist, &grid, &McConfig::new(300, 5).with_workers(w)).unwrap();
        assert_eq!(curve_to_csv(&c), curve_to_csv(&base));
        assert_eq!(c, base);
    }
}

fn zoo_pmfs() -> Vec<FinitePmf> {
    [
        "two_point:p=1,p2=3,c=2",
        "finite:1@0.2,10@0.79,1000@0.01",
        "point_mass:v=1",
        "erm_hard",
        "discrete_no_opt:depth=500",
    ]
    .into_iter()
    .map(|s| {
        let d: Distribution = parse_dist_spec(s).unwrap();
        match d.variant() {
            Variant::Finite(p) => p.clone(),
            Variant::TailRule(t) => t.table().clone(),
            Variant::Continuous(_) => unreachable!(),
        }
    })
    .collect()
}

#[test]
fn delta_vanishes_with_eps() {
    for pmf in zoo_pmfs() {
        let mut last = f64::INFINITY;
        for k in 1..=6 {
            let d = delta_eps(&pmf, 10f64.powi(-k));
            assert!(d <= last + 1e-15, "{pmf:?} k={k}");
            last = d;
        }
        assert!(last < 1e-3, "{last}");
        assert_eq!(delta_eps(&pmf, 0.0), 0.0);
        let mut prev = 0.0;
        for i in 0..=5 {
            let d = delta_eps(&pmf, i as f64 / 10.0);
            assert!(d >= prev);
            prev = d;
        }
    }
}

fn synthetic(grid: &[usize], gap: impl Fn(f64) -> f64) -> LearningCurve {
    LearningCurve {
        learner: String::new(),
        distribution: String::new(),
        points: grid
            .iter()
            .map(|&n| CurvePoint { n, mean_gap: gap(n as f64), std_err: 0.0, trials: 1 })
            .collect(),
        base_seed: 0,
    }
}

proptest! {
    #[test]
    fn power_fit_recovers_plant(slope in -2.0f64..-0.05, lnc in -3.0f64..3.0) {
        let c = synthetic(&[10, 30, 100, 1000, 5000], |n| (lnc + slope * n.ln()).exp());
        let f = fit_power(&c).unwrap();
        prop_assert!((f.slope_or_rate - slope).abs() < 1e-9);
        prop_assert!((f.intercept - lnc).abs() < 1e-9);
    }

    #[test]
    fn exponential_fit_recovers_plant(rate in -0.5f64..-0.001, lnc in -3.0f64..3.0) {
        let c = synthetic(&[5, 20, 40, 80, 120], |n| (lnc + rate * n).exp());
        let f = fit_exponential(&c).unwrap();
        prop_assert!((f.slope_or_rate - rate).abs() < 1e-9);
        prop_assert!((f.intercept - lnc).abs() < 1e-9);
    }

    #[test]
    fn csv_round_trips(points in prop::collection::vec((any::<f64>(), 0.0f64..1.0), 1..10), seed in any::<u64>()) {
        let points: Vec<CurvePoint> = points
            .into_iter()
            .filter(|(g, _)| g.is_finite())
            .enumerate()
            .map(|(i, (g, s))| CurvePoint { n: 10 * (i + 1), mean_gap: g, std_err: s, trials: 7 })
            .collect();
        let c = LearningCurve { learner: String::new(), distribution: String::new(), points, base_seed: seed };
        prop_assert_eq!(curve_from_csv(&curve_to_csv(&c)).unwrap(), c);
    }
}
