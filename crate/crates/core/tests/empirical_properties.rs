use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use revcurve::dist::{parse_dist_spec, Distribution};
use revcurve::empirical::{dkw_bound, empirical_revenue, sup_cdf_deviation, EmpiricalDist};
use revcurve::learners::candidate_set;

fn sample_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((1u32..400).prop_map(|k| k as f64 / 8.0), 1..40)
}

proptest! {
    #[test]
    fn empirical_revenue_peaks_at_a_candidate(values in sample_strategy(), cap in 0.1f64..60.0) {
        let e = EmpiricalDist::from_values(values).unwrap();
        let best = candidate_set(&e, cap)
            .into_iter()
            .map(|v| e.revenue(v))
            .fold(f64::NEG_INFINITY, f64::max);
        for k in 0..=600 {
            let p = k as f64 * cap / 600.0;
            prop_assert!(empirical_revenue(&e, p).unwrap() <= best + 1e-12);
        }
    }

    #[test]
    fn scaled_revenue_counts_buyers(values in sample_strategy(), p in 0.01f64..60.0) {
        let e = EmpiricalDist::from_values(values).unwrap();
        let units = e.revenue(p) * e.n() as f64 / p;
        prop_assert!((units - units.round()).abs() < 1e-9);
    }
}

#[test]
fn dkw_holds_empirically() {
    let d: Distribution = parse_dist_spec("uniform01").unwrap();
    let (n, trials) = (200, 1000);
    let devs: Vec<f64> = (0..trials)
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(77 + t as u64);
            let e = EmpiricalDist::new(&d.sample(&mut rng, n)).unwrap();
            sup_cdf_deviation(&e, &d)
        })
        .collect();
    for eps in [0.05, 0.1] {
        let bound = dkw_bound(n, eps).unwrap().min(1.0);
        let frac = devs.iter().filter(|&&v| v > eps).count() as f64 / trials as f64;
        let slack = 3.0 * (bound * (1.0 - bound) / trials as f64).sqrt();
        assert!(frac <= bound + slack, "eps {eps}: {frac} > {bound} + {slack}");
    }
}
