use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use revcurve::empirical::{EmpiricalDist, Sample};
use revcurve::learners::{
    capped_erm, capped_erm_at, erm, parse_learner, structural_erm, truncated_erm, truncation_cap,
    GrowthFn, Learner,
};

fn sample_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((1u32..300).prop_map(|k| k as f64 / 4.0), 1..60)
}

fn distinct_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::btree_set(1u32..3000, 1..40)
        .prop_map(|s| s.into_iter().map(|k| k as f64 / 16.0).collect())
}

proptest! {
    #[test]
    fn learners_ignore_draw_order(values in sample_strategy(), seed in any::<u64>()) {
        let mut shuffled = values.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for spec in ["erm", "truncated", "capped", "structural", "const:2"] {
            let l = parse_learner::<f64>(spec).unwrap();
            let a = l.decide(&Sample::new(values.clone()).unwrap(), &mut rng).unwrap();
            let b = l.decide(&Sample::new(shuffled.clone()).unwrap(), &mut rng).unwrap();
            prop_assert_eq!(a, b, "{}", spec);
        }
    }

    #[test]
    fn caps_are_respected(values in sample_strategy()) {
        let n = values.len();
        let e = EmpiricalDist::from_values(values).unwrap();
        prop_assert!(truncated_erm(&e, n) <= truncation_cap::<f64>(n));
        prop_assert!(capped_erm(&e, n, &GrowthFn::SQRT) <= (n as f64).sqrt());
    }

    #[test]
    fn structural_without_margin_finds_unique_maximizer(values in distinct_strategy()) {
        let e = EmpiricalDist::from_values(values).unwrap();
        let revs: Vec<f64> = e.sorted_values().iter().map(|&v| e.revenue(v)).collect();
        let best = revs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if revs.iter().filter(|&&r| r == best).count() == 1 {
            prop_assert_eq!(structural_erm(&e, 0.0), erm(&e));
        }
    }

    #[test]
    fn structural_is_monotone_in_margin(values in sample_strategy(), f in 0.0f64..0.5, df in 0.0f64..0.5) {
        let e = EmpiricalDist::from_values(values).unwrap();
        prop_assert!(structural_erm(&e, f + df) <= structural_erm(&e, f));
    }
}

#[test]
fn wide_cap_matches_erm() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let n = rand::Rng::random_range(&mut rng, 1..50);
        let values: Vec<f64> = (0..n)
            .map(|_| (rand::Rng::random_range(&mut rng, 1..500) as f64) / 7.0)
            .collect();
        let e = EmpiricalDist::from_values(values).unwrap();
        let top = *e.sorted_values().last().unwrap();
        assert_eq!(capped_erm_at(&e, top), erm(&e));
        assert_eq!(capped_erm_at(&e, top * 3.0), erm(&e));
    }
}
