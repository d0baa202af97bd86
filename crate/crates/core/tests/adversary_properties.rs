use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revcurve::adversary::{
    build_slow_rate_distribution, coin_oracle_error, coin_sample_size, exp_lb_witness,
    gadget_member, monotone_envelope, sweep_side, uniform_gadget, verify_gadget, ProbeConfig,
    RateSpec, Side, Sign, Witness,
};
use revcurve::empirical::Sample;
use revcurve::learners::{parse_learner, FnLearner, Learner};

#[test]
fn slow_rate_masses_and_optimum() {
    let rates = [
        RateSpec::Reciprocal,
        RateSpec::Power(0.5),
        RateSpec::InverseLog(2.0),
        RateSpec::List(vec![0.5, 0.7, 0.3, 0.3, 0.1]),
    ];
    for spec in &rates {
        for learner in ["erm", "truncated", "structural", "const:1"] {
            let l = parse_learner::<f64>(learner).unwrap();
            let depth = 5;
            let rate = monotone_envelope(|j| spec.eval(j), depth).unwrap();
            let (pmf, c) =
                build_slow_rate_distribution(&l, &rate, depth, &ProbeConfig::default()).unwrap();
            let bad = c.check_invariants(1e-9);
            assert!(bad.is_empty(), "{spec} / {learner}: {bad:?}");
            assert!(pmf.atoms().iter().all(|a| a.1 > 0.0));
            let total: f64 = pmf.atoms().iter().map(|a| a.1).sum();
            assert!((total - 1.0).abs() < 1e-9);
            let (opt, at) = pmf.optimum();
            assert!((opt - (2.0 - rate.r(depth - 1))).abs() < 1e-9, "{spec} / {learner}");
            assert!((pmf.revenue(c.points[depth - 1]) - opt).abs() < 1e-9);
            assert!(at <= c.points[depth - 1]);
        }
    }
}

#[test]
fn gadget_sweep() {
    for x in [0.8_f64, 0.9, 1.0] {
        for q in [0.5, 0.6] {
            for p in [0.01_f64, 0.05] {
                let gp = uniform_gadget(x, q, p, None).unwrap();
                assert!((gp.gamma - p.min(x - gp.x_pq) / 50.0).abs() < 1e-15);
                for sigma in [Sign::Minus, Sign::Plus] {
                    let d = gadget_member(&gp, sigma).unwrap();
                    let r = verify_gadget(&gp, &d, sigma, 20_000).unwrap();
                    assert!(r.margin.pass, "x={x} q={q} p={p} sigma={sigma}: {:?}", r.margin);
                    let wrong = sweep_side(&gp, &d, Side::losing_for(sigma.flip()), 20_000).unwrap();
                    assert!(!wrong.pass, "x={x} q={q} p={p} sigma={sigma}");
                }
            }
        }
    }
}

#[test]
fn coin_error_nonincreasing_in_c() {
    let (p, g) = (0.01, 0.001);
    let mut last = 1.0;
    for c in [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 16.0] {
        let e = coin_oracle_error(p, g, coin_sample_size(p, g, c).unwrap());
        assert!(e <= last, "c = {c}: {e} > {last}");
        last = e;
    }
}

#[test]
fn witness_gap_when_rarely_posting_p() {
    // posts p' on even n, p otherwise
    let alternating = FnLearner::new("alternating", true, |s: &Sample<f64>, _: &mut dyn RngCore| {
        if s.len().is_multiple_of(2) {
            3.0
        } else {
            s.values()[0]
        }
    });
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let grid: Vec<usize> = (1..=40).collect();
    for (p, hi, c) in [(1.0, 3.0, 2.0), (0.5, 3.0, 1.5), (2.0, 9.0, 4.0)] {
        let rows = exp_lb_witness(&alternating, p, hi, c, &grid, 1, &mut rng).unwrap();
        for r in rows {
            if r.a_n <= 0.5 {
                assert_eq!(r.witness, Witness::PointMass);
                assert!(r.gap >= p / 2.0);
            } else {
                assert_eq!(r.witness, Witness::TwoPoint);
            }
        }
    }
    assert!(alternating.is_deterministic());
}
