use num_rational::Rational64;
use oos_core::simulation::{sample_dataset, stream_rng, table_scenario};
use oos_core::variance_tools::{
    bootstrap_variance, moment_feasibility, pathological_pmf, pathological_sequence, pathological_var_s2,
    quadratic_estimate, sample_variance_s2, var_s2_normal_control, var_s2_study, MomentTarget,
};
use oos_core::{LossKind, MeanRule};

#[test]
fn pmf_is_normalized_and_centered() {
    for n in [2, 10, 160, 5000] {
        let pmf = pathological_pmf(n, 2.0_f64, 1.0).unwrap();
        assert!((pmf.total_probability() - 1.0).abs() <= 1e-14, "n = {n}");
        assert!(pmf.mean().abs() < 1e-10);
    }
}

#[test]
fn exact_var_s2_matches_brute_force_for_tiny_n() {
    // n = 2: s² = (Y1 - Y2)²/2, enumerate all 16 pairs.
    let pmf = pathological_pmf(2, 3.0_f64, 1.0).unwrap();
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for (a, pa) in pmf.support.iter().zip(&pmf.probabilities) {
        for (b, pb) in pmf.support.iter().zip(&pmf.probabilities) {
            let s2 = (a - b) * (a - b) / 2.0;
            m1 += pa * pb * s2;
            m2 += pa * pb * s2 * s2;
        }
    }
    let exact = pathological_var_s2(2, 3.0_f64, 1.0).unwrap();
    assert!((exact - (m2 - m1 * m1)).abs() < 1e-10 * exact, "{exact} vs {}", m2 - m1 * m1);
    assert!((m1 - pmf.variance()).abs() < 1e-12);
}

#[test]
fn sequence_has_covariance_c() {
    let (sigma2, c, reps) = (2.0_f64, 1.0, 100_000);
    let mut x1 = Vec::with_capacity(reps);
    let mut x2 = Vec::with_capacity(reps);
    for r in 0..reps {
        let xs = pathological_sequence(10, sigma2, c, 0.5, &mut stream_rng(2024, r as u64)).unwrap();
        x1.push(xs[0]);
        x2.push(xs[1]);
    }
    let m = reps as f64;
    let (a, b) = (x1.iter().sum::<f64>() / m, x2.iter().sum::<f64>() / m);
    let prods: Vec<f64> = x1.iter().zip(&x2).map(|(x, y)| (x - a) * (y - b)).collect();
    let cov = prods.iter().sum::<f64>() / m;
    let se = (prods.iter().map(|p| (p - cov).powi(2)).sum::<f64>() / (m - 1.0) / m).sqrt();
    assert!((cov - c).abs() < 4.0 * se, "cov {cov} se {se}");
}

#[test]
fn var_s2_does_not_vanish() {
    let rows = var_s2_study(&[10, 40, 160], 10_000, 2.0_f64, 1.0, 0.0, 99).unwrap();
    assert!(rows[2].var_s2 >= 4.0 * rows[0].var_s2, "{rows:?}");
    for r in &rows {
        assert!((r.expected_s2 - 1.0).abs() < 1e-12);
        let rel = (r.var_s2 - r.exact_var_s2).abs() / r.exact_var_s2;
        assert!(rel < 0.5, "n {}: {} vs {}", r.n, r.var_s2, r.exact_var_s2);
    }
}

#[test]
fn normal_control_var_s2_decreases() {
    let rows = var_s2_normal_control::<f64>(&[10, 40, 160], 10_000, 99).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].var_s2 < w[0].var_s2);
    }
    for r in &rows {
        let rel = (r.var_s2 - r.exact_var_s2).abs() / r.exact_var_s2;
        assert!(rel < 0.1, "n {}: {} vs {}", r.n, r.var_s2, r.exact_var_s2);
    }
}

#[test]
fn feasibility_is_exact() {
    for n in 2..=100 {
        assert!(!moment_feasibility(&MomentTarget::<Rational64>::variance_of_mean(n)).feasible);
    }
    let r = |a: i64, b: i64, c: i64| MomentTarget::new(Rational64::from(a), Rational64::from(b), Rational64::from(c));
    let s2 = moment_feasibility(&r(1, -1, 0));
    assert!(s2.feasible);
    assert_eq!(s2.coefficients, Some((Rational64::from(1), Rational64::from(-1))));
    for t in [r(0, 0, 1), r(1, 0, 0), r(0, 1, 0)] {
        assert!(!moment_feasibility(&t).feasible);
    }
}

#[test]
fn s2_witness_reproduces_sample_variance() {
    let xs = [1.5, -2.0, 0.25, 7.0, 3.0];
    let q = quadratic_estimate(1.0_f64, -1.0, &xs).unwrap();
    assert!((q - sample_variance_s2(&xs).unwrap()).abs() < 1e-12);
}

#[test]
fn bootstrap_on_table1_is_in_range_and_stable() {
    let cfg = table_scenario::<f64>(1, LossKind::Squared, vec![100], 1, 31).unwrap();
    let ds = sample_dataset(&cfg, 100, 0).unwrap();
    let b500 = bootstrap_variance(&ds, &MeanRule, &LossKind::Squared, 500, 7).unwrap();
    let b1000 = bootstrap_variance(&ds, &MeanRule, &LossKind::Squared, 1000, 7).unwrap();
    assert!((11.524 / 2.0..11.524 * 2.0).contains(&b500), "{b500}");
    assert!((b1000 - b500).abs() / b500 < 0.2, "{b500} vs {b1000}");
}
