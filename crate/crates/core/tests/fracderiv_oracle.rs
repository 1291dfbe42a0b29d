use std::f64::consts::PI;

use fracsinc_core::fracderiv::{
    integral_equation_residual, residual_for_rate, residual_homogeneous, rl_right, tabulate,
    tabulate_exponential, verify_limit_conditions, verify_limit_conditions_exponential,
    DecayingScalarFunction,
};
use fracsinc_core::Error;

const RATES: [f64; 4] = [0.5, 1.0, 2.0, 10.0];
const ORDERS: [f64; 4] = [-1.5, -0.5, 0.3, 1.2];
const TIMES: [f64; 3] = [0.0, 0.7, 2.0];

#[test]
fn numeric_path_matches_exponential_identity() {
    let mut worst = 0.0f64;
    for &c in &RATES {
        for &nu in &ORDERS {
            for &t in &TIMES {
                let exact = c.powf(nu) * (-c * t).exp();
                let tab = tabulate_exponential(c, 1.0, t).unwrap();
                let v = rl_right(&tab, nu, t).unwrap();
                let rel = (v - exact).abs() / exact;
                worst = worst.max(rel);
                assert!(
                    rel < 1e-6,
                    "c={c} nu={nu} t={t}: {v} vs {exact} (rel {rel:e})"
                );
            }
        }
    }
    eprintln!("worst relative error {worst:e}");
}

#[test]
fn semigroup_composition_on_exponentials() {
    // Apply order nu1 numerically to the closed-form result of order nu2.
    for &c in &[0.5f64, 2.0] {
        for &(nu1, nu2) in &[(-0.5, -0.7), (0.4, -1.1), (-1.2, 0.6), (1.3, -0.4)] {
            let t = 0.7;
            let scale = c.powf(nu2);
            let inner = tabulate(|s| scale * (-c * s).exp(), 0.0, t + 40.0 / c, 2048, c).unwrap();
            let v = rl_right(&inner, nu1, t).unwrap();
            let direct = c.powf(nu1 + nu2) * (-c * t).exp();
            assert!((v - direct).abs() < 1e-6 * direct, "c={c} {nu1}+{nu2}");
        }
    }
}

#[test]
fn homogeneous_residual_separates_correct_from_perturbed_rates() {
    for &lambda in &[1.0, PI * PI] {
        for &alpha in &[-0.5, 0.0, 0.5] {
            for &t in &[0.2, 1.0] {
                let r = residual_homogeneous(lambda, alpha, t).unwrap();
                assert!(r < 1e-5, "lambda={lambda} alpha={alpha} t={t}: {r:e}");
            }
        }
    }
    // Perturbed exponents are detected at early times, where u is not negligible.
    for &alpha in &[-0.5, 0.0, 0.5] {
        let lambda = PI * PI;
        let rate = lambda.powf(1.0 / (1.0 + alpha));
        for &f in &[0.9, 1.1] {
            let r = residual_for_rate(lambda, alpha, f * rate, 0.005).unwrap();
            assert!(r > 0.05, "alpha={alpha} factor={f}: {r:e}");
        }
    }
}

#[test]
fn wrong_exponent_is_detected() {
    let r = residual_for_rate(PI * PI, -0.5, PI * PI, 0.2).unwrap();
    assert!(r > 0.1, "{r:e}");
}

#[test]
fn integrated_form_vanishes_for_exact_rate() {
    for &alpha in &[-0.5, 0.0, 0.5] {
        let lambda: f64 = 7.0;
        let rate = lambda.powf(1.0 / (1.0 + alpha));
        assert!(integral_equation_residual(lambda, alpha, rate, 0.3).unwrap() < 1e-8);
        assert!(integral_equation_residual(lambda, alpha, 1.1 * rate, 0.01).unwrap() > 1e-3);
    }
}

#[test]
fn limit_conditions() {
    assert!(verify_limit_conditions_exponential(1.0, 0.0, 0.0).ok);
    assert!(verify_limit_conditions_exponential(PI * PI, 0.5, 0.1).ok);
    assert!(verify_limit_conditions_exponential(2.0, -0.5, 0.3).ok);
    let constant = tabulate(|_| 1.0, 0.0, 60.0, 200, 0.0).unwrap();
    let r = verify_limit_conditions(&constant, 0.3, 0.0);
    assert!(!r.ok);
    assert_eq!(r.error, Some(Error::TailDivergence { rate: 0.0 }));
}

#[test]
fn closed_form_and_numeric_agree_for_scaled_profiles() {
    let f = DecayingScalarFunction::exponential(1.5, -2.0).unwrap();
    let tab = tabulate_exponential(1.5, -2.0, 1.0).unwrap();
    for &nu in &[-0.3, 0.7] {
        let a = rl_right(&f, nu, 1.0).unwrap();
        let b = rl_right(&tab, nu, 1.0).unwrap();
        assert!((a - b).abs() < 1e-7 * a.abs());
    }
}
