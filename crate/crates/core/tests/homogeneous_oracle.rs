use std::f64::consts::PI;

use fracsinc_core::contour::{build_integral_hyperbola, FractionalOrder};
use fracsinc_core::exec::Serial;
use fracsinc_core::homogeneous::{evaluate_fa, solve_homogeneous, solve_homogeneous_with};
use fracsinc_core::operator::{make_tridiagonal_laplacian, OperatorHandle, StateVector};
use fracsinc_core::Error;

fn ord(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

fn scalar_oracle(lambda: f64, alpha: f64, t: f64) -> f64 {
    (-lambda.powf(1.0 / (1.0 + alpha)) * t).exp()
}

#[test]
fn attainable_oracle_cells() {
    for &lambda in &[PI * PI, 50.0] {
        for &alpha in &[0.0, 0.5] {
            for &t in &[0.05, 0.1, 1.0] {
                let op = OperatorHandle::diagonal(vec![lambda], PI / 12.0).unwrap();
                let u0 = StateVector::from_real(&[1.0]).unwrap();
                let exact = scalar_oracle(lambda, alpha, t);
                let e64 = (solve_homogeneous(&op, &u0, ord(alpha), t, 64, 1.0)
                    .unwrap()
                    .value[0]
                    .re
                    - exact)
                    .abs();
                let e256 = (solve_homogeneous(&op, &u0, ord(alpha), t, 256, 1.0)
                    .unwrap()
                    .value[0]
                    .re
                    - exact)
                    .abs();
                assert!(
                    e64 <= 1e-6,
                    "lambda={lambda} alpha={alpha} t={t}: N=64 {e64:e}"
                );
                assert!(
                    e256 <= 1e-10,
                    "lambda={lambda} alpha={alpha} t={t}: N=256 {e256:e}"
                );
            }
        }
    }
}

#[test]
fn unit_eigenvalue_is_not_enclosed() {
    let op = OperatorHandle::diagonal(vec![1.0], PI / 12.0).unwrap();
    let u0 = StateVector::from_real(&[1.0]).unwrap();
    assert!(matches!(
        solve_homogeneous(&op, &u0, ord(0.0), 1.0, 64, 1.0),
        Err(Error::ContourCollision { .. })
    ));
}

#[test]
fn negative_half_order_diverges_on_lemma_contour() {
    let op = OperatorHandle::diagonal(vec![PI * PI], PI / 12.0).unwrap();
    let u0 = StateVector::from_real(&[1.0]).unwrap();
    assert!(matches!(
        solve_homogeneous(&op, &u0, ord(-0.5), 0.1, 64, 1.0),
        Err(Error::DivergentContour { .. })
    ));
}

#[test]
fn multi_mode_diagonal_matches_componentwise_oracle() {
    let lam = [12.0, 30.0, 80.0, 400.0];
    let op = OperatorHandle::diagonal(lam.to_vec(), PI / 12.0).unwrap();
    let data = [1.0, -0.5, 2.0, 0.25];
    let u0 = StateVector::from_real(&data).unwrap();
    let r = solve_homogeneous(&op, &u0, ord(0.3), 0.2, 200, 1.0).unwrap();
    for j in 0..4 {
        let exact = data[j] * scalar_oracle(lam[j], 0.3, 0.2);
        assert!((r.value[j].re - exact).abs() < 1e-10);
    }
}

#[test]
fn laplacian_per_eigenvalue_oracle() {
    let n = 63;
    let op = make_tridiagonal_laplacian(n).unwrap();
    let m = (n + 1) as f64;
    // sin(πx) sampled on the grid is exactly the first discrete mode.
    let data: Vec<f64> = (1..=n).map(|j| (PI * j as f64 / m).sin()).collect();
    let lam1 = 4.0 * m * m * (PI / (2.0 * m)).sin().powi(2);
    let u0 = StateVector::from_real(&data).unwrap();
    let t = 1.0 / (PI * PI);
    let r = solve_homogeneous(&op, &u0, ord(0.5), t, 128, 1.0).unwrap();
    let f = scalar_oracle(lam1, 0.5, t);
    let err = (0..n).fold(0.0f64, |e, j| e.max((r.value[j].re - f * data[j]).abs()));
    assert!(err < 1e-8, "{err:e}");
}

#[test]
fn laplacian_mixed_modes() {
    let n = 20;
    let op = make_tridiagonal_laplacian(n).unwrap();
    let m = (n + 1) as f64;
    let modes = [1usize, 4, 13];
    let amps = [1.0, -0.7, 0.2];
    let mode = |k: usize, j: usize| (PI * (j * k) as f64 / m).sin();
    let data: Vec<f64> = (1..=n)
        .map(|j| modes.iter().zip(&amps).map(|(&k, &a)| a * mode(k, j)).sum())
        .collect();
    let u0 = StateVector::from_real(&data).unwrap();
    let t = 0.01;
    let r = solve_homogeneous(&op, &u0, ord(0.0), t, 160, 1.0).unwrap();
    for j in 1..=n {
        let exact: f64 = modes
            .iter()
            .zip(&amps)
            .map(|(&k, &a)| {
                let l = 4.0 * m * m * (k as f64 * PI / (2.0 * m)).sin().powi(2);
                a * mode(k, j) * (-l * t).exp()
            })
            .sum();
        assert!((r.value[j - 1].re - exact).abs() < 1e-9);
    }
}

#[test]
fn node_magnitudes_decay_exponentially() {
    let lambda = PI * PI;
    let op = OperatorHandle::diagonal(vec![lambda], PI / 12.0).unwrap();
    let hyp = build_integral_hyperbola(&op.sector()).unwrap();
    let u0 = StateVector::from_real(&[1.0]).unwrap();
    // Fit log|F_A| against |ξ| on [2, 8] for t = 0, where the decay is slowest.
    let xs: Vec<f64> = (0..=24).map(|i| 2.0 + 0.25 * i as f64).collect();
    let ys: Vec<f64> = xs
        .iter()
        .map(|&x| {
            evaluate_fa(0.0, x, &op, &u0, &hyp, ord(0.0)).unwrap()[0]
                .norm()
                .ln()
        })
        .collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!(slope <= -0.8, "{slope}");
}

#[test]
fn t_zero_reproduces_data() {
    let op = OperatorHandle::diagonal(vec![PI * PI], PI / 12.0).unwrap();
    let u0 = StateVector::from_real(&[1.0]).unwrap();
    let r = solve_homogeneous_with(&Serial, &op, &u0, ord(0.0), 0.0, 4, 1.0).unwrap();
    let err = (r.value[0].re - 1.0).abs();
    assert!(err > 0.0 && err < 0.5, "{err:e}");
    let r = solve_homogeneous(&op, &u0, ord(0.0), 0.0, 256, 1.0).unwrap();
    assert!((r.value[0].re - 1.0).abs() < 1e-6);
}
