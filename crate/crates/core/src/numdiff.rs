//! Finite-difference derivatives.

use alloc::vec;
use alloc::vec::Vec;

use crate::Result;

/// Fornberg weights for the `order`-th derivative at `x0` on the nodes `xs`.
pub fn fornberg_weights(x0: f64, xs: &[f64], order: usize) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] *= c4 / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

fn stencil<F>(f: &F, x: f64, offsets: &[f64], step: f64, order: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let w = fornberg_weights(0.0, offsets, order);
    let mut acc = 0.0;
    for (o, wi) in offsets.iter().zip(&w) {
        acc += wi * f(x + o * step)?;
    }
    Ok(acc / libm::pow(step, order as f64))
}

/// Central difference of the given order with one Richardson step
/// (steps `δ` and `2δ`), accurate to `O(δ⁴)`.
pub fn central_derivative<F>(f: F, x: f64, order: usize, step: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let half = (order + 1) / 2;
    let offsets: Vec<f64> = (-(half as i64)..=half as i64).map(|k| k as f64).collect();
    let d1 = stencil(&f, x, &offsets, step, order)?;
    let d2 = stencil(&f, x, &offsets, 2.0 * step, order)?;
    Ok((4.0 * d1 - d2) / 3.0)
}

/// One-sided forward stencil `x, x + δ, …, x + (points − 1) δ`.
pub fn forward_derivative<F>(f: F, x: f64, order: usize, step: f64, points: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let offsets: Vec<f64> = (0..points.max(order + 1)).map(|k| k as f64).collect();
    stencil(&f, x, &offsets, step, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fornberg_central_second() {
        let w = fornberg_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        assert!(
            (w[0] - 1.0).abs() < 1e-15 && (w[1] + 2.0).abs() < 1e-15 && (w[2] - 1.0).abs() < 1e-15
        );
        let w = fornberg_weights(0.0, &[0.0, 1.0, 2.0], 1);
        assert!(
            (w[0] + 1.5).abs() < 1e-15 && (w[1] - 2.0).abs() < 1e-15 && (w[2] + 0.5).abs() < 1e-15
        );
    }

    #[test]
    fn derivatives_of_exponential() {
        let f = |x: f64| Ok(libm::exp(-2.0 * x));
        let d1 = central_derivative(f, 0.7, 1, 1e-3).unwrap();
        assert!((d1 + 2.0 * libm::exp(-1.4)).abs() < 1e-10);
        let d2 = central_derivative(f, 0.7, 2, 1e-3).unwrap();
        assert!((d2 - 4.0 * libm::exp(-1.4)).abs() < 1e-8);
        let d3 = forward_derivative(f, 0.0, 3, 1e-2, 10).unwrap();
        assert!((d3 + 8.0).abs() < 1e-7);
    }
}
