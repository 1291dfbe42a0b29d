//! Scalar analysis of the reduced kernel equation
//! `K^{(p)} = (−1)^p a^q K`, `K(0) = … = K^{(p−2)}(0) = 0`, `K^{(p−1)}(0) = 1`.
//!
//! The characteristic roots are `λ_k = a^{q/p} e^{iπ(p+2k)/p}`, and the
//! kernel is `K(t) = Σ c_k e^{λ_k t}` with coefficients from the
//! Vandermonde system `Σ_k λ_k^m c_k = δ_{m, p−1}`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // float methods come from std when it is linked
use num_traits::Float;

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest supported `p`; Vandermonde systems degrade quickly beyond it.
pub const MAX_ROOTS: usize = 12;

/// Tolerance of the closed-form vs direct-solve cross-check.
pub const CROSS_CHECK_TOL: f64 = 1e-10;

/// Roots `a^{q/p} e^{iπ(p+2k)/p}`, `k = 0..p`, in order of `k`.
pub fn characteristic_roots(a: f64, p: u32, q: u32) -> Result<Vec<Complex64>> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument("kernel scalar a must be positive"));
    }
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument("p and q must be >= 1"));
    }
    let r = a.powf(q as f64 / p as f64);
    let pf = p as f64;
    Ok((0..p)
        .map(|k| {
            let theta = (pf + 2.0 * k as f64) * PI / pf;
            Complex64::new(r * theta.cos(), r * theta.sin())
        })
        .collect())
}

/// Coefficients `c_k = 1 / Π_{j≠k} (λ_k − λ_j)`, cross-checked against a
/// pivoted Gaussian solve of the Vandermonde system.
pub fn kernel_coefficients(roots: &[Complex64]) -> Result<Vec<Complex64>> {
    let p = roots.len();
    if p == 0 {
        return Err(Error::InvalidArgument("at least one root is required"));
    }
    if p > MAX_ROOTS {
        return Err(Error::TooManyRoots { p, max: MAX_ROOTS });
    }
    for i in 0..p {
        for j in i + 1..p {
            let scale = roots[i].norm().max(roots[j].norm()).max(f64::MIN_POSITIVE);
            if (roots[i] - roots[j]).norm() <= 1e-12 * scale {
                return Err(Error::RepeatedRoot {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let closed: Vec<Complex64> = (0..p)
        .map(|k| {
            let mut prod = Complex64::new(1.0, 0.0);
            for j in 0..p {
                if j != k {
                    prod *= roots[k] - roots[j];
                }
            }
            prod.inv()
        })
        .collect();
    let direct = vandermonde_solve(roots)?;
    let scale = closed.iter().fold(1.0f64, |m, c| m.max(c.norm()));
    let deviation = closed
        .iter()
        .zip(&direct)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()))
        / scale;
    if deviation > CROSS_CHECK_TOL {
        return Err(Error::CramerMismatch { deviation });
    }
    Ok(closed)
}

/// Solves `Σ_k λ_k^m c_k = δ_{m, p−1}`, `m = 0..p`, by Gaussian elimination
/// with partial pivoting.
pub fn vandermonde_solve(roots: &[Complex64]) -> Result<Vec<Complex64>> {
    let p = roots.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut m = vec![vec![zero; p + 1]; p];
    for (row, line) in m.iter_mut().enumerate() {
        for (col, &l) in roots.iter().enumerate() {
            line[col] = l.powu(row as u32);
        }
        line[p] = if row + 1 == p {
            Complex64::new(1.0, 0.0)
        } else {
            zero
        };
    }
    for col in 0..p {
        let piv = (col..p)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .unwrap_or(col);
        if m[piv][col].norm() == 0.0 {
            return Err(Error::RepeatedRoot {
                first: col,
                second: piv,
            });
        }
        m.swap(col, piv);
        for row in col + 1..p {
            let f = m[row][col] / m[col][col];
            for k in col..=p {
                let v = m[col][k];
                m[row][k] -= f * v;
            }
        }
    }
    let mut c = vec![zero; p];
    for row in (0..p).rev() {
        let mut acc = m[row][p];
        for k in row + 1..p {
            acc -= m[row][k] * c[k];
        }
        c[row] = acc / m[row][row];
    }
    Ok(c)
}

/// Kernel `K(t) = Σ c_k e^{λ_k t}` for the scalar `a` with `ν = p/q`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    pub a: f64,
    pub p: u32,
    pub q: u32,
    pub roots: Vec<Complex64>,
    pub coeffs: Vec<Complex64>,
}

impl KernelSpec {
    pub fn new(a: f64, p: u32, q: u32) -> Result<Self> {
        let roots = characteristic_roots(a, p, q)?;
        let coeffs = kernel_coefficients(&roots)?;
        Ok(Self {
            a,
            p,
            q,
            roots,
            coeffs,
        })
    }
}

pub fn kernel_eval(spec: &KernelSpec, t: f64) -> Complex64 {
    spec.roots
        .iter()
        .zip(&spec.coeffs)
        .fold(Complex64::new(0.0, 0.0), |acc, (&l, &c)| {
            acc + c * (l * t).exp()
        })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSigns {
    pub has_positive_real_part: bool,
    /// Root with the largest real part.
    pub witness: Complex64,
}

/// Whether some root has a (numerically) positive real part.
pub fn classify_root_signs(spec: &KernelSpec) -> RootSigns {
    let witness = spec
        .roots
        .iter()
        .copied()
        .max_by(|a, b| a.re.total_cmp(&b.re))
        .unwrap_or(Complex64::new(0.0, 0.0));
    RootSigns {
        has_positive_real_part: witness.re > 1e-12 * witness.norm(),
        witness,
    }
}
