//! Sinc quadrature of the Dunford–Cauchy representation
//!
//! ```text
//! u(t) = (1/2πi) ∫ e^{-t z^{1/(1+α)}} [(zI − A)^{-1} − z^{-1} I] u0 dz
//! ```
//!
//! along the integral hyperbola, `u ≈ (h/2πi) Σ_{k=−N}^{N} F_A(t, kh)`.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // float methods come from std when it is linked
use num_traits::Float;

use num_complex::Complex64;

use crate::contour::{
    build_integral_hyperbola, check_encloses_spectrum, check_integrand_decay,
    strip_clears_spectrum, validate_angle, FractionalOrder, Hyperbola,
};
use crate::exec::{NodeExecutor, Serial};
use crate::operator::{check_dim, SectorialOperator, StateVector};
use crate::sum::{Compensated, CompensatedComplex};
use crate::{Error, Result};

/// Truncation order `N`, step `h`, smoothness exponent `γ` and strip
/// half-width `d1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraturePlan {
    n: usize,
    h: f64,
    gamma: f64,
    d1: f64,
}

impl QuadraturePlan {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn d1(&self) -> f64 {
        self.d1
    }

    pub fn node_count(&self) -> usize {
        2 * self.n + 1
    }

    /// Nodes `kh`, `k = −N..=N`.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n as i64;
        (-n..=n).map(move |k| k as f64 * self.h)
    }

    pub fn decay_factor(&self) -> f64 {
        apriori_error_factor(self.n, self.gamma, self.d1)
    }
}

/// Step `h = sqrt(2π d1 / (γ N))` balancing discretisation and truncation.
pub fn plan_quadrature(n: usize, gamma: f64, d1: f64) -> Result<QuadraturePlan> {
    if n == 0 {
        return Err(Error::InvalidArgument("quadrature order N must be >= 1"));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument("gamma must be positive"));
    }
    if !(d1 > 0.0 && d1.is_finite()) {
        return Err(Error::InvalidArgument("strip half-width must be positive"));
    }
    Ok(QuadraturePlan {
        n,
        h: (2.0 * PI * d1 / (gamma * n as f64)).sqrt(),
        gamma,
        d1,
    })
}

/// `exp(−sqrt(π d1 γ N / 2))`. The prefactor of the error bound is not
/// known and is not estimated.
pub fn apriori_error_factor(n: usize, gamma: f64, d1: f64) -> f64 {
    apriori_error_factor_real(n as f64, gamma, d1)
}

/// [`apriori_error_factor`] for a real-valued `N`.
pub fn apriori_error_factor_real(n: f64, gamma: f64, d1: f64) -> f64 {
    (-(PI * d1 * gamma * n / 2.0).sqrt()).exp()
}

/// Principal branch `|z|^{1/(1+α)} e^{i arg(z)/(1+α)}`, `arg ∈ (−π, π]`.
pub fn fractional_power_scalar(z: Complex64, alpha: FractionalOrder) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ZeroBase);
    }
    let p = alpha.power();
    if p == 1.0 {
        return Ok(z);
    }
    Ok(Complex64::from_polar(z.norm().powf(p), z.arg() * p))
}

/// `F_A(t, ξ) = e^{−t z^{1/(1+α)}} z'(ξ) [(zI − A)^{-1} − z^{-1} I] u0`
/// at `z = z(ξ)` on `hyp`.
pub fn evaluate_fa<O: SectorialOperator + ?Sized>(
    t: f64,
    xi: f64,
    op: &O,
    u0: &StateVector,
    hyp: &Hyperbola,
    alpha: FractionalOrder,
) -> Result<StateVector> {
    let (z, dz) = hyp.point(xi);
    let w = op.corrected_resolvent_apply(z, u0)?;
    let e = if t == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        (-fractional_power_scalar(z, alpha)? * t).exp()
    };
    Ok(w.scaled(e * dz))
}

/// Result of a homogeneous solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub value: StateVector,
    /// `exp(−sqrt(π d1 γ N / 2))`.
    pub decay_factor: f64,
    /// Number of quadrature nodes `2N + 1` (paired nodes counted twice).
    pub nodes_used: usize,
    /// Resolvent applications actually performed.
    pub resolvent_solves: usize,
    pub t: f64,
    pub plan: QuadraturePlan,
    /// Whether the whole rotated strip family stays clear of the spectrum.
    pub strip_clear: bool,
}

/// Serial [`solve_homogeneous_with`].
pub fn solve_homogeneous<O: SectorialOperator + ?Sized>(
    op: &O,
    u0: &StateVector,
    alpha: FractionalOrder,
    t: f64,
    n: usize,
    gamma: f64,
) -> Result<SolveReport> {
    solve_homogeneous_with(&Serial, op, u0, alpha, t, n, gamma)
}

/// Approximates `exp(−A^{1/(1+α)} t) u0` with `2N + 1` Sinc nodes.
///
/// For a real spectrum `F_A(t, −ξ) = −conj F_A(t, ξ)`, so the `±k` terms
/// combine into `2i Im F_A(t, kh)`. Real data therefore needs only `N + 1`
/// resolvent solves and yields an exactly real result. Terms are reduced
/// from the largest `|k|` down with compensated summation, independently of
/// the executor.
pub fn solve_homogeneous_with<E, O>(
    exec: &E,
    op: &O,
    u0: &StateVector,
    alpha: FractionalOrder,
    t: f64,
    n: usize,
    gamma: f64,
) -> Result<SolveReport>
where
    E: NodeExecutor + ?Sized,
    O: SectorialOperator + ?Sized,
{
    let sector = op.sector();
    validate_angle(alpha, &sector)?;
    check_dim(op.dim(), u0.len())?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(
            "time t must be finite and nonnegative",
        ));
    }
    let hyp = build_integral_hyperbola(&sector)?;
    check_encloses_spectrum(&hyp, &sector)?;
    check_integrand_decay(&hyp, alpha)?;
    let plan = plan_quadrature(n, gamma, hyp.strip_half_width())?;
    let h = plan.h();
    let strip_clear = strip_clears_spectrum(&hyp, &sector);

    let report = |value: StateVector, solves: usize| SolveReport {
        value,
        decay_factor: plan.decay_factor(),
        nodes_used: plan.node_count(),
        resolvent_solves: solves,
        t,
        plan,
        strip_clear,
    };

    if u0.is_zero() {
        return Ok(report(StateVector::zeros(u0.len()), 0));
    }

    let dim = u0.len();
    if op.has_real_spectrum() && u0.is_real() {
        let terms = exec.map_indexed(n + 1, |k| evaluate_fa(t, k as f64 * h, op, u0, &hyp, alpha));
        let terms = terms.into_iter().collect::<Result<Vec<_>>>()?;
        let scale = h / (2.0 * PI);
        let value = (0..dim)
            .map(|j| {
                let mut acc = Compensated::default();
                for k in (1..=n).rev() {
                    acc.add(2.0 * terms[k][j].im);
                }
                acc.add(terms[0][j].im);
                Complex64::new(scale * acc.value(), 0.0)
            })
            .collect();
        return Ok(report(StateVector::from_raw(value), n + 1));
    }

    let count = 2 * n + 1;
    let terms = exec.map_indexed(count, |i| {
        let k = i as f64 - n as f64;
        evaluate_fa(t, k * h, op, u0, &hyp, alpha)
    });
    let terms = terms.into_iter().collect::<Result<Vec<_>>>()?;
    let scale = Complex64::new(0.0, -h / (2.0 * PI));
    let value = (0..dim)
        .map(|j| {
            let mut acc = CompensatedComplex::default();
            for k in (1..=n).rev() {
                acc.add(terms[n + k][j]);
                acc.add(terms[n - k][j]);
            }
            acc.add(terms[n][j]);
            scale * acc.value()
        })
        .collect();
    Ok(report(StateVector::from_raw(value), count))
}
