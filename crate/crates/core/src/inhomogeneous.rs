//! Inhomogeneous problem for `α = 1/q − 1` with exponential forcing
//! `f(t) = e^{−ct} v`.
//!
//! Fractional integration reduces the equation to the first-order problem
//! `u' + A^q u = F`, `F(t) = −Σ_{k=1}^{q} c^{1−k/q} A^{k−1} v e^{−ct}`, so
//!
//! ```text
//! u(t) = e^{−A^q t} u0 − ∫_0^t e^{−A^q (t−s)} F(s) ds.
//! ```
//!
//! The convolution is discretised by a double Sinc sum over the unshifted
//! hyperbola `z(ξ) = cosh ξ − i bI sinh ξ` with step `h = 1/√N`: for each
//! contour node the inner integral over `s ∈ (0, t)` uses the map
//! `s = (t/2)(1 + tanh ξ)`.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // float methods come from std when it is linked
use num_traits::Float;

use num_complex::Complex64;

use crate::charpoly::{classify_root_signs, KernelSpec};
use crate::contour::{build_unshifted_hyperbola, validate_angle, FractionalOrder, Hyperbola};
use crate::exec::{NodeExecutor, Serial};
use crate::fracderiv::{rl_right, DecayingScalarFunction};
use crate::homogeneous::solve_homogeneous_with;
use crate::operator::{check_dim, OperatorHandle, OperatorPower, SectorialOperator, StateVector};
use crate::sum::{Compensated, CompensatedComplex};
use crate::{Error, Result};

/// Largest denominator tried when recognising `1 + α` as a fraction.
pub const MAX_DENOMINATOR: u32 = 64;

/// `f(t) = e^{−ct} v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialForcing {
    c: f64,
    direction: StateVector,
}

impl ExponentialForcing {
    pub fn new(c: f64, direction: StateVector) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument("forcing rate c must be positive"));
        }
        Ok(Self { c, direction })
    }

    pub fn rate(&self) -> f64 {
        self.c
    }

    pub fn direction(&self) -> &StateVector {
        &self.direction
    }

    pub fn is_zero(&self) -> bool {
        self.direction.is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InhomogeneousConfig {
    q_order: u32,
    n: usize,
    sigma: f64,
    t: f64,
}

impl InhomogeneousConfig {
    pub fn new(q_order: u32, n: usize, sigma: f64, t: f64) -> Result<Self> {
        if q_order == 0 {
            return Err(Error::InvalidArgument("q must be >= 1"));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("quadrature order N must be >= 1"));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument("sigma must be positive"));
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(
                "time t must be finite and nonnegative",
            ));
        }
        Ok(Self {
            q_order,
            n,
            sigma,
            t,
        })
    }

    pub fn q_order(&self) -> u32 {
        self.q_order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// The order `α = 1/q − 1`.
    pub fn alpha(&self) -> FractionalOrder {
        FractionalOrder::from_valid(1.0 / self.q_order as f64 - 1.0)
    }

    pub fn with_n(self, n: usize) -> Result<Self> {
        Self::new(self.q_order, n, self.sigma, self.t)
    }

    pub fn with_t(self, t: f64) -> Result<Self> {
        Self::new(self.q_order, self.n, self.sigma, t)
    }
}

/// Recovers `q` from `α = 1/q − 1`. Other rational orders `1 + α = p/q`
/// with `p >= 2` are rejected: the reduced kernel equation then has a root
/// with positive real part.
pub fn order_from_alpha(alpha: f64) -> Result<u32> {
    let order = FractionalOrder::new(alpha)?;
    let nu = 1.0 + order.value();
    for q in 1..=MAX_DENOMINATOR {
        let p = (nu * q as f64).round();
        if p >= 1.0 && (nu * q as f64 - p).abs() < 1e-10 {
            let p = p as u32;
            if p == 1 {
                return Ok(q);
            }
            let spec = KernelSpec::new(1.0, p, q)?;
            let signs = classify_root_signs(&spec);
            return Err(Error::UnsupportedOrder {
                p,
                q,
                positive_root_re: signs.witness.re,
            });
        }
    }
    Err(Error::InvalidArgument(
        "1 + alpha must be 1/q for a positive integer q",
    ))
}

/// The spatial vector `w = −Σ_{k=1}^{q} c^{1−k/q} A^{k−1} v` with
/// `F(t) = e^{−ct} w`.
pub fn forcing_profile(f: &ExponentialForcing, q: u32, op: &OperatorHandle) -> Result<StateVector> {
    check_dim(op.dim(), f.direction.len())?;
    let mut acc = StateVector::zeros(op.dim());
    let mut power = f.direction.clone();
    for k in 1..=q {
        let coeff = f.c.powf(1.0 - k as f64 / q as f64);
        acc = acc.sub(&power.scaled(Complex64::new(coeff, 0.0)))?;
        if k < q {
            power = op.apply(&power)?;
        }
    }
    Ok(acc)
}

/// `F(t)`.
pub fn build_f(
    f: &ExponentialForcing,
    cfg: &InhomogeneousConfig,
    op: &OperatorHandle,
    t: f64,
) -> Result<StateVector> {
    let w = forcing_profile(f, cfg.q_order, op)?;
    Ok(w.scaled(Complex64::new((-f.c * t).exp(), 0.0)))
}

/// `μ_{k,p}(t) = t / (2 cosh²(ph)) · exp(−(t/2) z(kh) (1 − tanh(ph)))`.
pub fn mu_weight(k: i64, p: i64, t: f64, h: f64, hyp: &Hyperbola) -> Complex64 {
    let (z, _) = hyp.point(k as f64 * h);
    mu_at(z, p as f64 * h, t)
}

fn mu_at(z: Complex64, x: f64, t: f64) -> Complex64 {
    let ch = x.cosh();
    // 1 − tanh x = 2 / (1 + e^{2x}), free of cancellation for large x.
    let one_minus_tanh = 2.0 / (1.0 + (2.0 * x).exp());
    (-z * (0.5 * t * one_minus_tanh)).exp() * (t / (2.0 * ch * ch))
}

/// `ω_p(t) = (t/2)(1 + tanh(ph))`.
pub fn omega_node(p: i64, t: f64, h: f64) -> f64 {
    0.5 * t * (1.0 + (p as f64 * h).tanh())
}

#[derive(Debug, Clone, PartialEq)]
pub struct InhomogeneousReport {
    /// `u(t)`.
    pub value: StateVector,
    /// `e^{−A^q t} u0`.
    pub homogeneous: StateVector,
    /// `−∫_0^t e^{−A^q(t−s)} F(s) ds`.
    pub forced: StateVector,
    /// `exp(−√N)`, the shape of the error bound; its constants are unknown.
    pub decay_factor: f64,
    pub nodes_used: usize,
    pub t: f64,
}

/// Serial [`solve_inhomogeneous_with`].
pub fn solve_inhomogeneous(
    op: &OperatorHandle,
    u0: &StateVector,
    f: &ExponentialForcing,
    cfg: &InhomogeneousConfig,
) -> Result<InhomogeneousReport> {
    solve_inhomogeneous_with(&Serial, op, u0, f, cfg)
}

pub fn solve_inhomogeneous_with<E: NodeExecutor + ?Sized>(
    exec: &E,
    op: &OperatorHandle,
    u0: &StateVector,
    f: &ExponentialForcing,
    cfg: &InhomogeneousConfig,
) -> Result<InhomogeneousReport> {
    validate_angle(cfg.alpha(), &op.sector())?;
    check_dim(op.dim(), u0.len())?;
    check_dim(op.dim(), f.direction.len())?;
    let power = OperatorPower::new(op, cfg.q_order)?;
    let n = cfg.n;
    let t = cfg.t;

    let homogeneous = if u0.is_zero() {
        StateVector::zeros(op.dim())
    } else {
        let order = FractionalOrder::new(0.0)?;
        solve_homogeneous_with(exec, &power, u0, order, t, n, cfg.sigma)?.value
    };

    let w = forcing_profile(f, cfg.q_order, op)?;
    let forced = if w.is_zero() || t == 0.0 {
        StateVector::zeros(op.dim())
    } else {
        let hyp = build_unshifted_hyperbola(&power.sector())?;
        convolution(exec, &power, &w, f.c, &hyp, n, t)?
    };

    Ok(InhomogeneousReport {
        value: homogeneous.add(&forced)?,
        homogeneous,
        forced,
        decay_factor: (-(n as f64).sqrt()).exp(),
        nodes_used: 2 * n + 1,
        t,
    })
}

/// `−(h/2πi) Σ_k z'(kh) [(z_k − A^q)^{-1} − z_k^{-1}] w · h Σ_p μ_{k,p} e^{−c ω_p}`.
fn convolution<E: NodeExecutor + ?Sized>(
    exec: &E,
    power: &OperatorPower<'_>,
    w: &StateVector,
    c: f64,
    hyp: &Hyperbola,
    n: usize,
    t: f64,
) -> Result<StateVector> {
    let h = 1.0 / (n as f64).sqrt();
    let ni = n as i64;
    let term = |k: i64| -> Result<StateVector> {
        let (z, dz) = hyp.point(k as f64 * h);
        let mut inner = CompensatedComplex::default();
        for p in (1..=ni).rev() {
            for s in [p, -p] {
                inner.add(mu_at(z, s as f64 * h, t) * (-c * omega_node(s, t, h)).exp());
            }
        }
        inner.add(mu_at(z, 0.0, t) * (-c * omega_node(0, t, h)).exp());
        let r = power.corrected_resolvent_apply(z, w)?;
        Ok(r.scaled(dz * inner.value() * h))
    };

    let dim = w.len();
    if w.is_real() {
        let terms = exec
            .map_indexed(n + 1, |k| term(k as i64))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let scale = -h / (2.0 * PI);
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
        return Ok(StateVector::from_raw(value));
    }

    let terms = exec
        .map_indexed(2 * n + 1, |i| term(i as i64 - ni))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let scale = Complex64::new(0.0, h / (2.0 * PI));
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
    Ok(StateVector::from_raw(value))
}

/// Exact scalar solution for eigenvalue `λ` (so `m = λ^q`), initial value
/// `u0`, forcing `e^{−ct} v`: `u0 e^{−mt} + v (e^{−ct} − e^{−mt}) / (λ − c^{1/q})`.
pub fn scalar_closed_form(lambda: f64, q: u32, c: f64, v: f64, u0: f64, t: f64) -> f64 {
    let m = lambda.powi(q as i32);
    let amp = v / (lambda - c.powf(1.0 / q as f64));
    u0 * (-m * t).exp() + amp * ((-c * t).exp() - (-m * t).exp())
}

/// Residual of the integral equation `u − λ D^{−1/q} u = −D^{−1/q} f` for a
/// computed scalar value `u_t`.
///
/// The exact solution is `A_m e^{−mt} + A_c e^{−ct}` with `A_m + A_c = u0`;
/// `A_c` is recovered from `u_t` and both components are pushed through the
/// closed-form fractional integrals.
pub fn integral_equation_residual(
    lambda: f64,
    q: u32,
    c: f64,
    v: f64,
    u0: f64,
    t: f64,
    u_t: f64,
) -> Result<f64> {
    let m = lambda.powi(q as i32);
    let em = (-m * t).exp();
    let ec = (-c * t).exp();
    if (ec - em).abs() <= 1e-12 * ec.max(em) {
        return Err(Error::InvalidArgument(
            "forcing rate coincides with the eigenvalue power",
        ));
    }
    let a_c = (u_t - u0 * em) / (ec - em);
    let a_m = u0 - a_c;
    let nu = -1.0 / q as f64;
    let mut lhs = Compensated::default();
    for (amp, rate) in [(a_m, m), (a_c, c)] {
        if amp == 0.0 {
            continue;
        }
        let g = DecayingScalarFunction::exponential(rate, amp)?;
        lhs.add(g.sample(t));
        lhs.add(-lambda * rl_right(&g, nu, t)?);
    }
    let rhs = if v == 0.0 {
        0.0
    } else {
        -rl_right(&DecayingScalarFunction::exponential(c, v)?, nu, t)?
    };
    Ok((lhs.value() - rhs).abs())
}

/// Least-squares fit of `log ‖A^σ F(t)‖∞ = log c_σ − δ t` over `times`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub delta: f64,
    pub c_sigma: f64,
}

pub fn forcing_decay_fit(
    f: &ExponentialForcing,
    cfg: &InhomogeneousConfig,
    op: &OperatorHandle,
    times: &[f64],
) -> Result<DecayFit> {
    if times.len() < 2 {
        return Err(Error::InvalidArgument("decay fit needs at least two times"));
    }
    let mut pts = Vec::with_capacity(times.len());
    for &s in times {
        let v = op
            .power_apply(cfg.sigma, &build_f(f, cfg, op, s)?)?
            .norm_inf();
        if v <= 0.0 {
            return Err(Error::InvalidArgument("forcing vanishes; no decay to fit"));
        }
        pts.push((s, v.ln()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("decay fit needs distinct times"));
    }
    let slope = sxy / sxx;
    Ok(DecayFit {
        delta: -slope,
        c_sigma: (my - slope * mx).exp(),
    })
}
