//! Right-sided Riemann–Liouville operators on the semi-axis,
//!
//! ```text
//! D^{-μ} f(t) = 1/Γ(μ) ∫_t^∞ (s − t)^{μ−1} f(s) ds,              μ > 0,
//! D^ν f(t)    = (−d/dt)^{[ν]+1} D^{ν−[ν]−1} f(t),                 ν >= 0,
//! ```
//!
//! for exponentials (closed form `c^ν e^{−ct}`) and for tabulated profiles
//! with an exponential tail (numeric). The numeric path is used as an
//! independent check of computed solutions.

use alloc::vec::Vec;
#[allow(unused_imports)] // float methods come from std when it is linked
use num_traits::Float;

use crate::numdiff::central_derivative;
use crate::quad::{integrate, QuadOptions};
use crate::special::{gamma, upper_gamma_scaled};
use crate::{Error, Result};

/// Number of grid points used by [`tabulate`] in the residual checks.
pub const RESIDUAL_GRID_POINTS: usize = 2048;

/// Truncation length in units of the decay time `1/c`.
pub const TAIL_LENGTHS: f64 = 40.0;

const STENCIL: usize = 8;

/// Samples on a strictly increasing grid, continued past the last node by
/// `f(s) = f(end) e^{−r (s − end)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedProfile {
    grid: Vec<f64>,
    values: Vec<f64>,
    tail_rate: f64,
}

impl TabulatedProfile {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail_rate(&self) -> f64 {
        self.tail_rate
    }

    pub fn start(&self) -> f64 {
        self.grid[0]
    }

    pub fn end(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    /// Local 8-point Lagrange interpolation inside the grid (and for a short
    /// continuation to the left of it), exponential tail beyond it.
    pub fn sample(&self, s: f64) -> f64 {
        let n = self.grid.len();
        let end = self.end();
        if s > end {
            return self.values[n - 1] * (-self.tail_rate * (s - end)).exp();
        }
        let i = self.grid.partition_point(|&g| g <= s).saturating_sub(1);
        let lo = i.saturating_sub(STENCIL / 2 - 1).min(n - STENCIL);
        let xs = &self.grid[lo..lo + STENCIL];
        let ys = &self.values[lo..lo + STENCIL];
        let mut acc = 0.0;
        for j in 0..STENCIL {
            let mut w = 1.0;
            for m in 0..STENCIL {
                if m != j {
                    w *= (s - xs[m]) / (xs[j] - xs[m]);
                }
            }
            acc += w * ys[j];
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecayingScalarFunction {
    /// `scale · e^{−rate·s}`.
    Exponential {
        rate: f64,
        scale: f64,
    },
    Tabulated(TabulatedProfile),
}

impl DecayingScalarFunction {
    pub fn exponential(rate: f64, scale: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::InvalidArgument("exponential rate must be positive"));
        }
        if !scale.is_finite() {
            return Err(Error::InvalidArgument("exponential scale must be finite"));
        }
        Ok(Self::Exponential { rate, scale })
    }

    /// Tabulated profile. A nonpositive `tail_rate` is accepted here and
    /// reported as [`Error::TailDivergence`] when an integral is requested.
    pub fn tabulated(grid: Vec<f64>, values: Vec<f64>, tail_rate: f64) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if grid.len() < STENCIL {
            return Err(Error::InvalidArgument(
                "tabulated profile needs at least 8 points",
            ));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|g| !g.is_finite()) {
            return Err(Error::InvalidArgument(
                "tabulation grid must be finite and increasing",
            ));
        }
        if values.iter().any(|v| !v.is_finite()) || tail_rate.is_nan() {
            return Err(Error::InvalidArgument("tabulated values must be finite"));
        }
        Ok(Self::Tabulated(TabulatedProfile {
            grid,
            values,
            tail_rate,
        }))
    }

    pub fn sample(&self, s: f64) -> f64 {
        match self {
            Self::Exponential { rate, scale } => scale * (-rate * s).exp(),
            Self::Tabulated(tab) => tab.sample(s),
        }
    }
}

/// Tabulates `f` on `points` equispaced nodes of `[start, end]`.
pub fn tabulate<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    end: f64,
    points: usize,
    tail_rate: f64,
) -> Result<DecayingScalarFunction> {
    if !(end > start) || points < 2 {
        return Err(Error::InvalidArgument(
            "tabulation needs end > start and >= 2 points",
        ));
    }
    let step = (end - start) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points)
        .map(|i| {
            if i + 1 == points {
                end
            } else {
                start + step * i as f64
            }
        })
        .collect();
    let values = grid.iter().map(|&s| f(s)).collect();
    DecayingScalarFunction::tabulated(grid, values, tail_rate)
}

/// Tabulated `scale · e^{−rate s}` on `[0, t_max + 40/rate]`.
pub fn tabulate_exponential(rate: f64, scale: f64, t_max: f64) -> Result<DecayingScalarFunction> {
    if !(rate > 0.0) {
        return Err(Error::TailDivergence { rate });
    }
    tabulate(
        |s| scale * (-rate * s).exp(),
        0.0,
        t_max + TAIL_LENGTHS / rate,
        RESIDUAL_GRID_POINTS,
        rate,
    )
}

/// Right Riemann–Liouville derivative of order `nu ∈ (−3, 2)` (integral for
/// `nu < 0`) at `t >= 0`.
pub fn rl_right(f: &DecayingScalarFunction, nu: f64, t: f64) -> Result<f64> {
    if !(nu > -3.0 && nu < 2.0) {
        return Err(Error::InvalidArgument("order must lie in (-3, 2)"));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument("t must be finite and nonnegative"));
    }
    match f {
        DecayingScalarFunction::Exponential { rate, scale } => {
            Ok(scale * rate.powf(nu) * (-rate * t).exp())
        }
        DecayingScalarFunction::Tabulated(tab) => {
            if tab.tail_rate <= 0.0 {
                return Err(Error::TailDivergence {
                    rate: tab.tail_rate,
                });
            }
            if t < tab.start() {
                return Err(Error::InvalidArgument("t lies left of the tabulation grid"));
            }
            rl_tabulated(tab, nu, t)
        }
    }
}

fn rl_tabulated(tab: &TabulatedProfile, nu: f64, t: f64) -> Result<f64> {
    if nu == 0.0 {
        return Ok(tab.sample(t));
    }
    if nu < 0.0 {
        return fractional_integral(tab, -nu, t);
    }
    let n = nu.floor() as usize + 1;
    let inner = nu - n as f64;
    // Keep rate * step small for fast-decaying profiles.
    let step = (1e-4 * t.max(1.0)).min(1e-2 / tab.tail_rate);
    let d = central_derivative(|s| fractional_integral(tab, -inner, s), t, n, step)?;
    Ok(if n % 2 == 1 { -d } else { d })
}

/// `D^{-μ} f(t)`, `μ ∈ (0, 3)`.
///
/// With `β = μ − 1 = k + e`, `e ∈ (−1, 0]`, the substitution `τ = σ^m`,
/// `m = 1/(1 + e)`, turns `τ^β dτ` into `m σ^{mk} dσ`, removing the endpoint
/// singularity. Beyond the last grid node the tail is integrated exactly.
fn fractional_integral(tab: &TabulatedProfile, mu: f64, t: f64) -> Result<f64> {
    let beta = mu - 1.0;
    let k = beta.ceil().max(0.0);
    let e = beta - k;
    let m = 1.0 / (1.0 + e);
    let mk = m * k;
    let big_t = (tab.end() - t).max(0.0);
    let body = if big_t > 0.0 {
        let upper = big_t.powf(1.0 / m);
        let opts = QuadOptions {
            abs_tol: 1e-300,
            ..QuadOptions::default()
        };
        integrate(
            |sigma| {
                let w = if mk == 0.0 { m } else { m * sigma.powf(mk) };
                w * tab.sample(t + sigma.powf(m))
            },
            0.0,
            upper,
            opts,
        )?
    } else {
        0.0
    };
    let r = tab.tail_rate;
    let f_cut = tab.sample(t + big_t);
    let tail = f_cut * r.powf(-mu) * upper_gamma_scaled(mu, r * big_t);
    Ok(body / gamma(mu) + tail / gamma(mu))
}

/// `|−D^{1+α} u(t) + λ u(t)|` for `u = e^{−rate·s}`, with `D^{1+α}` from the
/// numeric tabulated path.
pub fn residual_for_rate(lambda: f64, alpha: f64, rate: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let u = tabulate_exponential(rate, 1.0, t)?;
    let d = rl_right(&u, 1.0 + alpha, t)?;
    Ok((-d + lambda * u.sample(t)).abs())
}

/// [`residual_for_rate`] at the exact rate `λ^{1/(1+α)}`.
pub fn residual_homogeneous(lambda: f64, alpha: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidArgument("lambda must be positive"));
    }
    check_alpha(alpha)?;
    residual_for_rate(lambda, alpha, lambda.powf(1.0 / (1.0 + alpha)), t)
}

/// `|u(t) − λ D^{−(1+α)} u(t)|` for `u = e^{−rate·s}`: the integrated form
/// of the homogeneous equation.
pub fn integral_equation_residual(lambda: f64, alpha: f64, rate: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let u = tabulate_exponential(rate, 1.0, t)?;
    let i = rl_right(&u, -(1.0 + alpha), t)?;
    Ok((u.sample(t) - lambda * i).abs())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidOrder(alpha))
    }
}

/// Sample points of the limit conditions.
pub const LIMIT_SAMPLES: [f64; 3] = [10.0, 20.0, 40.0];

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub ok: bool,
    /// `(s − t)^{α+1} · D^α u(s)` at [`LIMIT_SAMPLES`].
    pub derivative_terms: [f64; 3],
    /// `(s − t)^α · D^{α−1} u(s)` at [`LIMIT_SAMPLES`].
    pub integral_terms: [f64; 3],
    /// Error that prevented evaluation, if any.
    pub error: Option<Error>,
}

/// Checks that both limit quantities decay monotonically towards zero over
/// `s ∈ {10, 20, 40}`. Evaluation errors (e.g. a non-decaying profile)
/// count as failure.
pub fn verify_limit_conditions(u: &DecayingScalarFunction, alpha: f64, t: f64) -> LimitReport {
    let mut report = LimitReport {
        ok: false,
        derivative_terms: [0.0; 3],
        integral_terms: [0.0; 3],
        error: None,
    };
    if let Err(e) = check_alpha(alpha) {
        report.error = Some(e);
        return report;
    }
    for (i, &s) in LIMIT_SAMPLES.iter().enumerate() {
        let gap = s - t;
        let d = rl_right(u, alpha, s).map(|v| gap.powf(alpha + 1.0) * v);
        let g = rl_right(u, alpha - 1.0, s).map(|v| gap.powf(alpha) * v);
        match (d, g) {
            (Ok(d), Ok(g)) => {
                report.derivative_terms[i] = d;
                report.integral_terms[i] = g;
            }
            (Err(e), _) | (_, Err(e)) => {
                report.error = Some(e);
                return report;
            }
        }
    }
    report.ok = decays(&report.derivative_terms) && decays(&report.integral_terms);
    report
}

/// [`verify_limit_conditions`] for `u = e^{−λ^{1/(1+α)} s}` on the numeric path.
pub fn verify_limit_conditions_exponential(lambda: f64, alpha: f64, t: f64) -> LimitReport {
    let rate = lambda.powf(1.0 / (1.0 + alpha));
    match tabulate_exponential(rate, 1.0, LIMIT_SAMPLES[2]) {
        Ok(u) => verify_limit_conditions(&u, alpha, t),
        Err(e) => LimitReport {
            ok: false,
            derivative_terms: [0.0; 3],
            integral_terms: [0.0; 3],
            error: Some(e),
        },
    }
}

fn decays(v: &[f64; 3]) -> bool {
    let a = [v[0].abs(), v[1].abs(), v[2].abs()];
    a.iter().all(|x| x.is_finite())
        && a[1] <= a[0]
        && a[2] <= a[1]
        && a[2] <= (1e-3 * a[0]).max(f64::MIN_POSITIVE)
}
