//! Residual checks of the fractional equation, per eigencomponent.

use fracsinc_core::exec::Serial;
use fracsinc_core::fracderiv;
use fracsinc_core::inhomogeneous;
use fracsinc_core::operator::OperatorKind;

use crate::error::{HarnessError, Result};
use crate::experiment::Experiment;

/// Pass threshold for both the differential and the integrated residual.
pub const RESIDUAL_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualLine {
    pub eigenvalue: f64,
    /// Differential form, maximised over the probe times.
    pub residual: f64,
    /// Integrated (equivalent) form, maximised over the probe times.
    pub equivalence: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub lines: Vec<ResidualLine>,
    pub max_residual: f64,
    pub max_equivalence: f64,
    pub pass: bool,
}

impl ResidualReport {
    fn from_lines(lines: Vec<ResidualLine>) -> Self {
        let max_residual = lines.iter().map(|l| l.residual).fold(0.0, f64::max);
        let max_equivalence = lines.iter().map(|l| l.equivalence).fold(0.0, f64::max);
        let pass = lines.iter().all(|l| l.pass);
        Self {
            lines,
            max_residual,
            max_equivalence,
            pass,
        }
    }
}

/// Probe times `0`, `t/2`, `t`.
fn probe_times(t: f64) -> Vec<f64> {
    if t > 0.0 {
        vec![0.0, 0.5 * t, t]
    } else {
        vec![0.0]
    }
}

/// [`run_residual_suite_with`] for the configured order.
pub fn run_residual_suite(exp: &Experiment) -> Result<ResidualReport> {
    run_residual_suite_with(exp, exp.config().alpha)
}

/// Homogeneous problems: the candidate `e^{−λ^{1/(1+a)} t}`, `a` the
/// `solution_alpha`, is checked against the equation of the configured
/// order. Inhomogeneous problems: the computed solution at the largest `N`
/// is checked against the integrated equation (`solution_alpha` unused).
pub fn run_residual_suite_with(exp: &Experiment, solution_alpha: f64) -> Result<ResidualReport> {
    if !matches!(exp.operator().kind(), OperatorKind::Diagonal(_)) {
        return Err(HarnessError::Config(
            "residual suite needs a diagonal operator".into(),
        ));
    }
    let alpha = exp.config().alpha;
    let t = exp.config().t;
    let lam = exp.operator().eigenvalues();
    let ctx = |l: f64| move |e| HarnessError::numeric(format!("residual, eigenvalue {l}"), e);

    let lines = match exp.forcing() {
        None => {
            if !(solution_alpha > -1.0 && solution_alpha < 1.0) {
                return Err(HarnessError::Config(format!(
                    "solution order {solution_alpha} outside (-1, 1)"
                )));
            }
            let mut lines = Vec::with_capacity(lam.len());
            for &l in &lam {
                let rate = l.powf(1.0 / (1.0 + solution_alpha));
                let mut residual = 0.0f64;
                let mut equivalence = 0.0f64;
                for s in probe_times(t) {
                    residual = residual
                        .max(fracderiv::residual_for_rate(l, alpha, rate, s).map_err(ctx(l))?);
                    equivalence = equivalence.max(
                        fracderiv::integral_equation_residual(l, alpha, rate, s).map_err(ctx(l))?,
                    );
                }
                lines.push(ResidualLine {
                    eigenvalue: l,
                    residual,
                    equivalence,
                    pass: residual < RESIDUAL_TOL && equivalence < RESIDUAL_TOL,
                });
            }
            lines
        }
        Some((forcing, q)) => {
            let n = exp.config().n_list.iter().copied().max().ok_or_else(|| {
                HarnessError::Config("residual suite needs a nonempty N_list".into())
            })?;
            let sol = exp.solve(&Serial, n)?;
            let mut lines = Vec::with_capacity(lam.len());
            for (j, &l) in lam.iter().enumerate() {
                let v = forcing.direction()[j].re;
                let u0 = exp.initial_data()[j].re;
                let r = inhomogeneous::integral_equation_residual(
                    l,
                    q,
                    forcing.rate(),
                    v,
                    u0,
                    t,
                    sol.value[j].re,
                )
                .map_err(ctx(l))?;
                lines.push(ResidualLine {
                    eigenvalue: l,
                    residual: r,
                    equivalence: r,
                    pass: r < RESIDUAL_TOL,
                });
            }
            lines
        }
    };
    Ok(ResidualReport::from_lines(lines))
}
