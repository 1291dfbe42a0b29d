//! A validated configuration: operator, data and solver parameters.

use fracsinc_core::contour::{validate_angle, FractionalOrder};
use fracsinc_core::exec::NodeExecutor;
use fracsinc_core::homogeneous::solve_homogeneous_with;
use fracsinc_core::inhomogeneous::{
    order_from_alpha, scalar_closed_form, solve_inhomogeneous_with, ExponentialForcing,
    InhomogeneousConfig,
};
use fracsinc_core::operator::{make_tridiagonal_laplacian, OperatorHandle, StateVector};
use fracsinc_core::Complex64;

use crate::config::{ExperimentConfig, OperatorSpec, Problem, VectorSpec};
use crate::error::{HarnessError, Result};

#[derive(Debug, Clone)]
struct Forcing {
    forcing: ExponentialForcing,
    q: u32,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    config: ExperimentConfig,
    op: OperatorHandle,
    u0: StateVector,
    order: FractionalOrder,
    forcing: Option<Forcing>,
}

/// Solver output at one quadrature order.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub value: StateVector,
    pub decay_factor: f64,
}

fn config_err(what: impl std::fmt::Display) -> HarnessError {
    HarnessError::Config(what.to_string())
}

fn resolve_vector(spec: &VectorSpec, op: &OperatorHandle, what: &str) -> Result<StateVector> {
    let values = match spec {
        VectorSpec::Values(v) => {
            if v.len() != op.dim() {
                return Err(config_err(format!(
                    "{what} has {} entries, operator dimension is {}",
                    v.len(),
                    op.dim()
                )));
            }
            v.clone()
        }
        VectorSpec::Mode { mode } => {
            if *mode == 0 || *mode > op.dim() {
                return Err(config_err(format!(
                    "{what}: mode {mode} outside 1..={}",
                    op.dim()
                )));
            }
            op.eigenvector(mode - 1)
        }
    };
    StateVector::from_real(&values).map_err(|e| config_err(format!("{what}: {e}")))
}

impl Experiment {
    /// Builds the operator and data and re-checks every solver precondition
    /// that can be decided without running the quadrature.
    pub fn prepare(config: ExperimentConfig) -> Result<Self> {
        let order =
            FractionalOrder::new(config.alpha).map_err(|e| config_err(format!("alpha: {e}")))?;
        if !(config.gamma > 0.0 && config.gamma.is_finite()) {
            return Err(config_err("gamma must be positive and finite"));
        }
        if !(config.t >= 0.0 && config.t.is_finite()) {
            return Err(config_err("t must be finite and nonnegative"));
        }
        if config.n_list.contains(&0) {
            return Err(config_err("N_list entries must be >= 1"));
        }
        let op = match &config.operator {
            OperatorSpec::Diagonal(l) => OperatorHandle::diagonal(l.clone(), config.phi),
            OperatorSpec::Laplacian(n) => {
                make_tridiagonal_laplacian(*n).and_then(|op| op.with_sector_angle(config.phi))
            }
        }
        .map_err(|e| config_err(format!("operator: {e}")))?;
        validate_angle(order, &op.sector()).map_err(|e| config_err(format!("phi: {e}")))?;

        let u0 = match &config.initial_data {
            Some(spec) => resolve_vector(spec, &op, "initial_data")?,
            None => match op.kind() {
                fracsinc_core::operator::OperatorKind::Diagonal(l) => {
                    StateVector::from_real(&vec![1.0; l.len()]).map_err(config_err)?
                }
                _ => resolve_vector(&VectorSpec::Mode { mode: 1 }, &op, "initial_data")?,
            },
        };

        let forcing = match (config.problem, &config.forcing) {
            (Problem::Homogeneous, None) => None,
            (Problem::Homogeneous, Some(_)) => {
                return Err(config_err("forcing given for a homogeneous problem"))
            }
            (Problem::Inhomogeneous, None) => {
                return Err(config_err("inhomogeneous problem needs a forcing table"))
            }
            (Problem::Inhomogeneous, Some(spec)) => {
                let q = order_from_alpha(config.alpha)
                    .map_err(|e| config_err(format!("alpha: {e}")))?;
                let direction = resolve_vector(&spec.direction, &op, "forcing.direction")?;
                let forcing = ExponentialForcing::new(spec.c, direction)
                    .map_err(|e| config_err(format!("forcing: {e}")))?;
                InhomogeneousConfig::new(q, 1, config.gamma, config.t).map_err(config_err)?;
                let root = spec.c.powf(1.0 / q as f64);
                if op
                    .eigenvalues()
                    .iter()
                    .any(|&l| (l - root).abs() <= 1e-12 * l)
                {
                    return Err(config_err(
                        "forcing rate c^(1/q) coincides with an eigenvalue",
                    ));
                }
                Some(Forcing { forcing, q })
            }
        };

        Ok(Self {
            config,
            op,
            u0,
            order,
            forcing,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn operator(&self) -> &OperatorHandle {
        &self.op
    }

    pub fn initial_data(&self) -> &StateVector {
        &self.u0
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    /// Forcing and `q` of an inhomogeneous problem.
    pub fn forcing(&self) -> Option<(&ExponentialForcing, u32)> {
        self.forcing.as_ref().map(|f| (&f.forcing, f.q))
    }

    pub fn solve<E: NodeExecutor + ?Sized>(&self, exec: &E, n: usize) -> Result<Solution> {
        let cfg = &self.config;
        let ctx = |e| HarnessError::numeric(format!("N={n}"), e);
        match &self.forcing {
            None => {
                let r = solve_homogeneous_with(
                    exec, &self.op, &self.u0, self.order, cfg.t, n, cfg.gamma,
                )
                .map_err(ctx)?;
                Ok(Solution {
                    value: r.value,
                    decay_factor: r.decay_factor,
                })
            }
            Some(f) => {
                let icfg = InhomogeneousConfig::new(f.q, n, cfg.gamma, cfg.t).map_err(ctx)?;
                let r = solve_inhomogeneous_with(exec, &self.op, &self.u0, &f.forcing, &icfg)
                    .map_err(ctx)?;
                Ok(Solution {
                    value: r.value,
                    decay_factor: r.decay_factor,
                })
            }
        }
    }

    /// Exact solution at `t`, computed per eigencomponent.
    pub fn oracle(&self) -> Result<StateVector> {
        let ctx = |e| HarnessError::numeric("oracle", e);
        let t = self.config.t;
        let lam = self.op.eigenvalues();
        let uc = self.op.spectral_coefficients(&self.u0).map_err(ctx)?;
        let coeffs: Vec<Complex64> = match &self.forcing {
            None => {
                let p = self.order.power();
                lam.iter()
                    .zip(&uc)
                    .map(|(&l, &u)| u * (-l.powf(p) * t).exp())
                    .collect()
            }
            Some(f) => {
                let vc = self
                    .op
                    .spectral_coefficients(f.forcing.direction())
                    .map_err(ctx)?;
                let c = f.forcing.rate();
                lam.iter()
                    .zip(uc.iter().zip(&vc))
                    .map(|(&l, (u, v))| {
                        Complex64::new(
                            scalar_closed_form(l, f.q, c, v.re, u.re, t),
                            scalar_closed_form(l, f.q, c, v.im, u.im, t),
                        )
                    })
                    .collect()
            }
        };
        self.op.from_spectral_coefficients(&coeffs).map_err(ctx)
    }
}
