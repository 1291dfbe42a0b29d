//! Experiment harness for `fracsinc-core`: TOML configs, convergence
//! studies against analytic oracles, residual suites and CSV reports.

pub mod config;
mod error;
pub mod experiment;
pub mod parallel;
pub mod residual;
pub mod study;

pub use config::{ExperimentConfig, ForcingSpec, OperatorSpec, Problem, VectorSpec};
pub use error::{HarnessError, Result};
pub use experiment::{Experiment, Solution};
pub use parallel::RayonExecutor;
pub use residual::{run_residual_suite, run_residual_suite_with, ResidualReport};
pub use study::{
    emit_report, format_report, read_report, run_convergence_study, run_convergence_study_with,
    ConvergenceRow, Timing,
};

use std::path::Path;

use fracsinc_core::operator::StateVector;

/// Loads and validates a config file.
pub fn load_experiment(path: &Path) -> Result<Experiment> {
    Experiment::prepare(ExperimentConfig::load(path)?)
}

/// CSV `index,value_re,value_im` of a solution vector.
pub fn format_solution(value: &StateVector) -> String {
    let mut out = String::from("index,value_re,value_im\n");
    for (i, z) in value.iter().enumerate() {
        out.push_str(&format!("{i},{:.16e},{:.16e}\n", z.re, z.im));
    }
    out
}

pub fn emit_solution(value: &StateVector, path: &Path) -> Result<()> {
    study::write_text(path, &format_solution(value))
}
