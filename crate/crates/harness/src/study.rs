//! Convergence studies and their CSV reports.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use fracsinc_core::exec::{NodeExecutor, Serial};

use crate::error::{HarnessError, Result};
use crate::experiment::Experiment;

pub const CSV_HEADER: &str = "N,error,decay_factor,wall_time_ms";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub n: usize,
    /// Max-norm error against the oracle at the final time.
    pub error: f64,
    pub decay_factor: f64,
    pub wall_time_ms: f64,
}

/// Whether rows carry measured wall time or a fixed `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Timing {
    Measured,
    Disabled,
}

/// Serial study with measured timings.
pub fn run_convergence_study(exp: &Experiment) -> Result<Vec<ConvergenceRow>> {
    run_convergence_study_with(&Serial, exp, Timing::Measured)
}

/// Solves for every `N` in the config (sorted ascending, duplicates
/// dropped) and compares against the oracle.
pub fn run_convergence_study_with<E: NodeExecutor + ?Sized>(
    exec: &E,
    exp: &Experiment,
    timing: Timing,
) -> Result<Vec<ConvergenceRow>> {
    let mut ns = exp.config().n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    if ns.is_empty() {
        return Ok(Vec::new());
    }
    let exact = exp.oracle()?;
    ns.into_iter()
        .map(|n| {
            let start = Instant::now();
            let sol = exp.solve(exec, n)?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let diff = sol
                .value
                .sub(&exact)
                .map_err(|e| HarnessError::numeric(format!("N={n}"), e))?;
            Ok(ConvergenceRow {
                n,
                error: diff.norm_inf(),
                decay_factor: sol.decay_factor,
                wall_time_ms: match timing {
                    Timing::Measured => elapsed,
                    Timing::Disabled => 0.0,
                },
            })
        })
        .collect()
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text of `rows`: the fixed header, one line per row, every line
/// terminated by `\n`, reals with 17 significant digits.
pub fn format_report(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            sci(r.error),
            sci(r.decay_factor),
            sci(r.wall_time_ms)
        ));
    }
    out
}

pub fn emit_report(rows: &[ConvergenceRow], path: &Path) -> Result<()> {
    write_text(path, &format_report(rows))
}

pub fn read_report(path: &Path) -> Result<Vec<ConvergenceRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| HarnessError::io(path, e.into()))?;
    reader
        .deserialize()
        .map(|r| r.map_err(|e: csv::Error| HarnessError::io(path, e.into())))
        .collect()
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| HarnessError::io(path, e))
}
