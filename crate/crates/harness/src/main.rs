use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fracsinc_core::exec::{NodeExecutor, Serial};
use fracsinc_harness::parallel::with_threads;
use fracsinc_harness::{
    emit_report, emit_solution, load_experiment, run_convergence_study_with, run_residual_suite,
    Experiment, HarnessError, RayonExecutor, Result, Timing,
};

#[derive(Parser)]
#[command(
    version,
    about = "Sinc-quadrature solver for fractional evolution equations"
)]
struct Cli {
    /// Worker threads for node evaluation (serial when omitted)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write 0 instead of measured wall time, for reproducible CSV
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve at the largest N of N_list and write the solution vector
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Overrides output_path from the config
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the convergence study over N_list and write the CSV report
    Converge {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the residual suite (diagonal operators)
    Verify {
        #[arg(long)]
        config: PathBuf,
    },
}

fn out_path(exp: &Experiment, out: Option<PathBuf>) -> PathBuf {
    out.unwrap_or_else(|| exp.config().output_path.clone())
}

fn solve<E: NodeExecutor>(exec: &E, exp: &Experiment, out: &Path) -> Result<bool> {
    let n = exp
        .config()
        .n_list
        .iter()
        .copied()
        .max()
        .ok_or_else(|| HarnessError::Config("N_list is empty".into()))?;
    let sol = exp.solve(exec, n)?;
    emit_solution(&sol.value, out)?;
    println!(
        "N={n} decay_factor={:e} -> {}",
        sol.decay_factor,
        out.display()
    );
    Ok(true)
}

fn converge<E: NodeExecutor>(
    exec: &E,
    exp: &Experiment,
    out: &Path,
    timing: Timing,
) -> Result<bool> {
    let rows = run_convergence_study_with(exec, exp, timing)?;
    emit_report(&rows, out)?;
    for r in &rows {
        println!(
            "N={:<5} error={:.3e} decay_factor={:.3e}",
            r.n, r.error, r.decay_factor
        );
    }
    Ok(true)
}

fn verify(exp: &Experiment) -> Result<bool> {
    let report = run_residual_suite(exp)?;
    for l in &report.lines {
        println!(
            "{} lambda={:e} residual={:.3e} integrated={:.3e}",
            if l.pass { "PASS" } else { "FAIL" },
            l.eigenvalue,
            l.residual,
            l.equivalence
        );
    }
    println!(
        "max residual {:.3e}, max integrated {:.3e}",
        report.max_residual, report.max_equivalence
    );
    Ok(report.pass)
}

fn dispatch<E: NodeExecutor>(exec: &E, cli: Cli) -> Result<bool> {
    let timing = if cli.no_timing {
        Timing::Disabled
    } else {
        Timing::Measured
    };
    match cli.command {
        Command::Solve { config, out } => {
            let exp = load_experiment(&config)?;
            solve(exec, &exp, &out_path(&exp, out))
        }
        Command::Converge { config, out } => {
            let exp = load_experiment(&config)?;
            converge(exec, &exp, &out_path(&exp, out), timing)
        }
        Command::Verify { config } => verify(&load_experiment(&config)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.threads {
        None => dispatch(&Serial, cli),
        Some(0) => Err(HarnessError::Config("--threads must be >= 1".into())),
        Some(k) => with_threads(k, || dispatch(&RayonExecutor, cli))
            .unwrap_or_else(|e| Err(HarnessError::Config(format!("thread pool: {e}")))),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
