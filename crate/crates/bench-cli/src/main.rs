use std::path::PathBuf;
use std::process::ExitCode;

use batchode_bench::{run, Mode, ProblemKind, RunConfig, SolverKind};
use clap::Parser;

/// Batched ODE integration benchmark.
#[derive(Debug, Parser)]
#[command(name = "batchode-bench", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "pleiades")]
    problem: ProblemKind,
    #[arg(long, value_enum, default_value = "rkck")]
    solver: SolverKind,
    #[arg(long, value_enum, default_value = "integrate")]
    mode: Mode,
    #[arg(long, default_value_t = 1)]
    num_systems: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t_end: f64,
    #[arg(long, default_value_t = 0.1)]
    outer_step: f64,
    /// RKCK relative tolerance.
    #[arg(long, default_value_t = 1e-10)]
    eps: f64,
    /// RKC absolute tolerance.
    #[arg(long, default_value_t = 1e-10)]
    abs_tol: f64,
    /// RKC relative tolerance.
    #[arg(long, default_value_t = 1e-6)]
    rel_tol: f64,
    /// Worker threads; for `scaling`, the largest count tried.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative perturbation magnitude applied to every initial component.
    #[arg(long, default_value_t = 0.01)]
    perturb: f64,
    #[arg(long, default_value_t = 64)]
    heat_points: usize,
    /// Largest step of the convergence ladder.
    #[arg(long)]
    h_start: Option<f64>,
    /// Number of halvings in the convergence ladder.
    #[arg(long, default_value_t = 4)]
    levels: usize,
    #[arg(long, default_value_t = 5)]
    rkc_stages: usize,
    /// CSV output path.
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON summary path; printed to stdout when omitted.
    #[arg(long)]
    summary: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        RunConfig {
            problem: c.problem,
            solver: c.solver,
            mode: c.mode,
            num_systems: c.num_systems,
            t0: c.t0,
            t_end: c.t_end,
            outer_step: c.outer_step,
            eps: c.eps,
            abs_tol: c.abs_tol,
            rel_tol: c.rel_tol,
            workers: c.workers,
            seed: c.seed,
            perturb: c.perturb,
            heat_points: c.heat_points,
            h_start: c.h_start,
            levels: c.levels,
            rkc_stages: c.rkc_stages,
            output: c.output,
            summary: c.summary,
        }
    }
}

fn main() -> ExitCode {
    let config: RunConfig = Cli::parse().into();
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
