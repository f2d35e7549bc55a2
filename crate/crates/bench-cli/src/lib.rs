//! Benchmark harness for `batchode`: builds perturbed batches, runs the
//! integrators over outer windows, and reports CSV snapshots, convergence
//! ladders, worker-scaling timings and JSON summaries.

pub mod config;
pub mod error;
pub mod report;
pub mod run;

pub use config::{Mode, ProblemKind, RunConfig, SolverKind};
pub use error::{BenchError, Result};
pub use run::{run, run_convergence, run_integrate, run_scaling};
