//! CSV and JSON output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use batchode::stats::BatchStats;
use batchode::BatchStates;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{BenchError, Result};

/// Formats a value with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| BenchError::io(path, e))
}

/// Streams one row per system per outer window.
pub struct SnapshotCsv {
    out: BufWriter<File>,
    path: std::path::PathBuf,
}

impl SnapshotCsv {
    pub fn create(path: &Path, dim: usize) -> Result<Self> {
        let mut out = create(path)?;
        let mut header = String::from("outer_step,t,system");
        for j in 0..dim {
            header.push_str(&format!(",var{j}"));
        }
        writeln!(out, "{header}").map_err(|e| BenchError::io(path, e))?;
        Ok(Self {
            out,
            path: path.to_path_buf(),
        })
    }

    pub fn write_window(&mut self, index: usize, t: f64, batch: &BatchStates) -> Result<()> {
        let mut line = String::new();
        for i in 0..batch.num_systems() {
            line.clear();
            line.push_str(&format!("{index},{},{i}", fmt_f64(t)));
            for j in 0..batch.dim() {
                line.push(',');
                line.push_str(&fmt_f64(batch.get(i, j)));
            }
            writeln!(self.out, "{line}").map_err(|e| BenchError::io(&self.path, e))?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush().map_err(|e| BenchError::io(&self.path, e))
    }
}

/// Serializable mirror of [`BatchStats`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsSummary {
    pub systems: usize,
    pub windows: usize,
    pub steps_accepted: u64,
    pub steps_rejected: u64,
    pub rhs_evals: u64,
    pub spec_rad_evals: u64,
    pub spec_rad_unconverged: u64,
    pub h_min_seen: f64,
    pub h_max_seen: f64,
    pub cold_starts: u64,
    pub underflowed_systems: Vec<usize>,
}

impl From<&BatchStats> for StatsSummary {
    fn from(s: &BatchStats) -> Self {
        Self {
            systems: s.systems,
            windows: s.windows,
            steps_accepted: s.steps_accepted,
            steps_rejected: s.steps_rejected,
            rhs_evals: s.rhs_evals,
            spec_rad_evals: s.spec_rad_evals,
            spec_rad_unconverged: s.spec_rad_unconverged,
            h_min_seen: s.h_min_seen,
            h_max_seen: s.h_max_seen,
            cold_starts: s.cold_starts,
            underflowed_systems: s.underflowed_systems.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegrateSummary {
    pub mode: &'static str,
    pub workers: usize,
    pub outer_steps: usize,
    /// Mean seconds per outer window, excluding file output.
    pub wall_clock_per_outer_step: f64,
    pub stats: StatsSummary,
    pub config: RunConfig,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceSummary {
    pub mode: &'static str,
    pub method_order: u32,
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub config: RunConfig,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub workers: usize,
    pub wall_clock_per_outer_step: f64,
    pub speedup_vs_1: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingSummary {
    pub mode: &'static str,
    pub rows: Vec<ScalingRow>,
    /// Final states and stats agreed bit for bit across every worker count.
    pub outputs_identical: bool,
    pub available_parallelism: usize,
    pub stats: StatsSummary,
    pub config: RunConfig,
}

/// Writes `value` as pretty JSON to `path`, or to stdout when `path` is unset.
pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => {
            let mut out = create(p)?;
            writeln!(out, "{text}")
                .and_then(|_| out.flush())
                .map_err(|e| BenchError::io(p, e))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn write_convergence_csv(path: &Path, points: &[(f64, f64)]) -> Result<()> {
    let mut out = create(path)?;
    let mut body = String::from("h,error\n");
    for &(h, e) in points {
        body.push_str(&format!("{},{}\n", fmt_f64(h), fmt_f64(e)));
    }
    out.write_all(body.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| BenchError::io(path, e))
}

pub fn write_scaling_csv(path: &Path, rows: &[ScalingRow]) -> Result<()> {
    let mut out = create(path)?;
    let mut body = String::from("workers,wall_clock_per_outer_step,speedup_vs_1\n");
    for r in rows {
        body.push_str(&format!(
            "{},{},{}\n",
            r.workers,
            fmt_f64(r.wall_clock_per_outer_step),
            fmt_f64(r.speedup_vs_1)
        ));
    }
    out.write_all(body.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| BenchError::io(path, e))
}
