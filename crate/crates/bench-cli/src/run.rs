//! The three run modes.

use std::time::Instant;

use batchode::convergence::{convergence_study, halving_ladder, FixedStepMethod};
use batchode::driver::outer_loop;
use batchode::problems::{ExpDecay, Harmonic};
use batchode::stats::BatchStats;
use batchode::BatchStates;

use crate::config::{Mode, ProblemKind, RunConfig, SolverKind};
use crate::error::Result;
use crate::report::{
    write_convergence_csv, write_json, write_scaling_csv, ConvergenceSummary, IntegrateSummary,
    ScalingRow, ScalingSummary, SnapshotCsv,
};

/// Result of one timed outer loop.
#[derive(Debug, Clone)]
pub struct TimedRun {
    pub final_batch: BatchStates,
    pub stats: BatchStats,
    pub window_seconds: Vec<f64>,
}

impl TimedRun {
    pub fn mean_window_seconds(&self) -> f64 {
        self.window_seconds.iter().sum::<f64>() / self.window_seconds.len().max(1) as f64
    }
}

/// Runs the outer loop with `workers`, timing each window and handing every
/// snapshot to `sink`. Time spent inside `sink` is not counted.
pub fn timed_outer_loop(
    config: &RunConfig,
    batch: &BatchStates,
    workers: usize,
    sink: &mut dyn FnMut(usize, f64, &BatchStates) -> Result<()>,
) -> Result<TimedRun> {
    let problem = config.build_problem();
    let tol = config.tolerances();
    let mut window_seconds = Vec::new();
    let mut sink_error = None;
    let mut mark = Instant::now();
    let (final_batch, stats) = outer_loop(
        &*problem,
        batch,
        config.t0,
        config.t_end,
        config.outer_step,
        config.solver.into(),
        &tol,
        workers,
        &mut |snap| {
            window_seconds.push(mark.elapsed().as_secs_f64());
            if sink_error.is_none() {
                if let Err(e) = sink(snap.index, snap.t, &snap.batch) {
                    sink_error = Some(e);
                }
            }
            mark = Instant::now();
        },
    )?;
    if let Some(e) = sink_error {
        return Err(e);
    }
    Ok(TimedRun {
        final_batch,
        stats,
        window_seconds,
    })
}

pub fn run_integrate(config: &RunConfig) -> Result<IntegrateSummary> {
    config.validate()?;
    let batch = config.build_batch()?;
    let mut csv = match &config.output {
        Some(path) => Some(SnapshotCsv::create(path, batch.dim())?),
        None => None,
    };
    let run = timed_outer_loop(
        config,
        &batch,
        config.workers,
        &mut |index, t, b| match csv.as_mut() {
            Some(c) => c.write_window(index, t, b),
            None => Ok(()),
        },
    )?;
    if let Some(c) = csv {
        c.finish()?;
    }
    let summary = IntegrateSummary {
        mode: "integrate",
        workers: config.workers,
        outer_steps: run.window_seconds.len(),
        wall_clock_per_outer_step: run.mean_window_seconds(),
        stats: (&run.stats).into(),
        config: config.clone(),
    };
    write_json(config.summary.as_deref(), &summary)?;
    Ok(summary)
}

pub fn run_convergence(config: &RunConfig) -> Result<ConvergenceSummary> {
    config.validate()?;
    let (method, h0) = match config.solver {
        SolverKind::Rkck => (FixedStepMethod::Rkck, 0.1),
        SolverKind::Rkc => (
            FixedStepMethod::Rkc {
                stages: config.rkc_stages,
                kappa: config.tolerances().kappa,
            },
            0.05,
        ),
    };
    let hs = halving_ladder(config.h_start.unwrap_or(h0), config.levels);
    let (y0, g) = config.base_state()?;
    let span = config.t_end - config.t0;
    let exact = match config.problem {
        ProblemKind::Expdecay => vec![ExpDecay::exact(y0[0], g[0], span)],
        ProblemKind::Harmonic => Harmonic::exact(y0[0], y0[1], span).to_vec(),
        _ => unreachable!("validated above"),
    };
    let problem = config.build_problem();
    let report = convergence_study(
        &*problem,
        method,
        &y0,
        &g,
        config.t0,
        config.t_end,
        &hs,
        &exact,
    )?;
    if let Some(path) = &config.output {
        write_convergence_csv(path, &report.points)?;
    }
    let summary = ConvergenceSummary {
        mode: "convergence",
        method_order: method.order(),
        points: report.points,
        slope: report.slope,
        config: config.clone(),
    };
    write_json(config.summary.as_deref(), &summary)?;
    Ok(summary)
}

pub fn run_scaling(config: &RunConfig) -> Result<ScalingSummary> {
    config.validate()?;
    let batch = config.build_batch()?;
    let mut rows = Vec::new();
    let mut reference: Option<TimedRun> = None;
    let mut identical = true;
    for workers in config.scaling_ladder() {
        let run = timed_outer_loop(config, &batch, workers, &mut |_, _, _| Ok(()))?;
        let per_step = run.mean_window_seconds();
        let speedup = match &reference {
            None => 1.0,
            Some(r) => r.mean_window_seconds() / per_step,
        };
        if let Some(r) = &reference {
            let same_bits = r
                .final_batch
                .values()
                .iter()
                .zip(run.final_batch.values())
                .all(|(a, b)| a.to_bits() == b.to_bits());
            identical &= same_bits && r.stats == run.stats;
        }
        rows.push(ScalingRow {
            workers,
            wall_clock_per_outer_step: per_step,
            speedup_vs_1: speedup,
        });
        if reference.is_none() {
            reference = Some(run);
        }
    }
    if let Some(path) = &config.output {
        write_scaling_csv(path, &rows)?;
    }
    let stats = reference
        .as_ref()
        .map(|r| (&r.stats).into())
        .expect("ladder is never empty");
    let summary = ScalingSummary {
        mode: "scaling",
        rows,
        outputs_identical: identical,
        available_parallelism: std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
        stats,
        config: config.clone(),
    };
    write_json(config.summary.as_deref(), &summary)?;
    Ok(summary)
}

/// Dispatches on `config.mode`.
pub fn run(config: &RunConfig) -> Result<()> {
    match config.mode {
        Mode::Integrate => run_integrate(config).map(|_| ()),
        Mode::Convergence => run_convergence(config).map(|_| ()),
        Mode::Scaling => run_scaling(config).map(|_| ()),
    }
}
