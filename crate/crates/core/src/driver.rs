//! Batch driver: advances every system of a [`BatchStates`] independently.
//!
//! Systems are split into contiguous index ranges, one per worker. Each
//! system's integration is sequential and reads only its own slice plus
//! shared read-only problem data, so results do not depend on the worker
//! count or on scheduling.

use std::thread;

use crate::batch::BatchStates;
use crate::error::{OdeError, Result};
use crate::problem::OdeProblem;
use crate::rkc::rkc_driver;
use crate::rkck::rkck_driver;
use crate::stats::{BatchStats, IntegrationStats};
use crate::tolerances::ToleranceSettings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverChoice {
    /// Runge-Kutta-Cash-Karp, for nonstiff systems.
    Rkck,
    /// Runge-Kutta-Chebyshev, for moderately stiff systems.
    Rkc,
}

impl SolverChoice {
    pub fn name(self) -> &'static str {
        match self {
            SolverChoice::Rkck => "rkck",
            SolverChoice::Rkc => "rkc",
        }
    }
}

/// Result of one window over the whole batch.
#[derive(Debug, Clone)]
pub struct BatchOutput {
    pub batch: BatchStates,
    /// Per-system stats, indexed like the batch.
    pub stats: Vec<IntegrationStats>,
}

/// Integrates a single system over `[t, t_next]` with a fresh controller.
pub fn integrate_system<P: OdeProblem + ?Sized>(
    problem: &P,
    y: &mut [f64],
    g: &[f64],
    t: f64,
    t_next: f64,
    solver: SolverChoice,
    tol: &ToleranceSettings,
) -> Result<IntegrationStats> {
    match solver {
        SolverChoice::Rkck => rkck_driver(problem, t, t_next, y, g, tol),
        SolverChoice::Rkc => rkc_driver(problem, t, t_next, y, g, tol),
    }
}

fn check_inputs<P: OdeProblem + ?Sized>(
    problem: &P,
    batch: &BatchStates,
    workers: usize,
) -> Result<()> {
    if workers == 0 {
        return Err(OdeError::NoWorkers);
    }
    if batch.dim() != problem.dim() {
        return Err(OdeError::InvalidShape(format!(
            "batch dimension {} != problem dimension {}",
            batch.dim(),
            problem.dim()
        )));
    }
    if batch.param_dim() != problem.param_dim() {
        return Err(OdeError::InvalidShape(format!(
            "batch carries {} parameters per system, problem expects {}",
            batch.param_dim(),
            problem.param_dim()
        )));
    }
    Ok(())
}

/// Advances every system in `batch` from `t` to `t_next`.
///
/// Systems whose step size underflows keep their last accepted state and set
/// `underflow` in their stats; the rest of the batch is unaffected.
#[allow(clippy::too_many_arguments)]
pub fn integrate_batch<P: OdeProblem + ?Sized>(
    problem: &P,
    batch: &BatchStates,
    t: f64,
    t_next: f64,
    solver: SolverChoice,
    tol: &ToleranceSettings,
    workers: usize,
) -> Result<BatchOutput> {
    if !(t_next > t) {
        return Err(OdeError::InvalidInterval {
            start: t,
            end: t_next,
        });
    }
    check_inputs(problem, batch, workers)?;
    tol.validate()?;

    let n = batch.num_systems();
    let dim = batch.dim();
    let chunk = n.div_ceil(workers.min(n));

    let run_range = |range: std::ops::Range<usize>| -> Result<Vec<(Vec<f64>, IntegrationStats)>> {
        let mut y = vec![0.0; dim];
        range
            .map(|i| {
                batch.load_system(i, &mut y);
                let g = batch.system_params(i);
                let stats = integrate_system(problem, &mut y, &g, t, t_next, solver, tol)?;
                Ok((y.clone(), stats))
            })
            .collect()
    };

    let ranges: Vec<_> = (0..n)
        .step_by(chunk)
        .map(|start| start..(start + chunk).min(n))
        .collect();
    let results: Vec<Result<Vec<_>>> = if ranges.len() == 1 {
        vec![run_range(0..n)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|r| scope.spawn(|| run_range(r.clone())))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("integration worker panicked"))
                .collect()
        })
    };

    let mut out = batch.clone();
    let mut stats = Vec::with_capacity(n);
    let mut i = 0;
    for part in results {
        for (y, s) in part? {
            out.store_system(i, &y);
            stats.push(s);
            i += 1;
        }
    }
    Ok(BatchOutput { batch: out, stats })
}

/// Everything handed to the outer-loop sink after a window.
#[derive(Debug, Clone)]
pub struct OuterSnapshot {
    /// Zero-based window index.
    pub index: usize,
    /// Time at the end of the window.
    pub t: f64,
    /// Copy of the batch at `t`.
    pub batch: BatchStates,
    pub stats: BatchStats,
}

/// Number of windows of length `h_outer` needed to cover `[t0, t_end]`.
///
/// A trailing window shorter than a relative `1e-9` of `h_outer` is folded
/// into the previous one, so `(0, 1, 0.1)` gives 10 windows.
pub fn outer_window_count(t0: f64, t_end: f64, h_outer: f64) -> usize {
    let ratio = (t_end - t0) / h_outer;
    ((ratio - 1e-9).ceil() as usize).max(1)
}

/// Integrates from `t0` to `t_end` in windows of `h_outer`, restarting every
/// system's controller at each window and passing a snapshot to `sink` after
/// each one.
#[allow(clippy::too_many_arguments)]
pub fn outer_loop<P: OdeProblem + ?Sized>(
    problem: &P,
    batch: &BatchStates,
    t0: f64,
    t_end: f64,
    h_outer: f64,
    solver: SolverChoice,
    tol: &ToleranceSettings,
    workers: usize,
    sink: &mut dyn FnMut(OuterSnapshot),
) -> Result<(BatchStates, BatchStats)> {
    if !(h_outer > 0.0) || !h_outer.is_finite() {
        return Err(OdeError::InvalidOuterStep(h_outer));
    }
    if !(t_end > t0) {
        return Err(OdeError::InvalidInterval {
            start: t0,
            end: t_end,
        });
    }

    let windows = outer_window_count(t0, t_end, h_outer);
    let mut current = batch.clone();
    let mut total = BatchStats {
        systems: batch.num_systems(),
        ..BatchStats::default()
    };
    let mut t = t0;
    for k in 1..=windows {
        let t_next = if k == windows {
            t_end
        } else {
            t0 + k as f64 * h_outer
        };
        let out = integrate_batch(problem, &current, t, t_next, solver, tol, workers)?;
        let window_stats = BatchStats::from_systems(&out.stats);
        total.merge(&window_stats);
        current = out.batch;
        sink(OuterSnapshot {
            index: k - 1,
            t: t_next,
            batch: current.clone(),
            stats: window_stats,
        });
        t = t_next;
    }
    Ok((current, total))
}
