//! Fixed-step integration and empirical order estimation.

use crate::error::{OdeError, Result};
use crate::problem::OdeProblem;
use crate::rkc::{rkc_step_into, RkcCoefficients, RkcScratch};
use crate::rkck::{rkck_step_into, RkckScratch};

/// A method run with its adaptive controller switched off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedStepMethod {
    Rkck,
    Rkc { stages: usize, kappa: f64 },
}

impl FixedStepMethod {
    /// Formal order of accuracy.
    pub fn order(&self) -> u32 {
        match self {
            FixedStepMethod::Rkck => 5,
            FixedStepMethod::Rkc { .. } => 2,
        }
    }
}

fn step_count(t0: f64, t1: f64, h: f64) -> Result<usize> {
    if !(t1 > t0) {
        return Err(OdeError::InvalidInterval { start: t0, end: t1 });
    }
    if !(h > 0.0) {
        return Err(OdeError::InvalidOuterStep(h));
    }
    Ok(((t1 - t0) / h).round().max(1.0) as usize)
}

/// Integrates `y` from `t0` to `t1` with equal steps as close to `h` as
/// divides the interval. Returns the number of steps.
pub fn integrate_fixed<P: OdeProblem + ?Sized>(
    problem: &P,
    method: FixedStepMethod,
    t0: f64,
    t1: f64,
    y: &mut [f64],
    g: &[f64],
    h: f64,
) -> Result<usize> {
    let steps = step_count(t0, t1, h)?;
    let h = (t1 - t0) / steps as f64;
    let n = y.len();
    let mut f = vec![0.0; n];
    let mut next = vec![0.0; n];

    match method {
        FixedStepMethod::Rkck => {
            let mut err = vec![0.0; n];
            let mut scratch = RkckScratch::new(n);
            for k in 0..steps {
                let t = t0 + k as f64 * h;
                problem.rhs(t, y, g, &mut f);
                rkck_step_into(problem, t, y, g, &f, h, &mut next, &mut err, &mut scratch);
                y.copy_from_slice(&next);
            }
        }
        FixedStepMethod::Rkc { stages, kappa } => {
            let coeffs = RkcCoefficients::new(stages, kappa)?;
            let mut scratch = RkcScratch::new(n);
            for k in 0..steps {
                let t = t0 + k as f64 * h;
                problem.rhs(t, y, g, &mut f);
                rkc_step_into(problem, t, y, g, &f, h, &coeffs, &mut next, &mut scratch);
                y.copy_from_slice(&next);
            }
        }
    }
    Ok(steps)
}

/// Least-squares slope of `ln(error)` against `ln(h)`.
pub fn fit_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(h, e)| (h.ln(), e.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `levels` step sizes starting at `h0`, each half the previous.
pub fn halving_ladder(h0: f64, levels: usize) -> Vec<f64> {
    (0..levels).map(|k| h0 / (1u64 << k) as f64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// `(h, max-norm global error at t1)` per ladder rung.
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
}

/// Runs `method` at every step size in `hs` and fits the observed order.
#[allow(clippy::too_many_arguments)]
pub fn convergence_study<P: OdeProblem + ?Sized>(
    problem: &P,
    method: FixedStepMethod,
    y0: &[f64],
    g: &[f64],
    t0: f64,
    t1: f64,
    hs: &[f64],
    exact: &[f64],
) -> Result<ConvergenceReport> {
    if hs.len() < 2 {
        return Err(OdeError::InvalidShape(
            "need at least two step sizes".into(),
        ));
    }
    let mut points = Vec::with_capacity(hs.len());
    for &h in hs {
        let mut y = y0.to_vec();
        integrate_fixed(problem, method, t0, t1, &mut y, g, h)?;
        let err = y
            .iter()
            .zip(exact)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        points.push((h, err));
    }
    let slope = fit_log_slope(&points);
    Ok(ConvergenceReport { points, slope })
}
