//! Fifth-order Runge-Kutta-Cash-Karp with an embedded fourth-order error
//! estimate, and the adaptive sub-stepping driver built on it.

use crate::error::{OdeError, Result};
use crate::problem::OdeProblem;
use crate::stats::{AcceptedStep, IntegrationStats};
use crate::tolerances::ToleranceSettings;

/// Butcher coefficients of an explicit six-stage embedded pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkckTableau {
    /// Stage time fractions; `a[0]` is unused (stage 1 sits at `t`).
    pub a: [f64; 6],
    /// Row `i` holds the weights of `k_1..k_i` feeding stage `i + 1`.
    pub b: [[f64; 5]; 6],
    /// Fifth-order weights.
    pub c: [f64; 6],
    /// Embedded fourth-order weights.
    pub cstar: [f64; 6],
}

/// The Cash-Karp coefficients.
pub const CASH_KARP: RkckTableau = RkckTableau {
    a: [0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0],
    b: [
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
        [3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0],
        [-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0],
        [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ],
    c: [
        37.0 / 378.0,
        0.0,
        250.0 / 621.0,
        125.0 / 594.0,
        0.0,
        512.0 / 1771.0,
    ],
    cstar: [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        1.0 / 4.0,
    ],
};

/// Output of one trial step.
#[derive(Debug, Clone, PartialEq)]
pub struct RkckStepResult {
    /// Fifth-order solution.
    pub y_next: Vec<f64>,
    /// Fifth- minus fourth-order solution, per component.
    pub y_err: Vec<f64>,
}

/// Stage storage reused across steps.
#[derive(Debug, Clone)]
pub struct RkckScratch {
    k: [Vec<f64>; 6],
    stage_y: Vec<f64>,
}

impl RkckScratch {
    pub fn new(dim: usize) -> Self {
        Self {
            k: std::array::from_fn(|_| vec![0.0; dim]),
            stage_y: vec![0.0; dim],
        }
    }
}

/// Takes one trial step of size `h` from `(t, y)`.
///
/// `f0` must equal `rhs(t, y, g)`; it is reused as the first stage, so the
/// step costs exactly five new RHS evaluations.
#[allow(clippy::too_many_arguments)]
pub fn rkck_step_into<P: OdeProblem + ?Sized>(
    problem: &P,
    t: f64,
    y: &[f64],
    g: &[f64],
    f0: &[f64],
    h: f64,
    y_next: &mut [f64],
    y_err: &mut [f64],
    scratch: &mut RkckScratch,
) {
    let tab = &CASH_KARP;
    let RkckScratch { k, stage_y } = scratch;

    for (ki, &fi) in k[0].iter_mut().zip(f0) {
        *ki = h * fi;
    }
    for stage in 1..6 {
        let (done, rest) = k.split_at_mut(stage);
        let row = &tab.b[stage];
        for (i, sy) in stage_y.iter_mut().enumerate() {
            let mut acc = y[i];
            for (prev, &w) in done.iter().zip(row) {
                acc += w * prev[i];
            }
            *sy = acc;
        }
        let out = &mut rest[0];
        problem.rhs(t + tab.a[stage] * h, stage_y, g, out);
        for v in out.iter_mut() {
            *v *= h;
        }
    }

    for i in 0..y.len() {
        let mut next = y[i];
        let mut err = 0.0;
        for (s, ks) in k.iter().enumerate() {
            next += tab.c[s] * ks[i];
            err += (tab.c[s] - tab.cstar[s]) * ks[i];
        }
        y_next[i] = next;
        y_err[i] = err;
    }
}

/// Allocating form of [`rkck_step_into`].
pub fn rkck_step<P: OdeProblem + ?Sized>(
    problem: &P,
    t: f64,
    y: &[f64],
    g: &[f64],
    f0: &[f64],
    h: f64,
) -> RkckStepResult {
    let n = y.len();
    let mut out = RkckStepResult {
        y_next: vec![0.0; n],
        y_err: vec![0.0; n],
    };
    let mut scratch = RkckScratch::new(n);
    rkck_step_into(
        problem,
        t,
        y,
        g,
        f0,
        h,
        &mut out.y_next,
        &mut out.y_err,
        &mut scratch,
    );
    out
}

/// Scaled RKCK error; `err <= 1` means the step is acceptable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkckErrorNorm {
    pub err: f64,
    /// Some component of the error estimate was NaN or infinite.
    pub nan: bool,
}

/// `max_i |y_err_i| / (|y_i| + |h f_i| + tiny) / eps`.
pub fn rkck_error_norm(
    y: &[f64],
    f: &[f64],
    y_err: &[f64],
    h: f64,
    eps: f64,
    tiny: f64,
) -> RkckErrorNorm {
    let mut err: f64 = 0.0;
    let mut nan = false;
    for ((&yi, &fi), &ei) in y.iter().zip(f).zip(y_err) {
        if !ei.is_finite() {
            nan = true;
        }
        // f64::max drops NaN operands, like C's fmax
        err = err.max((ei / (yi.abs() + (h * fi).abs() + tiny)).abs());
    }
    RkckErrorNorm {
        err: err / eps,
        nan,
    }
}

/// Controller verdict for one trial step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDecision {
    pub accepted: bool,
    pub h_new: f64,
    /// A rejection drove the step below `h_min_floor`.
    pub underflow: bool,
}

/// RKCK step-size controller.
///
/// Rejections shrink by at most a factor 10 (exactly 10 on a non-finite
/// error); acceptances grow by at most 5 and are then clamped to
/// `[h_min, h_max]`.
pub fn rkck_adjust_step(
    h: f64,
    err: f64,
    nan: bool,
    h_min: f64,
    h_max: f64,
    tol: &ToleranceSettings,
) -> StepDecision {
    if err > 1.0 || !err.is_finite() || nan {
        let h_new = if !err.is_finite() || nan {
            tol.p1 * h
        } else {
            (tol.safety * h * err.powf(tol.pshrnk)).max(tol.p1 * h)
        };
        StepDecision {
            accepted: false,
            h_new,
            underflow: h_new < tol.h_min_floor,
        }
    } else {
        let grown = if err > tol.errcon {
            tol.safety * h * err.powf(tol.pgrow)
        } else {
            5.0 * h
        };
        StepDecision {
            accepted: true,
            h_new: grown.min(h_max).max(h_min),
            underflow: false,
        }
    }
}

pub(crate) fn reached_end(t: f64, t_end: f64, uround: f64) -> bool {
    t >= t_end || t_end - t <= uround * t_end.abs()
}

/// Integrates one system from `t0` to `t_end` in place.
pub fn rkck_driver<P: OdeProblem + ?Sized>(
    problem: &P,
    t0: f64,
    t_end: f64,
    y: &mut [f64],
    g: &[f64],
    tol: &ToleranceSettings,
) -> Result<IntegrationStats> {
    rkck_driver_observed(problem, t0, t_end, y, g, tol, &mut |_| {})
}

/// [`rkck_driver`] that reports every accepted step to `on_accept`.
pub fn rkck_driver_observed<P: OdeProblem + ?Sized>(
    problem: &P,
    t0: f64,
    t_end: f64,
    y: &mut [f64],
    g: &[f64],
    tol: &ToleranceSettings,
    on_accept: &mut dyn FnMut(&AcceptedStep),
) -> Result<IntegrationStats> {
    if !(t_end > t0) {
        return Err(OdeError::InvalidInterval {
            start: t0,
            end: t_end,
        });
    }
    let n = y.len();
    if n != problem.dim() {
        return Err(OdeError::InvalidShape(format!(
            "state length {n} != problem dimension {}",
            problem.dim()
        )));
    }

    let h_max = (t_end - t0).abs();
    let h_min = tol.h_min_floor;
    let mut h = 0.5 * h_max;
    let mut t = t0;

    let mut stats = IntegrationStats::default();
    let mut f = vec![0.0; n];
    let mut y_trial = vec![0.0; n];
    let mut y_err = vec![0.0; n];
    let mut scratch = RkckScratch::new(n);
    let mut f_current = false;

    while !reached_end(t, t_end, tol.uround) {
        h = h.min(t_end - t);
        if t + h == t {
            stats.underflow = true;
            break;
        }
        if !f_current {
            problem.rhs(t, y, g, &mut f);
            stats.rhs_evals += 1;
            f_current = true;
        }
        rkck_step_into(
            problem,
            t,
            y,
            g,
            &f,
            h,
            &mut y_trial,
            &mut y_err,
            &mut scratch,
        );
        stats.rhs_evals += 5;

        let norm = rkck_error_norm(y, &f, &y_err, h, tol.eps, tol.tiny);
        let decision = rkck_adjust_step(h, norm.err, norm.nan, h_min, h_max, tol);
        if decision.accepted {
            t += h;
            y.copy_from_slice(&y_trial);
            f_current = false;
            stats.record_accepted(h);
            on_accept(&AcceptedStep {
                t,
                h,
                err: norm.err,
                stages: 6,
                y,
            });
        } else {
            stats.steps_rejected += 1;
            if decision.underflow {
                stats.underflow = true;
                break;
            }
        }
        h = decision.h_new;
    }
    Ok(stats)
}
