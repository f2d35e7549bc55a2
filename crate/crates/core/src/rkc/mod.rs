//! Second-order Runge-Kutta-Chebyshev with adaptive step size and stage count.
//!
//! The `s`-stage scheme extends the real stability interval roughly like
//! `0.65 s^2`, so moderately stiff problems can be stepped explicitly. The
//! driver picks `s` from the step size and a power-method estimate of the
//! spectral radius, refreshed every 25 accepted steps and after rejections.

mod chebyshev;
mod coefficients;

pub use chebyshev::{chebyshev_eval, chebyshev_table, ChebyshevEval};
pub use coefficients::{RkcCoefficientCache, RkcCoefficients};

use crate::error::{OdeError, Result};
use crate::problem::OdeProblem;
use crate::rkck::reached_end;
use crate::specrad::power_method_in_place;
use crate::stats::{AcceptedStep, IntegrationStats};
use crate::tolerances::ToleranceSettings;

/// Accepted steps between spectral radius refreshes.
pub const SPEC_RAD_INTERVAL: u64 = 25;

/// Ratio of the damped stability boundary to `s^2`-ish growth used in the
/// stage-count formula.
pub const STABILITY_CONSTANT: f64 = 1.54;

/// Controller state carried between RKC steps within one driver call.
///
/// Step sizes below `uround` mean "unset".
#[derive(Debug, Clone, PartialEq)]
pub struct RkcWorkspace {
    pub err_old: f64,
    pub h_old: f64,
    pub h: f64,
    pub spec_rad: f64,
    pub eigenvector: Vec<f64>,
}

impl RkcWorkspace {
    pub fn new(dim: usize) -> Self {
        Self {
            err_old: 0.0,
            h_old: 0.0,
            h: 0.0,
            spec_rad: 0.0,
            eigenvector: vec![0.0; dim],
        }
    }

    /// True when no step size has been chosen yet.
    pub fn is_unset(&self, uround: f64) -> bool {
        self.h < uround && self.h_old < uround
    }
}

/// Two state-length buffers; with `y`, `f0` and the output they make up the
/// five arrays an RKC step needs.
#[derive(Debug, Clone)]
pub struct RkcScratch {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl RkcScratch {
    pub fn new(dim: usize) -> Self {
        Self {
            a: vec![0.0; dim],
            b: vec![0.0; dim],
        }
    }
}

/// One RKC step of size `h` with the stage count of `coeffs`.
///
/// `f0` must equal `rhs(t, y, g)`; the step performs `s - 1` further RHS
/// evaluations.
#[allow(clippy::too_many_arguments)]
pub fn rkc_step_into<P: OdeProblem + ?Sized>(
    problem: &P,
    t: f64,
    y: &[f64],
    g: &[f64],
    f0: &[f64],
    h: f64,
    coeffs: &RkcCoefficients,
    out: &mut [f64],
    scratch: &mut RkcScratch,
) {
    let out_ptr = out.as_ptr();
    let mut w_prev2: &mut [f64] = &mut scratch.a;
    let mut w_prev1: &mut [f64] = &mut scratch.b;
    let mut w_cur: &mut [f64] = out;

    w_prev2.copy_from_slice(y);
    let step1 = coeffs.mu_tilde[1] * h;
    for ((w, &yi), &fi) in w_prev1.iter_mut().zip(y).zip(f0) {
        *w = yi + step1 * fi;
    }

    for j in 2..=coeffs.s {
        let (mu, nu) = (coeffs.mu[j], coeffs.nu[j]);
        let mu_h = coeffs.mu_tilde[j] * h;
        let gamma_h = coeffs.gamma_tilde[j] * h;

        // f_{j-1} goes into the buffer that will hold w_j
        problem.rhs(t + coeffs.c[j - 1] * h, w_prev1, g, w_cur);
        // (1 - mu - nu) y + mu w1 + nu w2, written as increments on y so that
        // a zero RHS reproduces y bit for bit
        for i in 0..y.len() {
            w_cur[i] = y[i]
                + mu * (w_prev1[i] - y[i])
                + nu * (w_prev2[i] - y[i])
                + mu_h * w_cur[i]
                + gamma_h * f0[i];
        }

        let oldest = w_prev2;
        w_prev2 = w_prev1;
        w_prev1 = w_cur;
        w_cur = oldest;
    }

    if !std::ptr::eq(w_prev1.as_ptr(), out_ptr) {
        if std::ptr::eq(w_prev2.as_ptr(), out_ptr) {
            w_prev2.copy_from_slice(w_prev1);
        } else {
            w_cur.copy_from_slice(w_prev1);
        }
    }
}

/// Allocating form of [`rkc_step_into`].
#[allow(clippy::too_many_arguments)]
pub fn rkc_step<P: OdeProblem + ?Sized>(
    problem: &P,
    t: f64,
    y: &[f64],
    g: &[f64],
    f0: &[f64],
    h: f64,
    s: usize,
    kappa: f64,
) -> Result<Vec<f64>> {
    let coeffs = RkcCoefficients::new(s, kappa)?;
    let mut out = vec![0.0; y.len()];
    let mut scratch = RkcScratch::new(y.len());
    rkc_step_into(problem, t, y, g, f0, h, &coeffs, &mut out, &mut scratch);
    Ok(out)
}

/// Weighted RMS norm of the RKC local error estimate
/// `0.8 (y_old - y_new) + 0.4 h (f_old + f_new)`.
pub fn rkc_error_norm(
    y_old: &[f64],
    y_new: &[f64],
    f_old: &[f64],
    f_new: &[f64],
    h: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> f64 {
    let n = y_old.len();
    let mut sum = 0.0;
    for i in 0..n {
        let est = 0.8 * (y_old[i] - y_new[i]) + 0.4 * h * (f_old[i] + f_new[i]);
        let weight = abs_tol + rel_tol * y_new[i].abs().max(y_old[i].abs());
        let scaled = est / weight;
        sum += scaled * scaled;
    }
    (sum / n as f64).sqrt()
}

/// Largest stage count the driver will use for a given relative tolerance.
pub fn rkc_max_stages(rel_tol: f64, uround: f64) -> usize {
    let m = (rel_tol / (10.0 * uround)).sqrt().round() as usize;
    m.max(2)
}

/// Stage count for step `h` and spectral radius `sigma`.
///
/// Returns the (possibly reduced) step size alongside: when the formula asks
/// for more than [`rkc_max_stages`] stages, `s` is capped and `h` shrunk to
/// what the capped stage count can keep stable.
pub fn rkc_stage_count(h: f64, sigma: f64, rel_tol: f64, uround: f64) -> (usize, f64) {
    let s_max = rkc_max_stages(rel_tol, uround);
    let s = 1 + (STABILITY_CONSTANT * h * sigma + 1.0).sqrt() as usize;
    if s > s_max {
        let h_reduced = (s_max * s_max - 1) as f64 / (STABILITY_CONSTANT * sigma);
        (s_max, h_reduced)
    } else {
        (s, h)
    }
}

/// Result of the first-step estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialStep {
    pub h: f64,
    /// Error norm of the trial Euler-difference step.
    pub err: f64,
}

/// Chooses the first step size from a trial step of length `min(h_max, 1/sigma)`.
///
/// Costs one RHS evaluation. `f` must equal `rhs(t, y, g)`.
#[allow(clippy::too_many_arguments)]
pub fn rkc_initial_step<P: OdeProblem + ?Sized>(
    problem: &P,
    t: f64,
    y: &[f64],
    g: &[f64],
    f: &[f64],
    sigma: f64,
    h_max: f64,
    h_min: f64,
    tol: &ToleranceSettings,
    scratch: &mut RkcScratch,
) -> InitialStep {
    let mut h = h_max;
    if sigma * h > 1.0 {
        h = 1.0 / sigma;
    }
    h = h.max(h_min);

    let RkcScratch {
        a: y_trial,
        b: f_trial,
    } = scratch;
    for ((yt, &yi), &fi) in y_trial.iter_mut().zip(y).zip(f) {
        *yt = yi + h * fi;
    }
    problem.rhs(t + h, y_trial, g, f_trial);

    let mut sum = 0.0;
    for i in 0..y.len() {
        let est = (f_trial[i] - f[i]) / (tol.abs_tol + tol.rel_tol * y[i].abs());
        sum += est * est;
    }
    let err = h * (sum / y.len() as f64).sqrt();

    let h = if tol.p1 * h < h_max * err.sqrt() {
        (tol.p1 * h / err.sqrt()).max(h_min)
    } else {
        h_max
    };
    InitialStep { h, err }
}

/// Growth factor after an accepted step, limited to `[0.1, 10]`.
///
/// `first_accepted` selects the memoryless rule; otherwise the previous
/// step's error and size enter. A zero error counts as `uround`.
pub fn rkc_accept_factor(err: f64, err_old: f64, h: f64, h_old: f64, first_accepted: bool) -> f64 {
    let err = err.max(crate::tolerances::UROUND);
    let mut fac: f64 = 10.0;
    if first_accepted {
        let root = err.cbrt();
        if 0.8 < fac * root {
            fac = 0.8 / root;
        }
    } else {
        let num = 0.8 * h * err_old.cbrt();
        let den = h_old * err.powf(2.0 / 3.0);
        if num < fac * den {
            fac = num / den;
        }
    }
    fac.max(0.1)
}

/// Next step size after an accepted step (before clamping to the driver's
/// bounds).
pub fn rkc_next_step(err: f64, err_old: f64, h: f64, h_old: f64, first_accepted: bool) -> f64 {
    h * rkc_accept_factor(err, err_old, h, h_old, first_accepted)
}

/// Retry step size after a rejection. Non-finite errors shrink by 10.
pub fn rkc_rejected_step(h: f64, err: f64) -> f64 {
    if err.is_finite() {
        0.8 * h / err.cbrt()
    } else {
        0.1 * h
    }
}

/// Integrates one system from `t0` to `t_end` in place, starting cold.
pub fn rkc_driver<P: OdeProblem + ?Sized>(
    problem: &P,
    t0: f64,
    t_end: f64,
    y: &mut [f64],
    g: &[f64],
    tol: &ToleranceSettings,
) -> Result<IntegrationStats> {
    let mut ws = RkcWorkspace::new(y.len());
    rkc_driver_with(problem, t0, t_end, y, g, tol, &mut ws, &mut |_| {})
}

/// [`rkc_driver`] with caller-owned controller state and a per-step observer.
///
/// A workspace whose step slots are unset triggers the first-step estimate;
/// the batch driver always passes a fresh one.
#[allow(clippy::too_many_arguments)]
pub fn rkc_driver_with<P: OdeProblem + ?Sized>(
    problem: &P,
    t0: f64,
    t_end: f64,
    y: &mut [f64],
    g: &[f64],
    tol: &ToleranceSettings,
    ws: &mut RkcWorkspace,
    on_accept: &mut dyn FnMut(&AcceptedStep),
) -> Result<IntegrationStats> {
    if !(t_end > t0) {
        return Err(OdeError::InvalidInterval {
            start: t0,
            end: t_end,
        });
    }
    let n = y.len();
    if n != problem.dim() || ws.eigenvector.len() != n {
        return Err(OdeError::InvalidShape(format!(
            "state length {n}, eigenvector length {}, problem dimension {}",
            ws.eigenvector.len(),
            problem.dim()
        )));
    }
    let uround = tol.uround;
    let h_max = (t_end - t0).abs();
    let h_min = 10.0 * uround * t0.abs().max(h_max);

    let mut stats = IntegrationStats {
        cold_start: ws.is_unset(uround),
        ..Default::default()
    };
    let mut cache = RkcCoefficientCache::new(tol.kappa);
    let mut scratch = RkcScratch::new(n);

    let mut y_n = y.to_vec();
    let mut f_n = vec![0.0; n];
    let mut y_trial = vec![0.0; n];
    let mut f_trial = vec![0.0; n];
    problem.rhs(t0, &y_n, g, &mut f_n);
    stats.rhs_evals += 1;

    if ws.h < uround {
        ws.eigenvector.copy_from_slice(&f_n);
    }

    let mut t = t0;
    let mut sigma_stale = true;
    while !reached_end(t, t_end, uround) {
        if 1.1 * ws.h >= t_end - t {
            ws.h = t_end - t;
        }

        if sigma_stale {
            let est = power_method_in_place(
                problem,
                t,
                &y_n,
                g,
                &f_n,
                h_max,
                &mut ws.eigenvector,
                &mut f_trial,
            );
            ws.spec_rad = est.sigma;
            stats.spec_rad_evals += 1;
            stats.spec_rad_unconverged += u64::from(!est.converged);
            stats.rhs_evals += est.iterations as u64;
            sigma_stale = false;
        }

        if ws.h < uround {
            let init = rkc_initial_step(
                problem,
                t,
                &y_n,
                g,
                &f_n,
                ws.spec_rad,
                h_max,
                h_min,
                tol,
                &mut scratch,
            );
            stats.rhs_evals += 1;
            ws.h = init.h;
        }

        let (s, h) = rkc_stage_count(ws.h, ws.spec_rad, tol.rel_tol, uround);
        ws.h = h;
        if t + h == t {
            stats.underflow = true;
            break;
        }

        let coeffs = cache.get(s)?;
        rkc_step_into(
            problem,
            t,
            &y_n,
            g,
            &f_n,
            h,
            coeffs,
            &mut y_trial,
            &mut scratch,
        );
        problem.rhs(t + h, &y_trial, g, &mut f_trial);
        stats.rhs_evals += s as u64;

        let err = rkc_error_norm(&y_n, &y_trial, &f_n, &f_trial, h, tol.abs_tol, tol.rel_tol);
        if !(err <= 1.0) {
            stats.steps_rejected += 1;
            ws.h = rkc_rejected_step(h, err);
            if ws.h < h_min {
                stats.underflow = true;
                break;
            }
            sigma_stale = true;
            continue;
        }

        t += h;
        let err = err.max(uround);
        let fac = rkc_accept_factor(err, ws.err_old, h, ws.h_old, ws.h_old < uround);
        ws.err_old = err;
        ws.h_old = h;
        std::mem::swap(&mut y_n, &mut y_trial);
        std::mem::swap(&mut f_n, &mut f_trial);
        ws.h = (h * fac).min(h_max).max(h_min);

        stats.record_accepted(h);
        on_accept(&AcceptedStep {
            t,
            h,
            err,
            stages: s,
            y: &y_n,
        });
        if stats.steps_accepted.is_multiple_of(SPEC_RAD_INTERVAL) {
            sigma_stale = true;
        }
    }

    y.copy_from_slice(&y_n);
    Ok(stats)
}
