//! Jacobian-free spectral radius estimation by a nonlinear power method.
//!
//! The iteration perturbs `y` along a direction `v`, measures
//! `||f(y + v) - f(y)|| / ||v||`, and rescales the difference to a fixed small
//! length. Only RHS evaluations are needed; the converged direction is kept
//! and reused to warm-start the next call.

use crate::error::{OdeError, Result};
use crate::problem::OdeProblem;
use crate::tolerances::UROUND;

/// Iteration cap of the power method.
pub const MAX_ITERATIONS: usize = 50;

/// Safety factor applied to the estimate.
pub const SAFETY_FACTOR: f64 = 1.2;

/// Estimate returned by [`power_method_in_place`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecRadEstimate {
    /// Estimated spectral radius, already multiplied by [`SAFETY_FACTOR`].
    pub sigma: f64,
    pub converged: bool,
    /// Number of RHS evaluations performed.
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecRadResult {
    pub sigma: f64,
    /// Direction to warm-start the next call with.
    pub eigenvector: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Allocating form of [`power_method_in_place`]; `v_warm` is left untouched.
#[allow(clippy::too_many_arguments)]
pub fn power_method_spec_rad<P: OdeProblem + ?Sized>(
    problem: &P,
    t: f64,
    y: &[f64],
    g: &[f64],
    f: &[f64],
    h_max: f64,
    v_warm: &[f64],
) -> SpecRadResult {
    let mut v = v_warm.to_vec();
    let mut fv = vec![0.0; y.len()];
    let est = power_method_in_place(problem, t, y, g, f, h_max, &mut v, &mut fv);
    SpecRadResult {
        sigma: est.sigma,
        eigenvector: v,
        converged: est.converged,
        iterations: est.iterations,
    }
}

/// Power-method estimate of the spectral radius of `df/dy` at `(t, y)`.
///
/// `f` must equal `rhs(t, y, g)`. On entry `v` holds the warm-start direction
/// (zeros are allowed); on exit it holds the latest direction. `fv` is
/// scratch of the same length.
#[allow(clippy::too_many_arguments)]
pub fn power_method_in_place<P: OdeProblem + ?Sized>(
    problem: &P,
    t: f64,
    y: &[f64],
    g: &[f64],
    f: &[f64],
    h_max: f64,
    v: &mut [f64],
    fv: &mut [f64],
) -> SpecRadEstimate {
    let n = y.len();
    let small = 1.0 / h_max;
    let sqrt_uround = UROUND.sqrt();

    let y_norm = norm2(y);
    let v_norm = norm2(v);
    let dynrm = match (y_norm != 0.0, v_norm != 0.0) {
        (true, true) => {
            let dynrm = y_norm * sqrt_uround;
            for (vi, &yi) in v.iter_mut().zip(y) {
                *vi = yi + *vi * (dynrm / v_norm);
            }
            dynrm
        }
        (true, false) => {
            for (vi, &yi) in v.iter_mut().zip(y) {
                *vi = yi * (1.0 + sqrt_uround);
            }
            y_norm * sqrt_uround
        }
        (false, true) => {
            for vi in v.iter_mut() {
                *vi *= UROUND / v_norm;
            }
            UROUND
        }
        (false, false) => {
            v.fill(UROUND);
            UROUND
        }
    };

    let mut sigma = 0.0;
    let mut iterations = 0;
    for iter in 1..=MAX_ITERATIONS {
        problem.rhs(t, v, g, fv);
        iterations = iter;

        let diff_norm = fv
            .iter()
            .zip(f)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let sigma_old = sigma;
        sigma = diff_norm / dynrm;

        if iter >= 2 && (sigma - sigma_old).abs() <= sigma.max(small) * 0.01 {
            for (vi, &yi) in v.iter_mut().zip(y) {
                *vi -= yi;
            }
            return SpecRadEstimate {
                sigma: SAFETY_FACTOR * sigma,
                converged: true,
                iterations,
            };
        }

        if diff_norm != 0.0 {
            for i in 0..n {
                v[i] = y[i] + (fv[i] - f[i]) * (dynrm / diff_norm);
            }
        } else {
            let ind = iter % n;
            v[ind] = y[ind] - (v[ind] - y[ind]);
        }
    }
    for (vi, &yi) in v.iter_mut().zip(y) {
        *vi -= yi;
    }
    SpecRadEstimate {
        sigma: SAFETY_FACTOR * sigma,
        converged: false,
        iterations,
    }
}

/// Largest absolute row sum of a square matrix, an upper bound on its
/// spectral radius.
pub fn gershgorin_bound(matrix: &[Vec<f64>]) -> Result<f64> {
    let n = matrix.len();
    if let Some((i, row)) = matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(OdeError::InvalidShape(format!(
            "row {i} has {} entries, expected {n}",
            row.len()
        )));
    }
    Ok(matrix
        .iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max))
}
