//! Tolerances and the fixed constants shared by both integrators.

use crate::error::{OdeError, Result};

/// Unit roundoff used by the RKC driver and power method.
pub const UROUND: f64 = 2.22e-16;

/// Tolerances and controller constants for both drivers.
///
/// `eps` drives RKCK; `abs_tol`/`rel_tol` drive RKC. The remaining fields are
/// the fixed controller constants and rarely need changing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceSettings {
    pub eps: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub uround: f64,
    /// Guard added to the RKCK error scale (`delta`).
    pub tiny: f64,
    pub safety: f64,
    /// Largest RKCK shrink per rejection, as a factor.
    pub p1: f64,
    /// Below this error RKCK grows the step by the full factor 5.
    pub errcon: f64,
    pub pgrow: f64,
    pub pshrnk: f64,
    pub h_min_floor: f64,
    /// RKC damping parameter.
    pub kappa: f64,
}

impl Default for ToleranceSettings {
    fn default() -> Self {
        Self {
            eps: 1.0e-10,
            abs_tol: 1.0e-10,
            rel_tol: 1.0e-6,
            uround: UROUND,
            tiny: 1.0e-30,
            safety: 0.9,
            p1: 0.1,
            errcon: 1.89e-4,
            pgrow: -0.2,
            pshrnk: -0.25,
            h_min_floor: 1.0e-20,
            kappa: 2.0 / 13.0,
        }
    }
}

impl ToleranceSettings {
    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_rkc_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("eps", self.eps),
            ("abs_tol", self.abs_tol),
            ("rel_tol", self.rel_tol),
            ("uround", self.uround),
            ("tiny", self.tiny),
            ("h_min_floor", self.h_min_floor),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(OdeError::InvalidTolerance(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        for (name, v) in [("safety", self.safety), ("p1", self.p1)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(OdeError::InvalidTolerance(format!(
                    "{name} = {v} must lie in (0, 1)"
                )));
            }
        }
        if !(self.kappa >= 0.0 && self.kappa.is_finite()) {
            return Err(OdeError::InvalidTolerance(format!(
                "kappa = {} must be >= 0",
                self.kappa
            )));
        }
        Ok(())
    }
}
