use std::collections::HashMap;

use super::chebyshev::chebyshev_table;
use crate::error::{OdeError, Result};

/// Stage coefficients of the damped second-order RKC scheme with `s` stages.
///
/// Vectors are indexed by stage number `j`; entries a formula does not
/// define (`mu[0..2]`, `nu[0..2]`, `gamma_tilde[0..2]`, `mu_tilde[0]`) are 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RkcCoefficients {
    pub s: usize,
    pub omega0: f64,
    pub omega1: f64,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    pub mu_tilde: Vec<f64>,
    pub gamma_tilde: Vec<f64>,
    pub b: Vec<f64>,
    pub a: Vec<f64>,
    /// Internal stage times as fractions of the step; `c[s] == 1`.
    pub c: Vec<f64>,
}

impl RkcCoefficients {
    pub fn new(s: usize, kappa: f64) -> Result<Self> {
        if s < 2 {
            return Err(OdeError::InvalidStageCount(s));
        }
        let sf = s as f64;
        let omega0 = 1.0 + kappa / (sf * sf);
        let cheb = chebyshev_table(s, omega0);
        let omega1 = cheb[s].dt / cheb[s].ddt;

        let mut b = vec![0.0; s + 1];
        for j in 2..=s {
            b[j] = cheb[j].ddt / (cheb[j].dt * cheb[j].dt);
        }
        // b_0 = b_1 = b_2 keeps stage 1 at time c_2 / T_2'(omega0)
        b[0] = b[2];
        b[1] = b[2];

        let a: Vec<f64> = (0..=s).map(|j| 1.0 - b[j] * cheb[j].t).collect();

        let mut mu = vec![0.0; s + 1];
        let mut nu = vec![0.0; s + 1];
        let mut mu_tilde = vec![0.0; s + 1];
        let mut gamma_tilde = vec![0.0; s + 1];
        mu_tilde[1] = b[1] * omega1;
        for j in 2..=s {
            mu[j] = 2.0 * b[j] * omega0 / b[j - 1];
            nu[j] = -b[j] / b[j - 2];
            mu_tilde[j] = 2.0 * b[j] * omega1 / b[j - 1];
            gamma_tilde[j] = -a[j - 1] * mu_tilde[j];
        }

        let mut c = vec![0.0; s + 1];
        for j in 2..s {
            c[j] = omega1 * cheb[j].ddt / cheb[j].dt;
        }
        let c2 = omega1 * cheb[2].ddt / cheb[2].dt;
        c[1] = c2 / cheb[2].dt;
        c[s] = 1.0;

        Ok(Self {
            s,
            omega0,
            omega1,
            mu,
            nu,
            mu_tilde,
            gamma_tilde,
            b,
            a,
            c,
        })
    }
}

/// Coefficient sets keyed by stage count, built on first use.
#[derive(Debug, Clone, Default)]
pub struct RkcCoefficientCache {
    kappa: f64,
    by_stages: HashMap<usize, RkcCoefficients>,
}

impl RkcCoefficientCache {
    pub fn new(kappa: f64) -> Self {
        Self {
            kappa,
            by_stages: HashMap::new(),
        }
    }

    pub fn get(&mut self, s: usize) -> Result<&RkcCoefficients> {
        if !self.by_stages.contains_key(&s) {
            let coeffs = RkcCoefficients::new(s, self.kappa)?;
            self.by_stages.insert(s, coeffs);
        }
        Ok(&self.by_stages[&s])
    }

    pub fn len(&self) -> usize {
        self.by_stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_stages.is_empty()
    }
}
