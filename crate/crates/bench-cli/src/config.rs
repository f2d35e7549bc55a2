//! Run configuration and its validation.

use std::path::PathBuf;

use batchode::problems::{
    perturb_initial_conditions, pleiades_initial_conditions, ExpDecay, Harmonic, HeatEquation,
    Pleiades, DEFAULT_PERTURBATION,
};
use batchode::{BatchStates, OdeProblem, SolverChoice, ToleranceSettings};
use clap::ValueEnum;
use serde::Serialize;

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Pleiades,
    Heat,
    Expdecay,
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Rkck,
    Rkc,
}

impl From<SolverKind> for SolverChoice {
    fn from(s: SolverKind) -> Self {
        match s {
            SolverKind::Rkck => SolverChoice::Rkck,
            SolverKind::Rkc => SolverChoice::Rkc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Integrate,
    Convergence,
    Scaling,
}

/// Everything a run needs. Defaults reproduce the Pleiades timing protocol:
/// `t` from 0 to 1 in ten outer steps at `eps = 1e-10`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub problem: ProblemKind,
    pub solver: SolverKind,
    pub mode: Mode,
    pub num_systems: usize,
    pub t0: f64,
    pub t_end: f64,
    pub outer_step: f64,
    pub eps: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Worker count for `integrate`; the largest count tried by `scaling`.
    pub workers: usize,
    pub seed: u64,
    pub perturb: f64,
    /// Interior grid points of the heat problem.
    pub heat_points: usize,
    /// Largest step of the convergence ladder; solver-dependent when unset.
    pub h_start: Option<f64>,
    pub levels: usize,
    /// Fixed stage count used by RKC convergence runs.
    pub rkc_stages: usize,
    pub output: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: ProblemKind::Pleiades,
            solver: SolverKind::Rkck,
            mode: Mode::Integrate,
            num_systems: 1,
            t0: 0.0,
            t_end: 1.0,
            outer_step: 0.1,
            eps: 1e-10,
            abs_tol: 1e-10,
            rel_tol: 1e-6,
            workers: 1,
            seed: 0,
            perturb: DEFAULT_PERTURBATION,
            heat_points: 64,
            h_start: None,
            levels: 4,
            rkc_stages: 5,
            output: None,
            summary: None,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(BenchError::Config(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_systems == 0 {
            return Err(BenchError::Config("num-systems must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(BenchError::Config("workers must be at least 1".into()));
        }
        if !(self.t0.is_finite() && self.t_end.is_finite() && self.t_end > self.t0) {
            return Err(BenchError::Config(format!(
                "t-end ({}) must exceed t0 ({})",
                self.t_end, self.t0
            )));
        }
        positive("outer-step", self.outer_step)?;
        positive("eps", self.eps)?;
        positive("abs-tol", self.abs_tol)?;
        positive("rel-tol", self.rel_tol)?;
        if !(0.0..=0.1).contains(&self.perturb) {
            return Err(BenchError::Config(format!(
                "perturb must lie in [0, 0.1], got {}",
                self.perturb
            )));
        }
        if self.heat_points == 0 {
            return Err(BenchError::Config("heat-points must be at least 1".into()));
        }
        match self.mode {
            Mode::Integrate => {}
            Mode::Convergence => {
                if !matches!(self.problem, ProblemKind::Expdecay | ProblemKind::Harmonic) {
                    return Err(BenchError::Config(
                        "convergence mode needs a problem with a closed-form solution (expdecay or harmonic)".into(),
                    ));
                }
                if self.levels < 2 {
                    return Err(BenchError::Config("levels must be at least 2".into()));
                }
                if self.solver == SolverKind::Rkc && self.rkc_stages < 2 {
                    return Err(BenchError::Config("rkc-stages must be at least 2".into()));
                }
                if let Some(h) = self.h_start {
                    positive("h-start", h)?;
                }
            }
            Mode::Scaling => {
                if self.num_systems < self.workers {
                    return Err(BenchError::Config(format!(
                        "scaling needs num-systems ({}) >= workers ({})",
                        self.num_systems, self.workers
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn tolerances(&self) -> ToleranceSettings {
        ToleranceSettings::default()
            .with_eps(self.eps)
            .with_rkc_tolerances(self.abs_tol, self.rel_tol)
    }

    /// Worker counts visited by `scaling`: powers of two below `workers`,
    /// then `workers` itself.
    pub fn scaling_ladder(&self) -> Vec<usize> {
        let mut out: Vec<usize> = std::iter::successors(Some(1usize), |w| w.checked_mul(2))
            .take_while(|&w| w < self.workers)
            .collect();
        out.push(self.workers);
        out
    }

    pub fn build_problem(&self) -> Box<dyn OdeProblem> {
        match self.problem {
            ProblemKind::Pleiades => Box::new(Pleiades::new()),
            ProblemKind::Heat => Box::new(HeatEquation::new(self.heat_points)),
            ProblemKind::Expdecay => Box::new(ExpDecay),
            ProblemKind::Harmonic => Box::new(Harmonic),
        }
    }

    /// Unperturbed initial state (and parameters) of the selected problem.
    pub fn base_state(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        Ok(match self.problem {
            ProblemKind::Pleiades => (pleiades_initial_conditions()?, Vec::new()),
            ProblemKind::Heat => {
                let p = HeatEquation::new(self.heat_points);
                (
                    (0..self.heat_points)
                        .map(|i| (std::f64::consts::PI * p.x(i)).sin())
                        .collect(),
                    Vec::new(),
                )
            }
            ProblemKind::Expdecay => (vec![1.0], vec![1.0]),
            ProblemKind::Harmonic => (vec![1.0, 0.0], Vec::new()),
        })
    }

    /// The seeded, perturbed batch every mode integrates.
    pub fn build_batch(&self) -> Result<BatchStates> {
        let (base, params) = self.base_state()?;
        let batch = perturb_initial_conditions(&base, self.perturb, self.seed, self.num_systems)?;
        if params.is_empty() {
            return Ok(batch);
        }
        let flat: Vec<f64> = (0..params.len())
            .flat_map(|j| std::iter::repeat_n(params[j], self.num_systems))
            .collect();
        Ok(BatchStates::from_flat_with_params(
            self.num_systems,
            batch.dim(),
            batch.values().to_vec(),
            params.len(),
            flat,
        )?)
    }
}
