//! Batched adaptive integration of many independent ODE systems.
//!
//! Two explicit integrators are provided:
//!
//! - [`rkck`]: fifth-order Runge-Kutta-Cash-Karp with an embedded
//!   fourth-order error estimate, for nonstiff systems.
//! - [`rkc`]: second-order Runge-Kutta-Chebyshev with adaptive step size and
//!   stage count, for moderately stiff systems. Its stage count comes from a
//!   Jacobian-free spectral radius estimate ([`specrad`]).
//!
//! States of all systems live in one interleaved array ([`BatchStates`]).
//! [`integrate_batch`] advances every system over one window, and
//! [`outer_loop`] repeats that over consecutive windows, restarting each
//! system's controller every time.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod batch;
pub mod convergence;
pub mod driver;
pub mod error;
pub mod problem;
pub mod problems;
pub mod rkc;
pub mod rkck;
pub mod specrad;
pub mod stats;
pub mod tolerances;

pub use batch::BatchStates;
pub use driver::{integrate_batch, outer_loop, BatchOutput, SolverChoice};
pub use error::{OdeError, Result};
pub use problem::{FnProblem, OdeProblem};
pub use stats::{AcceptedStep, BatchStats, IntegrationStats};
pub use tolerances::{ToleranceSettings, UROUND};
