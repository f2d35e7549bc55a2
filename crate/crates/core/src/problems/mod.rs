//! Benchmark and calibration problems.

mod calibration;
mod heat;
mod perturb;
mod pleiades;

pub use calibration::{ExpDecay, Harmonic};
pub use heat::HeatEquation;
pub use perturb::{perturb_initial_conditions, unit_uniform, DEFAULT_PERTURBATION};
pub use pleiades::{
    parse_initial_conditions, pleiades_initial_conditions, sha256_hex, Pleiades, PLEIADES_ASSET,
    PLEIADES_ASSET_SHA256, PLEIADES_DIM, PLEIADES_STARS,
};
