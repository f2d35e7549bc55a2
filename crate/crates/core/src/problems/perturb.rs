//! Seeded multiplicative perturbation of a base state.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`), whose
//! output stream is fixed for a given seed on every platform. Each draw
//! takes the top 53 bits of one `u64` and maps them to `[-1, 1)`. Draws are
//! consumed system by system, variable by variable.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::batch::BatchStates;
use crate::error::{OdeError, Result};

/// Default relative perturbation magnitude (1%).
pub const DEFAULT_PERTURBATION: f64 = 0.01;

/// Maps a raw 64-bit draw to `[-1, 1)`.
pub fn unit_uniform(raw: u64) -> f64 {
    let unit = (raw >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * unit - 1.0
}

/// Builds `count` copies of `base` with component `j` of system `i` set to
/// `base_j * (1 + u_ij * magnitude)`.
pub fn perturb_initial_conditions(
    base: &[f64],
    magnitude: f64,
    seed: u64,
    count: usize,
) -> Result<BatchStates> {
    if !(0.0..=0.1).contains(&magnitude) {
        return Err(OdeError::InvalidShape(format!(
            "perturbation magnitude {magnitude} outside [0, 0.1]"
        )));
    }
    if count == 0 || base.is_empty() {
        return Err(OdeError::InvalidShape(
            "need at least one system and one variable".into(),
        ));
    }
    let dim = base.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flat = vec![0.0; count * dim];
    for i in 0..count {
        for (j, &b) in base.iter().enumerate() {
            let u = unit_uniform(rng.next_u64());
            flat[i + count * j] = b * (1.0 + u * magnitude);
        }
    }
    BatchStates::from_flat(count, dim, flat)
}
