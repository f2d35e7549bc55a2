//! Seven gravitating bodies in the plane (the Pleiades test problem).
//!
//! State layout: `x_1..x_7, y_1..y_7, x'_1..x'_7, y'_1..y'_7`. Body `i`
//! (1-based) has mass `i`.

use sha2::{Digest, Sha256};

use crate::error::{OdeError, Result};
use crate::problem::OdeProblem;

pub const PLEIADES_STARS: usize = 7;
pub const PLEIADES_DIM: usize = 4 * PLEIADES_STARS;

/// Canonical initial conditions, one value per line.
pub const PLEIADES_ASSET: &str = include_str!("../../data/pleiades_initial.txt");

/// SHA-256 of [`PLEIADES_ASSET`].
pub const PLEIADES_ASSET_SHA256: &str =
    "af56a599305e8a7f635fb569badd183a70f153708a7c1f33ef07b6d5ef211d5e";

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Parses a 28-line initial-condition file.
pub fn parse_initial_conditions(text: &str) -> Result<Vec<f64>> {
    let values = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| {
            l.parse::<f64>()
                .map_err(|e| OdeError::Asset(format!("line {}: {l:?}: {e}", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.len() != PLEIADES_DIM {
        return Err(OdeError::Asset(format!(
            "expected {PLEIADES_DIM} values, found {}",
            values.len()
        )));
    }
    Ok(values)
}

/// The canonical initial state, checked against [`PLEIADES_ASSET_SHA256`].
pub fn pleiades_initial_conditions() -> Result<Vec<f64>> {
    let digest = sha256_hex(PLEIADES_ASSET.as_bytes());
    if digest != PLEIADES_ASSET_SHA256 {
        return Err(OdeError::Asset(format!("checksum mismatch: {digest}")));
    }
    parse_initial_conditions(PLEIADES_ASSET)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pleiades {
    masses: [f64; PLEIADES_STARS],
}

impl Default for Pleiades {
    fn default() -> Self {
        Self::new()
    }
}

impl Pleiades {
    pub fn new() -> Self {
        Self {
            masses: std::array::from_fn(|i| (i + 1) as f64),
        }
    }

    /// Same dynamics with other masses; used to reduce to simpler configurations.
    pub fn with_masses(masses: [f64; PLEIADES_STARS]) -> Self {
        Self { masses }
    }

    pub fn masses(&self) -> &[f64; PLEIADES_STARS] {
        &self.masses
    }

    /// Total linear momentum `sum m_i v_i`.
    pub fn momentum(&self, state: &[f64]) -> [f64; 2] {
        let (vx, vy) = (&state[14..21], &state[21..28]);
        let mut p = [0.0; 2];
        for i in 0..PLEIADES_STARS {
            p[0] += self.masses[i] * vx[i];
            p[1] += self.masses[i] * vy[i];
        }
        p
    }

    /// `sum m_i |v_i|`, a scale for judging momentum drift when the total
    /// momentum itself vanishes.
    pub fn momentum_scale(&self, state: &[f64]) -> f64 {
        (0..PLEIADES_STARS)
            .map(|i| self.masses[i] * state[14 + i].hypot(state[21 + i]))
            .sum()
    }

    /// Kinetic minus gravitational potential energy.
    pub fn energy(&self, state: &[f64]) -> f64 {
        let (x, y, vx, vy) = (&state[..7], &state[7..14], &state[14..21], &state[21..28]);
        let mut e = 0.0;
        for i in 0..PLEIADES_STARS {
            e += 0.5 * self.masses[i] * (vx[i] * vx[i] + vy[i] * vy[i]);
            for j in i + 1..PLEIADES_STARS {
                let r = (x[i] - x[j]).hypot(y[i] - y[j]);
                e -= self.masses[i] * self.masses[j] / r;
            }
        }
        e
    }
}

impl OdeProblem for Pleiades {
    fn dim(&self) -> usize {
        PLEIADES_DIM
    }

    fn rhs(&self, _t: f64, state: &[f64], _g: &[f64], dydt: &mut [f64]) {
        let (x, y) = (&state[..7], &state[7..14]);
        dydt[..14].copy_from_slice(&state[14..28]);
        let (ax, ay) = dydt[14..28].split_at_mut(PLEIADES_STARS);
        ax.fill(0.0);
        ay.fill(0.0);
        for i in 0..PLEIADES_STARS {
            for j in 0..PLEIADES_STARS {
                if i == j {
                    continue;
                }
                let dx = x[j] - x[i];
                let dy = y[j] - y[i];
                let r2 = dx * dx + dy * dy;
                let r3 = r2 * r2.sqrt();
                ax[i] += self.masses[j] * dx / r3;
                ay[i] += self.masses[j] * dy / r3;
            }
        }
    }
}
