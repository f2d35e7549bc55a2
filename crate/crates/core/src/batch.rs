//! System-major interleaved storage for many independent state vectors.
//!
//! Variable `j` of system `i` lives at flat index `i + num_systems * j`, so
//! the same unknown of consecutive systems sits contiguously in memory. The
//! parameter vectors use the same interleaving.

use crate::error::{OdeError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BatchStates {
    num_systems: usize,
    dim: usize,
    param_dim: usize,
    values: Vec<f64>,
    params: Vec<f64>,
}

fn interleave(vectors: &[Vec<f64>], width: usize, what: &str) -> Result<Vec<f64>> {
    let n = vectors.len();
    let mut flat = vec![0.0; n * width];
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != width {
            return Err(OdeError::InvalidShape(format!(
                "{what} vector {i} has length {}, expected {width}",
                v.len()
            )));
        }
        for (j, &x) in v.iter().enumerate() {
            flat[i + n * j] = x;
        }
    }
    Ok(flat)
}

impl BatchStates {
    /// Packs per-system state vectors into the interleaved layout, with no
    /// parameters.
    pub fn pack(vectors: &[Vec<f64>]) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(OdeError::InvalidShape(
                "batch needs at least one system".into(),
            ));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(OdeError::InvalidShape(
                "state dimension must be positive".into(),
            ));
        }
        let values = interleave(vectors, dim, "state")?;
        Ok(Self {
            num_systems: vectors.len(),
            dim,
            param_dim: 0,
            values,
            params: Vec::new(),
        })
    }

    /// Packs states together with one parameter vector per system.
    pub fn pack_with_params(vectors: &[Vec<f64>], params: &[Vec<f64>]) -> Result<Self> {
        let mut batch = Self::pack(vectors)?;
        if params.len() != vectors.len() {
            return Err(OdeError::InvalidShape(format!(
                "{} parameter vectors for {} systems",
                params.len(),
                vectors.len()
            )));
        }
        let param_dim = params[0].len();
        batch.params = interleave(params, param_dim, "parameter")?;
        batch.param_dim = param_dim;
        Ok(batch)
    }

    /// Wraps already-interleaved storage.
    pub fn from_flat(num_systems: usize, dim: usize, values: Vec<f64>) -> Result<Self> {
        Self::from_flat_with_params(num_systems, dim, values, 0, Vec::new())
    }

    pub fn from_flat_with_params(
        num_systems: usize,
        dim: usize,
        values: Vec<f64>,
        param_dim: usize,
        params: Vec<f64>,
    ) -> Result<Self> {
        if num_systems == 0 || dim == 0 {
            return Err(OdeError::InvalidShape(format!(
                "num_systems = {num_systems}, dim = {dim}; both must be positive"
            )));
        }
        if values.len() != num_systems * dim {
            return Err(OdeError::InvalidShape(format!(
                "flat state length {} != {num_systems} x {dim}",
                values.len()
            )));
        }
        if params.len() != num_systems * param_dim {
            return Err(OdeError::InvalidShape(format!(
                "flat parameter length {} != {num_systems} x {param_dim}",
                params.len()
            )));
        }
        Ok(Self {
            num_systems,
            dim,
            param_dim,
            values,
            params,
        })
    }

    /// Inverse of [`pack`](Self::pack).
    pub fn unpack(&self) -> Vec<Vec<f64>> {
        (0..self.num_systems).map(|i| self.system(i)).collect()
    }

    pub fn num_systems(&self) -> usize {
        self.num_systems
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn param_dim(&self) -> usize {
        self.param_dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    #[inline]
    pub fn index(&self, system: usize, var: usize) -> usize {
        system + self.num_systems * var
    }

    pub fn get(&self, system: usize, var: usize) -> f64 {
        self.values[self.index(system, var)]
    }

    /// Copies system `i`'s state out of the interleaved storage.
    pub fn system(&self, i: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.load_system(i, &mut out);
        out
    }

    pub fn load_system(&self, i: usize, out: &mut [f64]) {
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.values[i + self.num_systems * j];
        }
    }

    pub fn store_system(&mut self, i: usize, y: &[f64]) {
        for (j, &v) in y.iter().enumerate() {
            self.values[i + self.num_systems * j] = v;
        }
    }

    /// Copies system `i`'s parameter vector.
    pub fn system_params(&self, i: usize) -> Vec<f64> {
        (0..self.param_dim)
            .map(|j| self.params[i + self.num_systems * j])
            .collect()
    }
}
