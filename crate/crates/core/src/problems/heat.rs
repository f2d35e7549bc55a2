use std::f64::consts::PI;

use crate::problem::OdeProblem;

/// Method-of-lines semi-discretization of `u_t = u_xx` on `(0, 1)` with
/// homogeneous Dirichlet boundaries and `n` interior points.
///
/// The Jacobian is the constant tridiagonal stencil `(1, -2, 1) / dx^2`, with
/// eigenvalues `-(4 / dx^2) sin^2(k pi dx / 2)`, `k = 1..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatEquation {
    n: usize,
    dx: f64,
}

impl HeatEquation {
    pub fn new(interior_points: usize) -> Self {
        assert!(
            interior_points >= 1,
            "heat equation needs at least one interior point"
        );
        Self {
            n: interior_points,
            dx: 1.0 / (interior_points + 1) as f64,
        }
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Magnitude of the `k`-th stencil eigenvalue.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let s = (k as f64 * PI * self.dx / 2.0).sin();
        4.0 / (self.dx * self.dx) * s * s
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalue(self.n)
    }

    /// Grid coordinate of interior point `i` (0-based).
    pub fn x(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.dx
    }

    /// Dense Jacobian, for test oracles.
    pub fn jacobian(&self) -> Vec<Vec<f64>> {
        let inv = 1.0 / (self.dx * self.dx);
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| match i.abs_diff(j) {
                        0 => -2.0 * inv,
                        1 => inv,
                        _ => 0.0,
                    })
                    .collect()
            })
            .collect()
    }
}

impl OdeProblem for HeatEquation {
    fn dim(&self) -> usize {
        self.n
    }

    fn rhs(&self, _t: f64, u: &[f64], _g: &[f64], dudt: &mut [f64]) {
        let inv = 1.0 / (self.dx * self.dx);
        let n = self.n;
        for i in 0..n {
            let left = if i > 0 { u[i - 1] } else { 0.0 };
            let right = if i + 1 < n { u[i + 1] } else { 0.0 };
            dudt[i] = (left - 2.0 * u[i] + right) * inv;
        }
    }

    fn spectral_radius_hint(&self, _t: f64, _y: &[f64], _g: &[f64]) -> Option<f64> {
        Some(self.spectral_radius())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_state_has_zero_derivative() {
        let p = HeatEquation::new(5);
        let mut d = [1.0; 5];
        p.rhs(0.0, &[0.0; 5], &[], &mut d);
        assert_eq!(d, [0.0; 5]);
    }

    #[test]
    fn two_point_stencil() {
        let p = HeatEquation::new(2);
        let mut d = [0.0; 2];
        p.rhs(0.0, &[1.0, 0.0], &[], &mut d);
        assert!(
            (d[0] + 18.0).abs() < 1e-12 && (d[1] - 9.0).abs() < 1e-12,
            "{d:?}"
        );
    }

    #[test]
    fn lowest_sine_mode_is_an_eigenvector() {
        let p = HeatEquation::new(64);
        let u: Vec<f64> = (0..64).map(|i| (PI * p.x(i)).sin()).collect();
        let mut d = vec![0.0; 64];
        p.rhs(0.0, &u, &[], &mut d);
        let lambda = p.eigenvalue(1);
        let resid = (0..64)
            .map(|i| (d[i] + lambda * u[i]).abs())
            .fold(0.0, f64::max);
        let scale = u.iter().map(|x| (lambda * x).abs()).fold(0.0, f64::max);
        assert!(resid <= 1e-12 * scale, "{resid} vs {scale}");
    }

    #[test]
    fn spectral_radius_value() {
        let p = HeatEquation::new(64);
        let expected = 4.0 * 65.0 * 65.0 * (64.0 * PI / 130.0).sin().powi(2);
        assert!((p.spectral_radius() - expected).abs() < 1e-9 * expected);
        assert!((p.spectral_radius() - 1.69e4).abs() < 0.01 * 1.69e4);
    }
}
