//! The ODE system abstraction `dy/dt = f(t, y, g)`.

/// A system of `dim` first-order ODEs with a constant parameter vector `g`.
///
/// Implementations must be pure: identical inputs give bitwise-identical
/// outputs, and `rhs` may be called concurrently from several workers.
pub trait OdeProblem: Sync {
    /// Number of unknowns.
    fn dim(&self) -> usize;

    /// Length of the parameter vector `g`.
    fn param_dim(&self) -> usize {
        0
    }

    /// Writes `f(t, y, g)` into `dydt`. Both slices have length `dim()`.
    fn rhs(&self, t: f64, y: &[f64], g: &[f64], dydt: &mut [f64]);

    /// Analytic spectral radius of the Jacobian, when known. Only test oracles
    /// use this; the RKC driver always runs the power method.
    fn spectral_radius_hint(&self, _t: f64, _y: &[f64], _g: &[f64]) -> Option<f64> {
        None
    }
}

impl<P: OdeProblem + ?Sized> OdeProblem for &P {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn param_dim(&self) -> usize {
        (**self).param_dim()
    }

    fn rhs(&self, t: f64, y: &[f64], g: &[f64], dydt: &mut [f64]) {
        (**self).rhs(t, y, g, dydt)
    }

    fn spectral_radius_hint(&self, t: f64, y: &[f64], g: &[f64]) -> Option<f64> {
        (**self).spectral_radius_hint(t, y, g)
    }
}

/// Adapts a closure `(t, y, g, dydt)` into an [`OdeProblem`].
pub struct FnProblem<F> {
    dim: usize,
    param_dim: usize,
    f: F,
}

impl<F> FnProblem<F>
where
    F: Fn(f64, &[f64], &[f64], &mut [f64]) + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self {
            dim,
            param_dim: 0,
            f,
        }
    }

    pub fn with_params(dim: usize, param_dim: usize, f: F) -> Self {
        Self { dim, param_dim, f }
    }
}

impl<F> OdeProblem for FnProblem<F>
where
    F: Fn(f64, &[f64], &[f64], &mut [f64]) + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn param_dim(&self) -> usize {
        self.param_dim
    }

    fn rhs(&self, t: f64, y: &[f64], g: &[f64], dydt: &mut [f64]) {
        (self.f)(t, y, g, dydt)
    }
}
