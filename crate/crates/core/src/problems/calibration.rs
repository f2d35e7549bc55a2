use crate::problem::OdeProblem;

/// `dy/dt = -g_0 y`, with the rate carried in the parameter vector.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExpDecay;

impl ExpDecay {
    pub fn exact(y0: f64, rate: f64, t: f64) -> f64 {
        y0 * (-rate * t).exp()
    }
}

impl OdeProblem for ExpDecay {
    fn dim(&self) -> usize {
        1
    }

    fn param_dim(&self) -> usize {
        1
    }

    fn rhs(&self, _t: f64, y: &[f64], g: &[f64], dydt: &mut [f64]) {
        dydt[0] = -g[0] * y[0];
    }

    fn spectral_radius_hint(&self, _t: f64, _y: &[f64], g: &[f64]) -> Option<f64> {
        Some(g[0].abs())
    }
}

/// Unit harmonic oscillator `q' = p, p' = -q`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Harmonic;

impl Harmonic {
    pub fn exact(q0: f64, p0: f64, t: f64) -> [f64; 2] {
        let (s, c) = t.sin_cos();
        [q0 * c + p0 * s, -q0 * s + p0 * c]
    }

    pub fn energy(state: &[f64]) -> f64 {
        state[0] * state[0] + state[1] * state[1]
    }
}

impl OdeProblem for Harmonic {
    fn dim(&self) -> usize {
        2
    }

    fn rhs(&self, _t: f64, y: &[f64], _g: &[f64], dydt: &mut [f64]) {
        dydt[0] = y[1];
        dydt[1] = -y[0];
    }

    fn spectral_radius_hint(&self, _t: f64, _y: &[f64], _g: &[f64]) -> Option<f64> {
        Some(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rkck::rkck_driver;
    use crate::ToleranceSettings;

    #[test]
    fn rhs_examples() {
        let mut d = [0.0];
        ExpDecay.rhs(0.0, &[2.0], &[3.0], &mut d);
        assert_eq!(d, [-6.0]);
        let mut d = [0.0; 2];
        Harmonic.rhs(0.0, &[1.0, 0.0], &[], &mut d);
        assert_eq!(d, [0.0, -1.0]);
    }

    #[test]
    fn oscillator_energy_drift_over_a_period() {
        let mut y = [1.0, 0.0];
        rkck_driver(
            &Harmonic,
            0.0,
            2.0 * std::f64::consts::PI,
            &mut y,
            &[],
            &ToleranceSettings::default(),
        )
        .unwrap();
        assert!((Harmonic::energy(&y) - 1.0).abs() < 1e-7);
    }
}
