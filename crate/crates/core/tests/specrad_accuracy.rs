//! Power-method spectral radius against analytic and Gershgorin oracles.

use batchode::problems::HeatEquation;
use batchode::specrad::{gershgorin_bound, power_method_spec_rad};
use batchode::{FnProblem, OdeProblem};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0)
        .collect()
}

fn eval<P: OdeProblem>(p: &P, y: &[f64]) -> Vec<f64> {
    let mut f = vec![0.0; y.len()];
    p.rhs(0.0, y, &[], &mut f);
    f
}

/// Analytic top eigenvalue magnitude of the `(1, -2, 1) / dx^2` stencil.
fn stencil_sigma(n: usize) -> f64 {
    let dx = 1.0 / (n + 1) as f64;
    let s = (n as f64 * std::f64::consts::PI / (2.0 * (n + 1) as f64)).sin();
    4.0 / (dx * dx) * s * s
}

#[test]
fn diagonal_operator() {
    let p = FnProblem::new(3, |_, y: &[f64], _, d: &mut [f64]| {
        d[0] = -y[0];
        d[1] = -10.0 * y[1];
        d[2] = -100.0 * y[2];
    });
    let y = [1.0, 1.0, 1.0];
    let r = power_method_spec_rad(&p, 0.0, &y, &[], &eval(&p, &y), 1.0, &[0.3, -0.2, 0.5]);
    assert!(r.converged);
    assert!((100.0..=130.0).contains(&r.sigma), "{}", r.sigma);
    let bound = gershgorin_bound(&[
        vec![-1.0, 0.0, 0.0],
        vec![0.0, -10.0, 0.0],
        vec![0.0, 0.0, -100.0],
    ])
    .unwrap();
    assert!(r.sigma <= 1.2 * bound * 1.01);
}

#[test]
fn heat_stencil_within_band() {
    let p = HeatEquation::new(64);
    let sigma_star = stencil_sigma(64);
    assert!((p.spectral_radius() - sigma_star).abs() <= 1e-9 * sigma_star);
    let y: Vec<f64> = (0..64)
        .map(|i| (std::f64::consts::PI * p.x(i)).sin())
        .collect();
    let f = eval(&p, &y);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let v = random_vector(&mut rng, 64);
        let r = power_method_spec_rad(&p, 0.0, &y, &[], &f, 1.0, &v);
        assert!(
            r.sigma >= sigma_star && r.sigma <= 1.35 * sigma_star,
            "sigma {} vs analytic {sigma_star} ({} iterations, converged {})",
            r.sigma,
            r.iterations,
            r.converged
        );
        let dx = p.dx();
        assert!(r.sigma / 1.2 <= 4.0 / (dx * dx) * 1.01);
    }
    let bound = gershgorin_bound(&p.jacobian()).unwrap();
    assert!((bound - 4.0 / (p.dx() * p.dx())).abs() <= 1e-6 * bound);
}

#[test]
fn dominant_eigenvalue_band_for_linear_systems() {
    // symmetric 2x2 blocks with eigenvalues -lambda and -lambda/4
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..20 {
        let lambda = 10.0f64.powf(1.0 + 3.0 * (rng.next_u64() as f64 / u64::MAX as f64));
        let p = FnProblem::new(2, move |_, y: &[f64], _, d: &mut [f64]| {
            let (a, b) = (
                -(lambda + lambda / 4.0) / 2.0,
                -(lambda - lambda / 4.0) / 2.0,
            );
            d[0] = a * y[0] + b * y[1];
            d[1] = b * y[0] + a * y[1];
        });
        let y = random_vector(&mut rng, 2);
        let mut v = random_vector(&mut rng, 2);
        // a start almost orthogonal to the dominant direction (1, 1) stalls on
        // the subdominant mode; keep the dominant share at least 10%
        while (v[0] + v[1]).abs() < 0.1 * (v[0] - v[1]).abs() {
            v = random_vector(&mut rng, 2);
        }
        let r = power_method_spec_rad(&p, 0.0, &y, &[], &eval(&p, &y), 1.0, &v);
        let ratio = r.sigma / lambda;
        assert!(
            (0.95..=1.30).contains(&ratio),
            "trial {trial}: ratio {ratio}"
        );
    }
}

#[test]
fn warm_start_saves_iterations() {
    // constant Jacobian with a moderate dominance ratio so a cold start needs several iterations
    let diag: Vec<f64> = (1..=16).map(|k| -(k as f64).powi(2)).collect();
    let d2 = diag.clone();
    let p = FnProblem::new(16, move |_, y: &[f64], _, d: &mut [f64]| {
        for i in 0..16 {
            d[i] = d2[i] * y[i];
        }
    });
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut successes = 0;
    for _ in 0..20 {
        let y = random_vector(&mut rng, 16);
        let f = eval(&p, &y);
        let first = power_method_spec_rad(&p, 0.0, &y, &[], &f, 1.0, &random_vector(&mut rng, 16));
        let y2 = random_vector(&mut rng, 16);
        let f2 = eval(&p, &y2);
        let warm = power_method_spec_rad(&p, 0.0, &y2, &[], &f2, 1.0, &first.eigenvector);
        let cold = power_method_spec_rad(&p, 0.0, &y2, &[], &f2, 1.0, &random_vector(&mut rng, 16));
        if warm.iterations < cold.iterations {
            successes += 1;
        }
    }
    assert!(successes >= 15, "warm start won {successes}/20");
}
