//! RKC order, stiff heat-equation behaviour and first-step logic.

use batchode::convergence::{convergence_study, halving_ladder, FixedStepMethod};
use batchode::problems::HeatEquation;
use batchode::rkc::{rkc_driver_with, RkcWorkspace};
use batchode::{FnProblem, OdeProblem, ToleranceSettings};

const KAPPA: f64 = 2.0 / 13.0;

#[test]
fn second_order_on_decay() {
    let p = FnProblem::new(1, |_, y: &[f64], _, d: &mut [f64]| d[0] = -y[0]);
    let hs = halving_ladder(0.05, 4);
    let method = FixedStepMethod::Rkc {
        stages: 5,
        kappa: KAPPA,
    };
    let r = convergence_study(&p, method, &[1.0], &[], 0.0, 1.0, &hs, &[(-1.0f64).exp()]).unwrap();
    assert!(
        (r.slope - 2.0).abs() <= 0.2,
        "slope {} from {:?}",
        r.slope,
        r.points
    );
}

#[test]
fn second_order_with_time_dependent_forcing() {
    // y' = -y + sin(3t) exercises the internal stage times
    let p = FnProblem::new(1, |t: f64, y: &[f64], _, d: &mut [f64]| {
        d[0] = -y[0] + (3.0 * t).sin()
    });
    let exact = {
        let t: f64 = 1.0;
        // y(0) = 0: y = (sin 3t - 3 cos 3t + 3 e^-t) / 10
        ((3.0 * t).sin() - 3.0 * (3.0 * t).cos() + 3.0 * (-t).exp()) / 10.0
    };
    for s in [2, 5, 12] {
        let method = FixedStepMethod::Rkc {
            stages: s,
            kappa: KAPPA,
        };
        let r = convergence_study(
            &p,
            method,
            &[0.0],
            &[],
            0.0,
            1.0,
            &halving_ladder(0.05, 4),
            &[exact],
        )
        .unwrap();
        assert!(
            (r.slope - 2.0).abs() <= 0.2,
            "s={s}: slope {} from {:?}",
            r.slope,
            r.points
        );
    }
}

fn heat_initial(p: &HeatEquation) -> Vec<f64> {
    (0..p.dim())
        .map(|i| {
            let x = p.x(i);
            (std::f64::consts::PI * x).sin() + 0.5 * (x * (1.0 - x)) * (40.0 * x).sin().abs()
        })
        .collect()
}

#[test]
fn heat_equation_maximum_principle_and_large_steps() {
    let p = HeatEquation::new(64);
    let sigma = p.spectral_radius();
    let mut y = heat_initial(&p);
    let tol = ToleranceSettings::default().with_rkc_tolerances(1e-6, 1e-3);
    let mut ws = RkcWorkspace::new(64);
    let mut last_max = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut max_h = 0.0f64;
    let mut worst_err = 0.0f64;
    let stats = rkc_driver_with(&p, 0.0, 1.0, &mut y, &[], &tol, &mut ws, &mut |s| {
        let m = s.y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(
            m <= last_max * (1.0 + 1e-12),
            "max-norm grew at t={}: {m} > {last_max}",
            s.t
        );
        last_max = m;
        max_h = max_h.max(s.h);
        worst_err = worst_err.max(s.err);
    })
    .unwrap();
    assert!(worst_err <= 1.0);
    assert!(!stats.underflow);
    assert!(
        max_h >= 100.0 * 2.0 / sigma,
        "largest step {max_h} vs explicit-Euler limit {}",
        2.0 / sigma
    );
    assert!(y.iter().all(|v| *v >= -1e-9));
}
