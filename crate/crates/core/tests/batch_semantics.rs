//! Layout, partitioning, isolation and restart behaviour of batched runs.

use batchode::driver::{integrate_batch, outer_loop, SolverChoice};
use batchode::problems::{
    perturb_initial_conditions, pleiades_initial_conditions, HeatEquation, Pleiades,
};
use batchode::rkc::{rkc_driver_with, RkcWorkspace};
use batchode::{BatchStates, FnProblem, ToleranceSettings};

#[test]
fn large_random_batch_round_trips() {
    let base = pleiades_initial_conditions().unwrap();
    let batch = perturb_initial_conditions(&base, 0.05, 99, 1024).unwrap();
    let vectors = batch.unpack();
    assert_eq!(vectors.len(), 1024);
    let again = BatchStates::pack(&vectors).unwrap();
    assert_eq!(again.values(), batch.values());
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            assert_eq!(x.to_bits(), batch.values()[i + 1024 * j].to_bits());
        }
    }
}

#[test]
fn output_is_invariant_under_system_permutation_and_workers() {
    let base = pleiades_initial_conditions().unwrap();
    let batch = perturb_initial_conditions(&base, 0.01, 5, 24).unwrap();
    let tol = ToleranceSettings::default();
    let p = Pleiades::new();
    let reference = integrate_batch(&p, &batch, 0.0, 0.1, SolverChoice::Rkck, &tol, 1).unwrap();

    // reverse-and-rotate permutation puts every system on a different worker
    let vectors = batch.unpack();
    let perm: Vec<usize> = (0..24).map(|k| (23 - k + 7) % 24).collect();
    let permuted =
        BatchStates::pack(&perm.iter().map(|&i| vectors[i].clone()).collect::<Vec<_>>()).unwrap();
    for workers in [1, 2, 4, 8] {
        let out =
            integrate_batch(&p, &permuted, 0.0, 0.1, SolverChoice::Rkck, &tol, workers).unwrap();
        for (k, &i) in perm.iter().enumerate() {
            let a = out.batch.system(k);
            let b = reference.batch.system(i);
            assert!(
                a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()),
                "system {i} at workers {workers}"
            );
            assert_eq!(out.stats[k], reference.stats[i]);
        }
    }
}

#[test]
fn perturbing_one_system_changes_only_that_system() {
    let p = HeatEquation::new(16);
    let vectors: Vec<Vec<f64>> = (0..6)
        .map(|k| {
            (0..16)
                .map(|i| ((k + 1) as f64 * std::f64::consts::PI * p.x(i)).sin())
                .collect()
        })
        .collect();
    let tol = ToleranceSettings::default().with_rkc_tolerances(1e-8, 1e-5);
    let a = integrate_batch(
        &p,
        &BatchStates::pack(&vectors).unwrap(),
        0.0,
        0.05,
        SolverChoice::Rkc,
        &tol,
        3,
    )
    .unwrap();
    let mut changed = vectors.clone();
    changed[3][7] += 0.25;
    let b = integrate_batch(
        &p,
        &BatchStates::pack(&changed).unwrap(),
        0.0,
        0.05,
        SolverChoice::Rkc,
        &tol,
        3,
    )
    .unwrap();
    for i in 0..6 {
        let same = a.batch.system(i) == b.batch.system(i);
        assert_eq!(same, i != 3, "system {i}");
    }
}

#[test]
fn restarted_windows_match_single_window() {
    let p = FnProblem::new(1, |_, y: &[f64], _, d: &mut [f64]| d[0] = -y[0]);
    let batch = BatchStates::pack(&[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
    let exact = (-1.0f64).exp();
    for solver in [SolverChoice::Rkck, SolverChoice::Rkc] {
        // RKC controls the local error per step, so its global error is roughly
        // the step count times relTol
        let tol = ToleranceSettings::default().with_rkc_tolerances(1e-14, 1e-12);
        let mut windows = 0;
        let (ten, stats) = outer_loop(&p, &batch, 0.0, 1.0, 0.1, solver, &tol, 2, &mut |_| {
            windows += 1
        })
        .unwrap();
        let (one, _) = outer_loop(&p, &batch, 0.0, 1.0, 1.0, solver, &tol, 2, &mut |_| {}).unwrap();
        assert_eq!(windows, 10);
        assert_eq!(stats.cold_starts, 30);
        for i in 0..3 {
            let want = (i + 1) as f64 * exact;
            for got in [ten.get(i, 0), one.get(i, 0)] {
                assert!(
                    ((got - want) / want).abs() <= 1e-8,
                    "{}: {got} vs {want}",
                    solver.name()
                );
            }
        }
    }
}

#[test]
fn fresh_workspace_reads_unset_and_reused_one_does_not() {
    let p = FnProblem::new(1, |_, y: &[f64], _, d: &mut [f64]| d[0] = -y[0]);
    let tol = ToleranceSettings::default();
    let mut ws = RkcWorkspace::new(1);
    assert!(ws.is_unset(tol.uround));
    let mut y = [1.0];
    let s = rkc_driver_with(&p, 0.0, 0.1, &mut y, &[], &tol, &mut ws, &mut |_| {}).unwrap();
    assert!(s.cold_start);
    assert!(!ws.is_unset(tol.uround));
}
