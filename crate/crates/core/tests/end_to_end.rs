//! Cross-module behaviour through the public API.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spectrunc_core::circle::{gamma_n, symbol, GAMMA_QUAD_POINTS};
use spectrunc_core::metric::{
    circle_wasserstein, compressed_state_measure, exact_circle_distance, pullback_compress, state_pullback_symbol,
    CIRCLE_DISCRETIZATION,
};
use spectrunc_core::{
    connes_distance, DistanceSolver, Element, SolverOptions, SpherePoint, State, Su2Rep, System, ToeplitzElement,
};

#[test]
fn two_by_two_curve_is_the_chord_length() {
    // For n = 2 the curve is 2 sin(x/2).
    let solver = DistanceSolver::new(System::toeplitz(2)).unwrap();
    let opts = SolverOptions::default();
    for j in 0..=8 {
        let x = PI * j as f64 / 8.0;
        let d = solver
            .solve(&state_pullback_symbol(0.0, 2), &state_pullback_symbol(x, 2), &opts)
            .unwrap()
            .value;
        assert!((d - 2.0 * (x / 2.0).sin()).abs() < 1e-4, "x={x}: {d}");
    }
}

#[test]
fn distances_approach_the_circle_metric() {
    let x = 2.0;
    let exact = exact_circle_distance(0.0, x);
    let mut previous_gap = f64::INFINITY;
    for n in [3, 6, 12] {
        let d = connes_distance(
            &System::toeplitz(n),
            &state_pullback_symbol(0.0, n),
            &state_pullback_symbol(x, n),
            1e-4,
            100_000,
        )
        .unwrap()
        .value;
        let gap = exact - d;
        assert!(gap >= -1e-3 && gap <= 2.0 * gamma_n(n, GAMMA_QUAD_POINTS));
        assert!(gap < previous_gap);
        previous_gap = gap;
    }
}

#[test]
fn truncated_distance_dominates_the_limit_of_its_pullback() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 5;
    let a = State::random_toeplitz(&mut rng, n);
    let b = State::random_toeplitz(&mut rng, n);
    let d_n = connes_distance(&System::toeplitz(n), &a, &b, 1e-4, 100_000)
        .unwrap()
        .value;
    let w1 = circle_wasserstein(
        &compressed_state_measure(&a, CIRCLE_DISCRETIZATION).unwrap(),
        &compressed_state_measure(&b, CIRCLE_DISCRETIZATION).unwrap(),
    );
    assert!(w1 <= d_n + 1e-3);
    let d_poly = connes_distance(
        &System::fejer_riesz(n),
        &pullback_compress(&a).unwrap(),
        &pullback_compress(&b).unwrap(),
        1e-4,
        100_000,
    )
    .unwrap()
    .value;
    assert!(d_poly <= d_n + 1e-4);
}

#[test]
fn evaluation_state_reads_the_symbol() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t = ToeplitzElement::random_hermitian(&mut rng, 6);
    let value = state_pullback_symbol(0.9, 6)
        .eval(&Element::Toeplitz(t.clone()))
        .unwrap();
    assert!((value - symbol(&t).eval(0.9)).norm() < 1e-12);
}

#[test]
fn fuzzy_distances_respect_rotation_symmetry() {
    let n = 3;
    let rep = Su2Rep::new(n);
    let solver = DistanceSolver::new(System::Fuzzy(rep.clone())).unwrap();
    let opts = SolverOptions::default();
    let theta = 1.1;
    let d_a = solver
        .solve(
            &State::coherent(&rep, SpherePoint::north()),
            &State::coherent(&rep, SpherePoint::new(theta, 0.0)),
            &opts,
        )
        .unwrap()
        .value;
    // the same pair rotated about the polar axis
    let d_b = solver
        .solve(
            &State::coherent(&rep, SpherePoint::north()),
            &State::coherent(&rep, SpherePoint::new(theta, 2.3)),
            &opts,
        )
        .unwrap()
        .value;
    assert!((d_a - d_b).abs() < 2e-4);
    assert!(d_a <= theta + 1e-4);
    assert!(d_a > 0.0);
}
