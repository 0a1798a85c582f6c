use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::solver::{DistanceSolver, SolverOptions};
use super::state::{state_pullback_symbol, State, SystemKind};
use super::system::System;

/// Atoms used to discretize a smooth density on the circle.
pub const CIRCLE_DISCRETIZATION: usize = 8192;

/// Margin granted to the upper side of [`sandwich_check`].
pub const SANDWICH_MARGIN: f64 = 1e-3;

/// Arc-length distance between two angles.
pub fn exact_circle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).abs().rem_euclid(TAU);
    d.min(TAU - d)
}

/// Wasserstein-1 distance between two probability measures on the circle,
/// each a list of `(angle, weight)` atoms of equal total mass. This is the Connes distance for
/// `D = -i d/dx` on `C(S¹)`.
///
/// With `F` the cumulative distribution of the signed difference, the
/// distance is `min_c ∫ |F - c|`, attained at a weighted median of `F`.
pub fn circle_wasserstein(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let mut atoms: Vec<(f64, f64)> = a
        .iter()
        .map(|&(x, w)| (x.rem_euclid(TAU), w))
        .chain(b.iter().map(|&(x, w)| (x.rem_euclid(TAU), -w)))
        .collect();
    if atoms.is_empty() {
        return 0.0;
    }
    atoms.sort_by(|p, q| p.0.total_cmp(&q.0));
    // (length, value of F) per arc; the wrap-around arc carries F = 0.
    let mut segments = Vec::with_capacity(atoms.len());
    let mut cumulative = 0.0;
    for k in 0..atoms.len() {
        cumulative += atoms[k].1;
        let end = if k + 1 < atoms.len() {
            atoms[k + 1].0
        } else {
            atoms[0].0 + TAU
        };
        segments.push((end - atoms[k].0, cumulative));
    }
    let mut by_value = segments.clone();
    by_value.sort_by(|p, q| p.1.total_cmp(&q.1));
    let mut acc = 0.0;
    let mut median = by_value[0].1;
    for (len, value) in &by_value {
        acc += len;
        if acc >= PI {
            median = *value;
            break;
        }
    }
    segments.iter().map(|(len, v)| len * (v - median).abs()).sum()
}

/// `φ ∘ R_n` for a Toeplitz state, discretized into `atoms` equal-spaced
/// atoms with weights `(1/M) Σ_k μ_k e^{-ikx_i}`.
pub fn compressed_state_measure(state: &State, atoms: usize) -> Result<Vec<(f64, f64)>> {
    if state.kind() != SystemKind::Toeplitz {
        return Err(Error::SystemMismatch);
    }
    let mu = state.moments().expect("Toeplitz states have moments");
    let n = state.n() as i64;
    Ok((0..atoms)
        .map(|i| {
            let x = TAU * i as f64 / atoms as f64;
            let density: Complex64 = (1 - n..n)
                .map(|k| mu[(k + n - 1) as usize] * Complex64::from_polar(1.0, -(k as f64) * x))
                .sum();
            (x, density.re / atoms as f64)
        })
        .collect())
}

/// `d_limit - 2γ ≤ d_truncated ≤ d_limit + SANDWICH_MARGIN`.
pub fn sandwich_check(d_truncated: f64, d_limit: f64, gamma: f64) -> bool {
    sandwich_check_with_margin(d_truncated, d_limit, gamma, SANDWICH_MARGIN)
}

pub fn sandwich_check_with_margin(d_truncated: f64, d_limit: f64, gamma: f64, margin: f64) -> bool {
    d_limit - 2.0 * gamma <= d_truncated && d_truncated <= d_limit + margin
}

/// Distances between two matched pairs of states, one pair on the truncated
/// system and the corresponding pair in the limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistortionPair {
    pub d_truncated: f64,
    pub d_limit: f64,
}

/// `max |d_truncated - d_limit|` over the sample, 0 when empty.
pub fn distortion_estimate(pairs: &[DistortionPair]) -> f64 {
    pairs
        .iter()
        .map(|p| (p.d_truncated - p.d_limit).abs())
        .fold(0.0, f64::max)
}

/// Upper bound `γ + γ'` on the Gromov–Hausdorff distance between the state
/// spaces, half the distortion bound `2γ + 2γ'`.
pub fn gh_upper_bound(gamma: f64, gamma_prime: f64) -> f64 {
    gamma + gamma_prime
}

/// Distortion sample for the Toeplitz system of size `n`.
///
/// Uses the correspondence pairing `ev_x` with `S_n*(ev_x)` for each point
/// in `points`, and each of `densities` random density states `φ_n` with
/// `φ_n ∘ R_n`. Returns one entry per unordered pair of sample states.
pub fn toeplitz_distortion_sample(
    n: usize,
    points: &[f64],
    densities: usize,
    seed: u64,
    opts: &SolverOptions,
) -> Result<Vec<DistortionPair>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut truncated = Vec::new();
    let mut limit = Vec::new();
    for &x in points {
        truncated.push(state_pullback_symbol(x, n));
        limit.push(vec![(x, 1.0)]);
    }
    for _ in 0..densities {
        let s = State::random_toeplitz(&mut rng, n);
        limit.push(compressed_state_measure(&s, CIRCLE_DISCRETIZATION)?);
        truncated.push(s);
    }
    let solver = DistanceSolver::new(System::toeplitz(n))?;
    let mut pairs = Vec::new();
    for i in 0..truncated.len() {
        for j in i + 1..truncated.len() {
            let d_truncated = solver.solve(&truncated[i], &truncated[j], opts)?.value;
            let d_limit = circle_wasserstein(&limit[i], &limit[j]);
            pairs.push(DistortionPair { d_truncated, d_limit });
        }
    }
    Ok(pairs)
}

/// One row of the distance curve `x ↦ d_n(S_n*(ev_0), S_n*(ev_x))`, or its
/// Fejér–Riesz analogue, with the band `[lower_band, d_exact]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub d_n: f64,
    pub d_exact: f64,
    /// `max(0, d_exact - 2γ_n)`.
    pub lower_band: f64,
    pub iterations: usize,
    pub feasibility_residual: f64,
    pub oracle_lower_bound: f64,
}

impl CurvePoint {
    pub fn in_band(&self) -> bool {
        self.lower_band <= self.d_n && self.d_n <= self.d_exact + SANDWICH_MARGIN
    }
}

/// Evaluates one curve point on a Toeplitz or Fejér–Riesz solver.
pub fn curve_point(solver: &DistanceSolver, x: f64, gamma: f64, opts: &SolverOptions) -> Result<CurvePoint> {
    let n = solver.system().n();
    let (base, moved) = match solver.system().kind() {
        SystemKind::Toeplitz => (state_pullback_symbol(0.0, n), state_pullback_symbol(x, n)),
        SystemKind::FejerRiesz => (State::fr_evaluation(0.0, n), State::fr_evaluation(x, n)),
        SystemKind::Fuzzy => return Err(Error::SystemMismatch),
    };
    let r = solver.solve(&base, &moved, opts)?;
    let d_exact = exact_circle_distance(0.0, x);
    Ok(CurvePoint {
        x,
        d_n: r.value,
        d_exact,
        lower_band: (d_exact - 2.0 * gamma).max(0.0),
        iterations: r.iterations,
        feasibility_residual: r.feasibility_residual,
        oracle_lower_bound: r.oracle_lower_bound,
    })
}
