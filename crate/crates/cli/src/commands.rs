use std::f64::consts::PI;

use rayon::prelude::*;
use spectrunc_core::circle::{gamma_n, gamma_prime_n, GAMMA_QUAD_POINTS};
use spectrunc_core::fejer_riesz::gamma_prime_fr;
use spectrunc_core::fuzzy_sphere::{
    gamma_sphere, quadrature_for, quantization_error_ratio, su2_generators, SpherePoint,
};
use spectrunc_core::metric::{curve_point, gh_upper_bound, DistanceSolver, SolverOptions, State, System};
use spectrunc_core::selftest::{run_criterion, Fault, SelftestConfig, CRITERIA};

use crate::config::{Family, RunConfig};
use crate::output::{progress, write_rows, BoundsRow, CurveRow, FuzzyRow};
use crate::{CliError, Exit};

fn pool(cfg: &RunConfig) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))
}

fn solver_options(cfg: &RunConfig) -> SolverOptions {
    SolverOptions {
        tol: cfg.tol,
        oracle_samples: cfg.samples,
        seed: cfg.seed,
        ..SolverOptions::default()
    }
}

/// Distance curve `x ↦ d_n(0, x)` on a uniform grid of `[0, 2π)`.
pub fn cmd_curve(cfg: &RunConfig) -> Result<Exit, CliError> {
    let pool = pool(cfg)?;
    let opts = solver_options(cfg);
    let mut rows = Vec::new();
    let mut outside = 0;
    for n in cfg.sizes() {
        let system = match cfg.family {
            Family::Toeplitz => System::toeplitz(n),
            _ => System::fejer_riesz(n),
        };
        let solver = DistanceSolver::new(system)?;
        let gamma = gamma_n(n, GAMMA_QUAD_POINTS);
        let xs: Vec<f64> = (0..cfg.x_steps)
            .map(|j| 2.0 * PI * j as f64 / cfg.x_steps as f64)
            .collect();
        // collect keeps grid order whatever the completion order
        let points = pool.install(|| {
            xs.par_iter()
                .map(|&x| curve_point(&solver, x, gamma, &opts))
                .collect::<Result<Vec<_>, _>>()
        })?;
        let bad = points.iter().filter(|p| !p.in_band()).count();
        progress(
            cfg,
            &format!(
                "{} n={n}: {} points, {bad} outside band",
                cfg.family.label(),
                points.len()
            ),
        );
        outside += bad;
        rows.extend(points.into_iter().map(|p| CurveRow {
            family: cfg.family.label(),
            n,
            x: p.x,
            d_n: p.d_n,
            d_exact: p.d_exact,
            lower_band: p.lower_band,
            solver_iters: p.iterations,
            feasibility_residual: p.feasibility_residual,
            oracle_lower_bound: p.oracle_lower_bound,
        }));
    }
    write_rows(cfg, &rows)?;
    Ok(if outside == 0 { Exit::Success } else { Exit::Invariant })
}

/// Error constants and the resulting Gromov–Hausdorff bound per `n`.
pub fn cmd_bounds(cfg: &RunConfig) -> Result<Exit, CliError> {
    let rows: Vec<BoundsRow> = cfg
        .sizes()
        .map(|n| {
            let gamma = gamma_n(n, GAMMA_QUAD_POINTS);
            let gamma_prime = match cfg.family {
                Family::Toeplitz => gamma_prime_n(n),
                _ => gamma_prime_fr(n),
            };
            BoundsRow {
                family: cfg.family.label(),
                n,
                gamma_n: gamma,
                gamma_prime_n: gamma_prime,
                gh_upper_bound: gh_upper_bound(gamma, gamma_prime),
            }
        })
        .collect();
    progress(
        cfg,
        &format!("{} bounds for n={}..{}", cfg.family.label(), cfg.n_min, cfg.n_max),
    );
    write_rows(cfg, &rows)?;
    Ok(Exit::Success)
}

/// Distances between the coherent state at the north pole and coherent
/// states at polar angles `θ_j = πj/x_steps`, compared with the round
/// distance `θ_j`. Antipodal pairs are excluded by construction.
pub fn cmd_fuzzy(cfg: &RunConfig) -> Result<Exit, CliError> {
    let pool = pool(cfg)?;
    let opts = solver_options(cfg);
    let mut rows = Vec::new();
    let mut violations = 0;
    for n in cfg.sizes() {
        let rep = su2_generators(n);
        let gamma = gamma_sphere(&rep, &quadrature_for(n, 0))?;
        let ratio = quantization_error_ratio(&rep, cfg.samples, cfg.seed)?;
        let solver = DistanceSolver::new(System::Fuzzy(rep.clone()))?;
        let base = State::coherent(&rep, SpherePoint::north());
        let thetas: Vec<f64> = (0..cfg.x_steps).map(|j| PI * j as f64 / cfg.x_steps as f64).collect();
        let distances = pool.install(|| {
            thetas
                .par_iter()
                .map(|&theta| {
                    let moved = State::coherent(&rep, SpherePoint::new(theta, 0.0));
                    solver.solve(&base, &moved, &opts).map(|r| r.value)
                })
                .collect::<Result<Vec<_>, _>>()
        })?;
        let bad = thetas
            .iter()
            .zip(&distances)
            .filter(|(t, d)| **d > **t + cfg.tol)
            .count();
        progress(
            cfg,
            &format!("fuzzy n={n}: {} pairs, {bad} above round distance", thetas.len()),
        );
        violations += bad;
        rows.extend(thetas.iter().zip(distances).map(|(&theta, d_n)| FuzzyRow {
            n,
            theta,
            d_n,
            d_round: theta,
            gamma_sphere: gamma,
            quant_error_ratio: ratio,
        }));
    }
    write_rows(cfg, &rows)?;
    Ok(if violations == 0 {
        Exit::Success
    } else {
        Exit::Invariant
    })
}

/// Runs the invariant suite (or the criteria listed in `only`) and prints a
/// pass/fail table.
pub fn cmd_selftest(cfg: &RunConfig, only: &[usize], fault: Option<Fault>) -> Result<Exit, CliError> {
    if let Some(id) = only.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
        return Err(CliError::Config(format!("no criterion {id}")));
    }
    let st = SelftestConfig {
        seed: cfg.seed,
        tol: cfg.tol,
        fault,
    };
    let ids: Vec<usize> = if only.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        only.to_vec()
    };
    let mut all_passed = true;
    for id in ids {
        let o = run_criterion(id, &st);
        all_passed &= o.passed;
        println!(
            "{:>2}  {}  {:<44} {}",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
    Ok(if all_passed { Exit::Success } else { Exit::Invariant })
}
