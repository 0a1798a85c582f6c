//! Connes distance as a convex program.
//!
//! For states `φ, ψ` the distance is `sup { (φ - ψ)(x) : x = x*, ‖[D, x]‖ ≤ 1 }`.
//! Restricting to Hermitian `x` loses nothing: `‖[D, x*]‖ = ‖[D, x]‖`, so
//! `(x + x*)/2` after a phase rotation making `(φ - ψ)(x)` real is feasible
//! and attains the same value. The identity component is gauge-fixed to 0
//! because it is invisible to both the objective and the constraint.
//!
//! With real coordinates `y` and the linear map `A y = [D, x(y)]` into a real
//! image space carrying a convex ball `B` (spectral-norm ball or box), the
//! program is `max w·y s.t. A y ∈ B`. Factoring `A = Q R` turns it into
//! `max c·z s.t. z ∈ range(Q) ∩ B` with `c = Q R⁻ᵀ w`, which is solved by
//! ADMM (Douglas–Rachford splitting) between the subspace and the ball.
//! Every few iterations the current point is rescaled into the ball to get a
//! feasible lower bound, and the scaled dual variable yields a weak-duality
//! upper bound; the loop stops once the two are within `tol`.

use crate::error::{Error, Result};
use crate::linalg::{dot, eig_hermitian, norm2, CMatrix, RealQr, EIG_TOL};

use super::state::State;
use super::system::System;

/// Solver settings.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    /// Absolute gap between certified lower and upper bounds at termination.
    pub tol: f64,
    pub max_iter: usize,
    /// Random elements tried by the independent lower-bound oracle; 0 skips it.
    pub oracle_samples: usize,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-4,
            max_iter: 100_000,
            oracle_samples: 200,
            seed: 42,
        }
    }
}

/// Outcome of a distance computation.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceResult {
    /// Certified lower bound on the distance, within `tol` of it.
    pub value: f64,
    /// Coordinates of a feasible element attaining `value`.
    pub optimizer: Vec<f64>,
    /// `(‖[D, x*]‖ - 1)₊`.
    pub feasibility_residual: f64,
    pub iterations: usize,
    pub oracle_lower_bound: f64,
    /// Weak-duality upper bound on the distance.
    pub upper_bound: f64,
}

const CHECK_EVERY: usize = 10;
const BALANCE_RATIO: f64 = 10.0;

enum Ball {
    /// Hermitian matrices of the given side with spectral norm ≤ 1.
    Spectral(usize),
    /// `|z_i| ≤ radius`.
    Box(f64),
}

impl Ball {
    fn project(&self, z: &[f64]) -> Result<Vec<f64>> {
        match self {
            Ball::Spectral(side) => {
                let m = CMatrix::from_real_vec(*side, z).hermitian_part();
                let eig = eig_hermitian(&m, EIG_TOL)?;
                if eig.values.iter().all(|l| l.abs() <= 1.0) {
                    return Ok(z.to_vec());
                }
                Ok(eig.map_values(|l| l.clamp(-1.0, 1.0)).to_real_vec())
            }
            Ball::Box(r) => Ok(z.iter().map(|v| v.clamp(-r, *r)).collect()),
        }
    }

    /// Gauge of the ball: `z ∈ t·B` iff `gauge(z) ≤ t`.
    fn gauge(&self, z: &[f64]) -> Result<f64> {
        match self {
            Ball::Spectral(side) => {
                let eig = eig_hermitian(&CMatrix::from_real_vec(*side, z).hermitian_part(), EIG_TOL)?;
                Ok(eig.values.iter().fold(0.0, |a, l| a.max(l.abs())))
            }
            Ball::Box(r) => Ok(z.iter().fold(0.0f64, |a, v| a.max(v.abs())) / r),
        }
    }

    /// Support function `sup_{b ∈ B} g·b`.
    fn support(&self, g: &[f64]) -> Result<f64> {
        match self {
            Ball::Spectral(side) => {
                let eig = eig_hermitian(&CMatrix::from_real_vec(*side, g).hermitian_part(), EIG_TOL)?;
                Ok(eig.values.iter().map(|l| l.abs()).sum())
            }
            Ball::Box(r) => Ok(r * g.iter().map(|v| v.abs()).sum::<f64>()),
        }
    }
}

/// Precomputed factorization of the constraint map of a [`System`], reusable
/// across many state pairs.
pub struct DistanceSolver {
    system: System,
    qr: Option<RealQr>,
    ball: Ball,
}

impl DistanceSolver {
    pub fn new(system: System) -> Result<Self> {
        let p = system.dim();
        let ball = match system.image_side() {
            Some(side) => Ball::Spectral(side),
            None => Ball::Box(system.constraint_radius()),
        };
        let qr = if p == 0 {
            None
        } else {
            let columns: Vec<Vec<f64>> = (0..p)
                .map(|t| {
                    let mut e = vec![0.0; p];
                    e[t] = 1.0;
                    system.commutator_image(&e)
                })
                .collect();
            Some(RealQr::new(&columns)?)
        };
        Ok(DistanceSolver { system, qr, ball })
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    /// `d(φ, ψ)` to within `opts.tol`.
    pub fn solve(&self, phi: &State, psi: &State, opts: &SolverOptions) -> Result<DistanceResult> {
        let w = self.system.objective(phi, psi)?;
        let oracle_lower_bound = if opts.oracle_samples > 0 {
            super::oracle::distance_oracle(&self.system, phi, psi, opts.oracle_samples, opts.seed)?
        } else {
            0.0
        };
        let p = w.len();
        let scale = norm2(&w);
        let qr = match &self.qr {
            Some(qr) if scale > 0.0 => qr,
            _ => {
                return Ok(DistanceResult {
                    value: 0.0,
                    optimizer: vec![0.0; p],
                    feasibility_residual: 0.0,
                    iterations: 0,
                    oracle_lower_bound,
                    upper_bound: 0.0,
                })
            }
        };

        // z-space objective c = Q R⁻ᵀ w, with |c| = |R⁻ᵀ w|.
        let c_coords = qr.solve_rt(&w);
        let c_norm = norm2(&c_coords);
        let c_hat: Vec<f64> = c_coords.iter().map(|v| v / c_norm).collect();
        let c_vec = qr.expand(&c_hat);
        let dim = c_vec.len();

        let mut rho = 1.0;
        let mut wv = vec![0.0; dim];
        let mut u = vec![0.0; dim];
        let mut best_lower = 0.0;
        let mut best_coords = vec![0.0; p];
        let mut best_upper = f64::INFINITY;

        for iter in 1..=opts.max_iter {
            // z = P_range(w - u) + c/ρ
            let diff: Vec<f64> = wv.iter().zip(&u).map(|(a, b)| a - b).collect();
            let mut z = qr.expand(&qr.coords(&diff));
            z.iter_mut().zip(&c_vec).for_each(|(zi, ci)| *zi += ci / rho);
            let shifted: Vec<f64> = z.iter().zip(&u).map(|(a, b)| a + b).collect();
            let w_new = self.ball.project(&shifted)?;
            let mut r2 = 0.0;
            let mut s2 = 0.0;
            for k in 0..dim {
                let rk = z[k] - w_new[k];
                u[k] += rk;
                r2 += rk * rk;
                let sk = w_new[k] - wv[k];
                s2 += sk * sk;
            }
            wv = w_new;
            let r = r2.sqrt();
            let s = rho * s2.sqrt();

            if iter % CHECK_EVERY == 0 || iter == opts.max_iter {
                // Feasible point: the range component of w, rescaled into B.
                let y_range = qr.coords(&wv);
                let gauge = self.ball.gauge(&qr.expand(&y_range))?;
                let shrink = 1.0 / gauge.max(1.0);
                let lower = c_norm * dot(&c_hat, &y_range) * shrink;
                if lower > best_lower {
                    best_lower = lower;
                    best_coords = y_range.iter().map(|v| v * shrink).collect();
                }
                // Dual certificate G = ĉ + ρ (I - QQᵀ) u agrees with ĉ on the range.
                let ru: Vec<f64> = u.iter().map(|v| v * rho).collect();
                let proj = qr.expand(&qr.coords(&ru));
                let g: Vec<f64> = (0..dim).map(|k| c_vec[k] + ru[k] - proj[k]).collect();
                best_upper = best_upper.min(c_norm * self.ball.support(&g)?);
                if best_upper - best_lower <= opts.tol {
                    return self.finish(qr, best_lower, &best_coords, best_upper, iter, oracle_lower_bound);
                }
            }

            if r > BALANCE_RATIO * s {
                rho *= 2.0;
                u.iter_mut().for_each(|v| *v /= 2.0);
            } else if s > BALANCE_RATIO * r {
                rho /= 2.0;
                u.iter_mut().for_each(|v| *v *= 2.0);
            }
        }
        Err(Error::NoConvergence {
            what: "distance solver",
            iterations: opts.max_iter,
        })
    }

    fn finish(
        &self,
        qr: &RealQr,
        value: f64,
        range_coords: &[f64],
        upper_bound: f64,
        iterations: usize,
        oracle_lower_bound: f64,
    ) -> Result<DistanceResult> {
        // z = Q R y, so y = R⁻¹ (Qᵀ z).
        let optimizer = qr.solve_r(range_coords);
        let seminorm = self.system.seminorm(&optimizer)?;
        Ok(DistanceResult {
            value: value.max(0.0),
            optimizer,
            feasibility_residual: (seminorm - 1.0).max(0.0),
            iterations,
            oracle_lower_bound,
            upper_bound,
        })
    }
}

/// Connes distance between two states of `system`.
pub fn connes_distance(system: &System, phi: &State, psi: &State, tol: f64, max_iter: usize) -> Result<DistanceResult> {
    let opts = SolverOptions {
        tol,
        max_iter,
        ..SolverOptions::default()
    };
    DistanceSolver::new(system.clone())?.solve(phi, psi, &opts)
}
