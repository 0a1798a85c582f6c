//! The invariant suite behind `spectrunc selftest` and the acceptance tests.
//!
//! Each criterion is a self-contained check returning a [`CriterionOutcome`].
//! Checks anchored to closed forms or frozen reference values do not depend
//! on the seed; the seed only drives the random samples.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circle::{
    certified_sup, circle_lipschitz, compress, default_grid, gamma_n, gamma_prime_n, rigor_factor, sup_norm, symbol,
    toeplitz_commutator, toeplitz_matrix, FourierPoly, ToeplitzElement, GAMMA_QUAD_POINTS,
};
use crate::error::Result;
use crate::fejer_riesz::{fr_compress, fr_embed, fr_lipschitz, fr_norm, gamma_prime_fr, FRElement};
use crate::fuzzy_sphere::{
    berezin_quantize, berezin_symbol_function, berezin_transform_multiplier, gamma_sphere, heat_measure,
    quadrature_for, quantization_error_ratio, su2_generators, FuzzyOperator, SphereFunction,
};
use crate::linalg::{spectral_norm, CMatrix};
use crate::metric::{
    connes_distance, curve_point, distortion_estimate, gh_upper_bound, state_pullback_symbol,
    toeplitz_distortion_sample, DistanceSolver, SolverOptions, State, System,
};

/// Deliberate corruption used to confirm that the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Halves every `γ'_n` seen by the suite.
    CorruptGammaPrime,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelftestConfig {
    pub seed: u64,
    pub tol: f64,
    pub fault: Option<Fault>,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 42,
            tol: 1e-4,
            fault: None,
        }
    }
}

impl SelftestConfig {
    fn gamma_prime(&self, n: usize) -> f64 {
        match self.fault {
            Some(Fault::CorruptGammaPrime) => 0.5 * gamma_prime_n(n),
            None => gamma_prime_n(n),
        }
    }

    fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            tol: self.tol,
            seed: self.seed,
            ..SolverOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

/// Identifiers and short names of the criteria, in order.
pub const CRITERIA: [(usize, &str); 9] = [
    (1, "closed-form distances"),
    (2, "toeplitz distance band"),
    (3, "fejer-riesz distance band"),
    (4, "error-constant formulas"),
    (5, "contraction and approximation inequalities"),
    (6, "fuzzy sphere structure"),
    (7, "fuzzy sphere convergence"),
    (8, "solver soundness"),
    (9, "distortion bound"),
];

/// Runs every criterion in order.
pub fn run_selftest(cfg: &SelftestConfig) -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, cfg)).collect()
}

/// Runs a single criterion by its identifier (1 to 9).
pub fn run_criterion(id: usize, cfg: &SelftestConfig) -> CriterionOutcome {
    let (_, name) = *CRITERIA.iter().find(|c| c.0 == id).expect("unknown criterion");
    let start = Instant::now();
    let result = match id {
        1 => closed_form_distances(cfg),
        2 => toeplitz_band(cfg),
        3 => fejer_riesz_band(cfg),
        4 => error_constants(cfg),
        5 => inequality_suite(cfg),
        6 => fuzzy_structure(cfg),
        7 => fuzzy_convergence(cfg),
        8 => solver_soundness(cfg),
        _ => distortion_bound(cfg),
    };
    let (passed, detail) = match result {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

type Check = Result<(bool, String)>;

fn closed_form_distances(cfg: &SelftestConfig) -> Check {
    let start = Instant::now();
    let t = connes_distance(
        &System::toeplitz(2),
        &state_pullback_symbol(0.0, 2),
        &state_pullback_symbol(PI, 2),
        cfg.tol,
        SolverOptions::default().max_iter,
    )?
    .value;
    let t_secs = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let f = connes_distance(
        &System::fejer_riesz_with_grid(2, 16384),
        &State::fr_evaluation(0.0, 2),
        &State::fr_evaluation(PI, 2),
        cfg.tol,
        SolverOptions::default().max_iter,
    )?
    .value;
    let f_secs = start.elapsed().as_secs_f64();
    let passed = (t - 2.0).abs() < 1e-3 && (f - 2.0).abs() < 1e-3 && t_secs < 1.0 && f_secs < 1.0;
    Ok((
        passed,
        format!("toeplitz {t:.6} ({t_secs:.3}s), fejer-riesz {f:.6} ({f_secs:.3}s)"),
    ))
}

/// Band, evenness about π and vanishing at 0 for a distance curve.
fn band_check(system: System, x_steps: usize, cfg: &SelftestConfig) -> Result<(bool, String)> {
    let n = system.n();
    let gamma = gamma_n(n, GAMMA_QUAD_POINTS);
    let solver = DistanceSolver::new(system)?;
    let opts = cfg.solver_options();
    let mut curve = Vec::with_capacity(x_steps);
    for j in 0..x_steps {
        curve.push(curve_point(
            &solver,
            2.0 * PI * j as f64 / x_steps as f64,
            gamma,
            &opts,
        )?);
    }
    let outside = curve.iter().filter(|p| !p.in_band()).count();
    let asymmetry = (1..x_steps)
        .map(|j| (curve[j].d_n - curve[x_steps - j].d_n).abs())
        .fold(0.0, f64::max);
    let at_zero = curve[0].d_n;
    let passed = outside == 0 && asymmetry <= 2.0 * cfg.tol && at_zero <= cfg.tol;
    Ok((
        passed,
        format!("n={n}: {outside} outside band, asymmetry {asymmetry:.2e}, d(0) {at_zero:.1e}"),
    ))
}

fn join(parts: Vec<(bool, String)>) -> (bool, String) {
    let passed = parts.iter().all(|p| p.0);
    let detail = parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join("; ");
    (passed, detail)
}

fn toeplitz_band(cfg: &SelftestConfig) -> Check {
    let parts = [3, 5, 9]
        .into_iter()
        .map(|n| band_check(System::toeplitz(n), 64, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(join(parts))
}

fn fejer_riesz_band(cfg: &SelftestConfig) -> Check {
    let mut parts = Vec::new();
    for n in [2, 3] {
        let factor = rigor_factor(n - 1, default_grid(n - 1));
        let (ok, detail) = band_check(System::fejer_riesz(n), 64, cfg)?;
        parts.push((ok && factor <= 1.01, format!("{detail}, grid factor {factor:.5}")));
    }
    Ok(join(parts))
}

fn error_constants(cfg: &SelftestConfig) -> Check {
    let mut worst: f64 = 0.0;
    for n in 1..=64usize {
        let nf = n as f64;
        let toeplitz = (2.0 * PI + 2.0 + 2.0 * nf.ln()) / (PI * nf);
        let fr = ((2 * n - 1) as f64 / (n * n) as f64).sqrt();
        worst = worst
            .max((cfg.gamma_prime(n) - toeplitz).abs())
            .max((gamma_prime_fr(n) - fr).abs());
    }
    let gamma_2 = gamma_n(2, GAMMA_QUAD_POINTS);
    let err_2 = (gamma_2 - (PI / 2.0 - 2.0 / PI)).abs();
    let passed = worst <= 1e-12 && err_2 <= 1e-8;
    Ok((passed, format!("max formula error {worst:.1e}, γ_2 error {err_2:.1e}")))
}

/// Smallest slack and violation count over a batch of inequalities.
#[derive(Default)]
struct Slack {
    min: f64,
    violations: usize,
    checks: usize,
}

impl Slack {
    fn new() -> Self {
        Slack {
            min: f64::INFINITY,
            ..Slack::default()
        }
    }

    /// Records `lhs ≤ rhs`.
    fn le(&mut self, lhs: f64, rhs: f64) {
        let s = rhs - lhs;
        self.min = self.min.min(s);
        self.checks += 1;
        if s < -1e-8 {
            self.violations += 1;
        }
    }
}

fn inequality_suite(cfg: &SelftestConfig) -> Check {
    const SAMPLES: usize = 200;
    const GRID: usize = 4096;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut slack = Slack::new();
    for n in 2..=16usize {
        let gamma = gamma_n(n, GAMMA_QUAD_POINTS);
        let gamma_prime = cfg.gamma_prime(n);
        let gamma_prime_poly = gamma_prime_fr(n);
        for s in 0..SAMPLES {
            let f = FourierPoly::random_real(&mut rng, 1 + s % (2 * n));
            let sup_f = sup_norm(&f, GRID).certified();
            let lip_f = circle_lipschitz(&f, GRID).certified();

            // Toeplitz side
            let t = compress(&f, n);
            slack.le(spectral_norm(&toeplitz_matrix(&t))?, sup_f);
            slack.le(spectral_norm(&toeplitz_commutator(&t))?, lip_f);
            slack.le(sup_norm(&f.sub(&symbol(&t)), GRID).grid_max, gamma * lip_f);
            let a = ToeplitzElement::random_hermitian(&mut rng, n);
            let norm_a = spectral_norm(&toeplitz_matrix(&a))?;
            let lip_a = spectral_norm(&toeplitz_commutator(&a))?;
            let sym = symbol(&a);
            slack.le(sup_norm(&sym, GRID).grid_max, norm_a);
            slack.le(circle_lipschitz(&sym, GRID).grid_max, lip_a);
            let back = compress(&sym, n);
            slack.le(spectral_norm(&toeplitz_matrix(&a.sub(&back)))?, gamma_prime * lip_a);

            // Fejér–Riesz side
            let k = fr_compress(&f, n);
            slack.le(fr_norm(&k, GRID).grid_max, sup_f);
            slack.le(fr_lipschitz(&k, GRID).grid_max, lip_f);
            slack.le(sup_norm(&f.sub(&fr_embed(&k)), GRID).grid_max, gamma * lip_f);
            let b = FRElement::random_hermitian(&mut rng, n);
            let embedded = fr_embed(&b);
            slack.le(certified_sup(&embedded, GRID).grid_max, fr_norm(&b, GRID).certified());
            slack.le(
                circle_lipschitz(&embedded, GRID).grid_max,
                fr_lipschitz(&b, GRID).certified(),
            );
            let round_trip = fr_compress(&embedded, n);
            slack.le(
                fr_norm(&b.sub(&round_trip), GRID).grid_max,
                gamma_prime_poly * fr_lipschitz(&b, GRID).certified(),
            );
        }
    }
    Ok((
        slack.violations == 0,
        format!(
            "{} checks, {} violations, min slack {:.2e}",
            slack.checks, slack.violations, slack.min
        ),
    ))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn fuzzy_structure(cfg: &SelftestConfig) -> Check {
    // su(2) relations [L_jk, L_am] = δ_ka L_jm - δ_km L_ja - δ_ja L_km + δ_jm L_ka
    let mut algebra: f64 = 0.0;
    for n in 1..=12 {
        let rep = su2_generators(n);
        let gens = rep.generators();
        let l = |a: usize, b: usize| -> CMatrix {
            match (a, b) {
                (1, 2) => gens[0].clone(),
                (1, 3) => gens[1].clone(),
                (2, 3) => gens[2].clone(),
                (2, 1) => gens[0].scale_real(-1.0),
                (3, 1) => gens[1].scale_real(-1.0),
                (3, 2) => gens[2].scale_real(-1.0),
                _ => CMatrix::zeros(n, n),
            }
        };
        let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        for j in 1..=3 {
            for k in 1..=3 {
                for a in 1..=3 {
                    for m in 1..=3 {
                        let lhs = CMatrix::commutator(&l(j, k), &l(a, m));
                        let rhs = &(&(&l(j, m).scale_real(delta(k, a)) - &l(j, a).scale_real(delta(k, m)))
                            - &l(k, m).scale_real(delta(j, a)))
                            + &l(k, a).scale_real(delta(j, m));
                        algebra = algebra.max((&lhs - &rhs).max_abs());
                    }
                }
            }
        }
        let casimir = CMatrix::identity(n).scale_real(-((n * n - 1) as f64) / 4.0);
        algebra = algebra.max((&rep.casimir() - &casimir).max_abs());
    }

    let mut unit: f64 = 0.0;
    for n in 1..=12 {
        let rep = su2_generators(n);
        let one = berezin_quantize(&SphereFunction::constant(1.0), &rep, &quadrature_for(n, 0))?;
        unit = unit.max((one.matrix() - &CMatrix::identity(n)).max_abs());
        let mass = quadrature_for(n, 0).integrate(|p| heat_measure(&rep, p));
        unit = unit.max((mass - 1.0).abs());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut duality: f64 = 0.0;
    for trial in 0..100 {
        let n = 2 + trial % 7;
        let rep = su2_generators(n);
        let f = SphereFunction::random_real(&mut rng, 1 + trial % 4);
        let a = CMatrix::random_hermitian(&mut rng, n);
        let b = CMatrix::random_hermitian(&mut rng, n);
        let t = FuzzyOperator::new(&a + &b.scale(Complex64::new(0.0, 1.0)));
        let lhs = f.inner(&berezin_symbol_function(&rep, &t));
        let q = berezin_quantize(&f, &rep, &quadrature_for(n, f.degree()))?;
        let rhs = (&q.matrix().adjoint() * t.matrix()).trace() / n as f64;
        duality = duality.max((lhs - rhs).norm());
    }

    // σ(σ̆(Y_lm)) = (n-1)! n! / ((n-1-l)! (n+l)!) · Y_lm, zero once l ≥ n
    let mut multiplier: f64 = 0.0;
    for n in 1..=6 {
        let rep = su2_generators(n);
        for l in 0..=4usize {
            let closed = if l >= n {
                0.0
            } else {
                factorial(n - 1) * factorial(n) / (factorial(n - 1 - l) * factorial(n + l))
            };
            multiplier = multiplier.max((berezin_transform_multiplier(n, l) - closed).abs());
            for m in -(l as i64)..=l as i64 {
                let f = SphereFunction::harmonic(l, m);
                let q = berezin_quantize(&f, &rep, &quadrature_for(n, l))?;
                let diff = berezin_symbol_function(&rep, &q).sub(&f.map_coeffs(|_, _, c| c * closed));
                multiplier = diff.coeffs().iter().fold(multiplier, |acc, z| acc.max(z.norm()));
            }
        }
    }
    let passed = algebra <= 1e-10 && unit <= 1e-8 && duality <= 1e-8 && multiplier <= 1e-6;
    Ok((
        passed,
        format!("algebra {algebra:.1e}, unit and mass {unit:.1e}, duality {duality:.1e}, multipliers {multiplier:.1e}"),
    ))
}

fn fuzzy_convergence(cfg: &SelftestConfig) -> Check {
    let gammas = (1..=16)
        .map(|n| gamma_sphere(&su2_generators(n), &quadrature_for(n, 0)))
        .collect::<Result<Vec<_>>>()?;
    let decreasing = gammas.windows(2).all(|w| w[1] < w[0]);
    let quarter = gammas[15] < gammas[0] / 4.0;
    let r2 = quantization_error_ratio(&su2_generators(2), 100, cfg.seed)?;
    let r10 = quantization_error_ratio(&su2_generators(10), 100, cfg.seed)?;
    let passed = decreasing && quarter && r10 < r2;
    Ok((
        passed,
        format!(
            "strictly decreasing {decreasing}, γ(16) = {:.5} vs γ(1)/4 = {:.5}, ratio n=2 {r2:.4} n=10 {r10:.4}",
            gammas[15],
            gammas[0] / 4.0
        ),
    ))
}

fn solver_soundness(cfg: &SelftestConfig) -> Check {
    let opts = cfg.solver_options();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut parts = Vec::new();
    for system in [System::toeplitz(4), System::fejer_riesz(3), System::fuzzy(3)] {
        let kind = system.kind();
        let n = system.n();
        let solver = DistanceSolver::new(system)?;
        let (mut below_oracle, mut residual, mut symmetry, mut triangle): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
        for _ in 0..50 {
            let a = State::random(&mut rng, kind, n);
            let b = State::random(&mut rng, kind, n);
            let c = State::random(&mut rng, kind, n);
            let ab = solver.solve(&a, &b, &opts)?;
            let ba = solver.solve(&b, &a, &opts)?;
            let bc = solver.solve(&b, &c, &opts)?;
            let ac = solver.solve(&a, &c, &opts)?;
            below_oracle = below_oracle.max(ab.oracle_lower_bound - ab.value);
            residual = residual.max(ab.feasibility_residual).max(ba.feasibility_residual);
            symmetry = symmetry.max((ab.value - ba.value).abs());
            triangle = triangle.max(ac.value - ab.value - bc.value);
        }
        let ok = below_oracle <= 1e-4 && residual <= 1e-4 && symmetry <= 2e-4 && triangle <= 3e-4;
        parts.push((
            ok,
            format!(
                "{kind:?} n={n}: oracle excess {below_oracle:.1e}, residual {residual:.1e}, symmetry {symmetry:.1e}, triangle {triangle:.1e}"
            ),
        ));
    }
    Ok(join(parts))
}

fn distortion_bound(cfg: &SelftestConfig) -> Check {
    let n = 5;
    let points: Vec<f64> = (0..6).map(|k| 2.0 * PI * k as f64 / 6.0).collect();
    let pairs = toeplitz_distortion_sample(n, &points, 4, cfg.seed, &cfg.solver_options())?;
    let estimate = distortion_estimate(&pairs);
    let bound = 2.0 * gh_upper_bound(gamma_n(n, GAMMA_QUAD_POINTS), cfg.gamma_prime(n));
    Ok((
        estimate <= bound + 1e-3,
        format!("{} pairs, distortion {estimate:.5} vs bound {bound:.5}", pairs.len()),
    ))
}
