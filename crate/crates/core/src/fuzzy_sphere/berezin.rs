use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, CMatrix};
use crate::quadrature::gauss_legendre;

use super::harmonics::SphereFunction;
use super::rep::{fuzzy_lipschitz, FuzzyOperator, Su2Rep};
use super::sphere::{SpherePoint, SphereQuadrature};

/// Minimum number of θ nodes for [`gamma_sphere`].
const GAMMA_SPHERE_MIN_NODES: usize = 128;

/// Berezin symbol `σ_T(p) = tr(T α_g(P)) = ⟨v_p, T v_p⟩`.
pub fn berezin_symbol(rep: &Su2Rep, t: &FuzzyOperator, p: SpherePoint) -> Complex64 {
    let v = rep.coherent_vector(p);
    let tv = t.matrix().mul_vec(&v);
    v.iter().zip(&tv).map(|(a, b)| a.conj() * b).sum()
}

/// `σ_T` as a spherical-harmonic expansion of degree `n - 1`.
pub fn berezin_symbol_function(rep: &Su2Rep, t: &FuzzyOperator) -> SphereFunction {
    let degree = rep.n() - 1;
    let quad = SphereQuadrature::for_degree(2 * degree);
    SphereFunction::project(degree, &quad, |p| berezin_symbol(rep, t, p)).expect("rule is built for this degree")
}

/// Coherent vectors at the nodes of a sphere quadrature, reused across
/// quantizations.
#[derive(Clone, Debug)]
pub struct CoherentFrame {
    n: usize,
    quad: SphereQuadrature,
    vectors: Vec<Vec<Complex64>>,
}

impl CoherentFrame {
    pub fn new(rep: &Su2Rep, quad: SphereQuadrature) -> Self {
        let vectors = quad.points().iter().map(|p| rep.coherent_vector(*p)).collect();
        CoherentFrame {
            n: rep.n(),
            quad,
            vectors,
        }
    }

    pub fn quadrature(&self) -> &SphereQuadrature {
        &self.quad
    }

    /// `n Σ_i w_i g_i |v_i⟩⟨v_i|` for node values `g_i`.
    pub fn quantize_values(&self, values: &[Complex64]) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n, n);
        for ((v, w), g) in self.vectors.iter().zip(self.quad.weights()).zip(values) {
            let s = g * (w * n as f64);
            for r in 0..n {
                let vr = v[r] * s;
                for c in 0..n {
                    out[(r, c)] += vr * v[c].conj();
                }
            }
        }
        out
    }

    /// `σ_T` at every node.
    pub fn symbol_values(&self, t: &CMatrix) -> Vec<Complex64> {
        self.vectors
            .iter()
            .map(|v| {
                let tv = t.mul_vec(v);
                v.iter().zip(&tv).map(|(a, b)| a.conj() * b).sum()
            })
            .collect()
    }
}

/// Berezin quantization `σ̆_f = n ∫ f(g) α_g(P) dg`.
///
/// Requires a rule exact to degree `2L + 2n` for `f` of degree `L`.
pub fn berezin_quantize(f: &SphereFunction, rep: &Su2Rep, quad: &SphereQuadrature) -> Result<FuzzyOperator> {
    let required = 2 * f.degree() + 2 * rep.n();
    if quad.exact_degree() < required {
        return Err(Error::QuadratureTooCoarse {
            required,
            available: quad.exact_degree(),
        });
    }
    let frame = CoherentFrame::new(rep, quad.clone());
    let values: Vec<Complex64> = quad.points().iter().map(|p| f.eval(*p)).collect();
    Ok(FuzzyOperator::new(frame.quantize_values(&values)))
}

/// `H_P(p) = n tr(P α_g(P)) = n cos^{2(n-1)}(θ/2)`.
pub fn heat_measure(rep: &Su2Rep, p: SpherePoint) -> f64 {
    rep.n() as f64 * rep.coherent_vector(p)[0].norm_sqr()
}

/// `∫ θ H_P` over the normalized sphere measure, the mean round distance from
/// the north pole under the heat measure.
///
/// Integrates `(n/2) ∫_0^π θ cos^{2(n-1)}(θ/2) sin θ dθ` by Gauss–Legendre in
/// `θ` (the integrand is not polynomial in `cos θ`), using at least
/// `max(n_θ, 128)` nodes. The rule must satisfy the precondition of
/// [`berezin_quantize`] for a constant function.
pub fn gamma_sphere(rep: &Su2Rep, quad: &SphereQuadrature) -> Result<f64> {
    let required = 2 * rep.n();
    if quad.exact_degree() < required {
        return Err(Error::QuadratureTooCoarse {
            required,
            available: quad.exact_degree(),
        });
    }
    let nodes = quad.n_theta().max(GAMMA_SPHERE_MIN_NODES);
    let (x, w) = gauss_legendre(nodes);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let n = rep.n() as f64;
    let sum: f64 = x
        .iter()
        .zip(&w)
        .map(|(xi, wi)| {
            let theta = half_pi * (xi + 1.0);
            wi * theta * (theta / 2.0).cos().powi(2 * (rep.n() as i32 - 1)) * theta.sin()
        })
        .sum();
    Ok(n / 2.0 * half_pi * sum)
}

/// Multiplier of the Berezin transform `σ ∘ σ̆` on spherical harmonics of
/// degree `l`, i.e. the Funk–Hecke coefficient `∫ H_P P_l(cos θ)` of the heat
/// measure.
pub fn berezin_transform_multiplier(n: usize, l: usize) -> f64 {
    // H_P = n ((1 + x)/2)^{n-1} has degree n - 1 in x = cos θ.
    let (x, w) = gauss_legendre((n + l) / 2 + 1);
    let nf = n as f64;
    x.iter()
        .zip(&w)
        .map(|(xi, wi)| {
            let (pl, _) = crate::quadrature::legendre_with_derivative(l, *xi);
            wi * nf * ((1.0 + xi) / 2.0).powi(n as i32 - 1) * pl
        })
        .sum::<f64>()
        / 2.0
}

/// `σ(σ̆_f) = f * H_P`, applied coefficientwise.
pub fn berezin_transform(f: &SphereFunction, n: usize) -> SphereFunction {
    let lambdas: Vec<f64> = (0..=f.degree()).map(|l| berezin_transform_multiplier(n, l)).collect();
    f.map_coeffs(|l, _, c| c * lambdas[l])
}

/// `max ‖T - σ̆(σ_T)‖ / ‖[D_n, T]‖` over `samples` traceless GUE matrices.
///
/// Returns 0 for `n = 1`, where every operator is a scalar.
pub fn quantization_error_ratio(rep: &Su2Rep, samples: usize, seed: u64) -> Result<f64> {
    let n = rep.n();
    if n == 1 {
        return Ok(0.0);
    }
    let frame = CoherentFrame::new(rep, SphereQuadrature::for_degree(2 * (n - 1) + 2 * n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let t = FuzzyOperator::random_traceless(&mut rng, n);
        let back = frame.quantize_values(&frame.symbol_values(t.matrix()));
        let err = spectral_norm(&(t.matrix() - &back))?;
        let lip = fuzzy_lipschitz(rep, &t)?;
        if lip > 0.0 {
            worst = worst.max(err / lip);
        }
    }
    Ok(worst)
}
