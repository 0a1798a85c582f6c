//! Spectral truncation of the circle to the Toeplitz operator system.
//!
//! Functions on the circle are trigonometric polynomials ([`FourierPoly`]).
//! The compression `f ↦ P f P` onto the span of `e_1, …, e_n` is
//! [`compress`]; its Hilbert–Schmidt adjoint [`symbol`] maps a Toeplitz
//! element back to the Fejér-smoothed function. The constants `γ_n` and
//! `γ'_n` measure how far these maps are from being mutually inverse.
//!
//! Sup-norms of trigonometric polynomials are evaluated on a uniform grid and
//! multiplied by a Bernstein rigor factor, so [`GridSup::certified`] is a
//! guaranteed upper bound while [`GridSup::grid_max`] is a lower bound.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::CMatrix;
use crate::quadrature::simpson;

/// Default quadrature resolution for [`gamma_n`].
pub const GAMMA_QUAD_POINTS: usize = 8192;

/// Trigonometric polynomial `f(x) = Σ_{|k| ≤ K} b_k e^{ikx}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierPoly {
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl FourierPoly {
    /// `coeffs[k + degree]` is `b_k`.
    pub fn new(degree: usize, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), 2 * degree + 1, "need 2K+1 coefficients");
        FourierPoly { degree, coeffs }
    }

    pub fn from_fn(degree: usize, mut f: impl FnMut(i64) -> Complex64) -> Self {
        let k = degree as i64;
        FourierPoly {
            degree,
            coeffs: (-k..=k).map(&mut f).collect(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(c: f64) -> Self {
        FourierPoly {
            degree: 0,
            coeffs: vec![Complex64::new(c, 0.0)],
        }
    }

    /// `c e^{ikx}`.
    pub fn monomial(k: i64, c: Complex64) -> Self {
        Self::from_fn(k.unsigned_abs() as usize, |j| {
            if j == k {
                c
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Random real polynomial with standard normal coefficients damped by
    /// `1/(1+|k|)`.
    pub fn random_real<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * degree + 1];
        coeffs[degree] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for k in 1..=degree {
            let damp = 1.0 / (1.0 + k as f64);
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let b = Complex64::new(re, im) * damp;
            coeffs[degree + k] = b;
            coeffs[degree - k] = b.conj();
        }
        FourierPoly { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Largest `|k|` with a nonzero coefficient.
    pub fn effective_degree(&self) -> usize {
        (0..=self.degree)
            .rev()
            .find(|&k| {
                self.coeffs[self.degree + k] != Complex64::new(0.0, 0.0)
                    || self.coeffs[self.degree - k] != Complex64::new(0.0, 0.0)
            })
            .unwrap_or(0)
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.degree {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + self.degree as i64) as usize]
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let k = self.degree as i64;
        (-k..=k)
            .map(|j| self.coeff(j) * Complex64::from_polar(1.0, j as f64 * x))
            .sum()
    }

    /// Values at the `m` points `2πj/m`.
    pub fn eval_grid(&self, m: usize) -> Vec<Complex64> {
        let k = self.degree;
        (0..m)
            .map(|j| {
                let x = 2.0 * PI * j as f64 / m as f64;
                let z = Complex64::from_polar(1.0, x);
                let mut acc = self.coeffs[2 * k];
                for c in self.coeffs[..2 * k].iter().rev() {
                    acc = acc * z + c;
                }
                acc * Complex64::from_polar(1.0, -(k as f64) * x)
            })
            .collect()
    }

    /// `f'`, with coefficients `ik b_k`.
    pub fn derivative(&self) -> Self {
        self.map_coeffs(|k, b| b * Complex64::new(0.0, k as f64))
    }

    /// Coefficientwise map `b_k ↦ g(k, b_k)`.
    pub fn map_coeffs(&self, mut g: impl FnMut(i64, Complex64) -> Complex64) -> Self {
        Self::from_fn(self.degree, |k| g(k, self.coeff(k)))
    }

    pub fn sub(&self, other: &FourierPoly) -> Self {
        let d = self.degree.max(other.degree);
        Self::from_fn(d, |k| self.coeff(k) - other.coeff(k))
    }

    pub fn is_real(&self, tol: f64) -> bool {
        let k = self.degree as i64;
        (0..=k).all(|j| (self.coeff(-j) - self.coeff(j).conj()).norm() <= tol)
    }
}

/// Grid estimate of a sup-norm together with its Bernstein rigor factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSup {
    /// Maximum of `|p|` over the grid; never exceeds the true sup-norm.
    pub grid_max: f64,
    /// `(1 - πK/m)⁻¹`.
    pub rigor_factor: f64,
}

impl GridSup {
    /// Certified upper bound `grid_max · rigor_factor` on the true sup-norm.
    pub fn certified(&self) -> f64 {
        self.grid_max * self.rigor_factor
    }
}

/// Default grid size `max(4096, 64 K)` for a polynomial of degree `K`.
pub fn default_grid(degree: usize) -> usize {
    4096.max(64 * degree)
}

/// Bernstein rigor factor `(1 - πK/m)⁻¹` for a degree-`K` polynomial on `m` points.
pub fn rigor_factor(degree: usize, m: usize) -> f64 {
    1.0 / (1.0 - PI * degree as f64 / m as f64)
}

/// Certified sup-norm of `p` on an `m`-point uniform grid.
///
/// Panics unless `m ≥ 8 (K + 1)`.
pub fn certified_sup(p: &FourierPoly, m: usize) -> GridSup {
    let k = p.effective_degree();
    assert!(m >= 8 * (k + 1), "grid of {m} points is too coarse for degree {k}");
    let grid_max = p.eval_grid(m).iter().map(|z| z.norm()).fold(0.0, f64::max);
    GridSup {
        grid_max,
        rigor_factor: rigor_factor(k, m),
    }
}

/// Sup-norm `‖f‖∞`.
pub fn sup_norm(f: &FourierPoly, grid_size: usize) -> GridSup {
    certified_sup(f, grid_size)
}

/// Fejér kernel `F_n(x) = (1/n) sin²(nx/2) / sin²(x/2)`.
pub fn fejer_kernel(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    let s = (x / 2.0).sin();
    if s.abs() < 1e-6 {
        return (1 - n as i64..n as i64)
            .map(|k| (1.0 - k.abs() as f64 / nf) * (k as f64 * x).cos())
            .sum();
    }
    let num = (nf * x / 2.0).sin();
    num * num / (nf * s * s)
}

/// Element of the Toeplitz operator system `C(S¹)^(n)`: an `n × n` matrix
/// `T_kl = a_{k-l}` stored by its diagonals `a_k`, `|k| < n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzElement {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl ToeplitzElement {
    /// `coeffs[k + n - 1]` is `a_k`.
    pub fn new(n: usize, coeffs: Vec<Complex64>) -> Self {
        assert!(n >= 1);
        assert_eq!(coeffs.len(), 2 * n - 1, "need 2n-1 diagonals");
        ToeplitzElement { n, coeffs }
    }

    pub fn from_fn(n: usize, f: impl FnMut(i64) -> Complex64) -> Self {
        let m = n as i64;
        ToeplitzElement {
            n,
            coeffs: (1 - m..m).map(f).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |k| {
            if k == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Random Hermitian element with standard normal diagonals.
    pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut t = Self::from_fn(n, |_| Complex64::new(0.0, 0.0));
        t.coeffs[n - 1] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for k in 1..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            t.coeffs[n - 1 + k] = Complex64::new(re, im);
            t.coeffs[n - 1 - k] = Complex64::new(re, -im);
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize >= self.n {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + self.n as i64 - 1) as usize]
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.n as i64;
        (0..n).all(|k| (self.coeff(-k) - self.coeff(k).conj()).norm() <= tol)
    }

    pub fn sub(&self, other: &ToeplitzElement) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |k| self.coeff(k) - other.coeff(k))
    }
}

/// The compression `R_n(f) = P_n f P_n`.
pub fn compress(f: &FourierPoly, n: usize) -> ToeplitzElement {
    ToeplitzElement::from_fn(n, |k| f.coeff(k))
}

/// The symbol map `S_n(T)(x) = Σ_{|k|<n} (1 - |k|/n) a_k e^{ikx}`.
pub fn symbol(t: &ToeplitzElement) -> FourierPoly {
    let n = t.n as f64;
    FourierPoly::from_fn(t.n - 1, |k| t.coeff(k) * (1.0 - k.abs() as f64 / n))
}

/// Matrix realization `M_kl = a_{k-l}`.
pub fn toeplitz_matrix(t: &ToeplitzElement) -> CMatrix {
    CMatrix::from_fn(t.n, t.n, |k, l| t.coeff(k as i64 - l as i64))
}

/// `[P_n D P_n, T]`, the Toeplitz matrix with entries `(k - l) a_{k-l}`.
pub fn toeplitz_commutator(t: &ToeplitzElement) -> CMatrix {
    CMatrix::from_fn(t.n, t.n, |k, l| {
        let d = k as i64 - l as i64;
        t.coeff(d) * d as f64
    })
}

/// Lipschitz seminorm `‖[D, f]‖ = sup |f'|`.
pub fn circle_lipschitz(f: &FourierPoly, grid_size: usize) -> GridSup {
    certified_sup(&f.derivative(), grid_size)
}

/// `γ_n = (1/2π) ∫_{-π}^{π} F_n(y) |y| dy` by composite Simpson on `[0, π]`.
///
/// Panics unless `quad_points ≥ 64 n`.
pub fn gamma_n(n: usize, quad_points: usize) -> f64 {
    assert!(quad_points >= 64 * n, "need at least 64n quadrature points");
    simpson(|y| fejer_kernel(n, y) * y, 0.0, PI, quad_points) / PI
}

/// `γ'_n = (2/n)(1 + (1 + log n)/π)`.
pub fn gamma_prime_n(n: usize) -> f64 {
    let nf = n as f64;
    2.0 / nf * (1.0 + (1.0 + nf.ln()) / PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, spectral_norm, EIG_TOL};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fejer_kernel_values() {
        for n in 1..12 {
            assert!((fejer_kernel(n, 0.0) - n as f64).abs() < 1e-12);
            assert!((fejer_kernel(n, 2.0 * PI) - n as f64).abs() < 1e-9);
            let mass = simpson(|x| fejer_kernel(n, x), -PI, PI, 4000) / (2.0 * PI);
            assert!((mass - 1.0).abs() < 1e-10, "n={n}: {mass}");
        }
        // F_2(y) = 1 + cos y
        assert!((fejer_kernel(2, PI / 2.0) - 1.0).abs() < 1e-14);
        assert!((fejer_kernel(2, 0.7) - (1.0 + 0.7f64.cos())).abs() < 1e-14);
        // both branches agree across the switch
        let a = fejer_kernel(7, 2.0e-6 - 1e-9);
        let b = fejer_kernel(7, 2.0e-6 + 1e-9);
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn compress_examples() {
        assert_eq!(compress(&FourierPoly::constant(1.0), 4), ToeplitzElement::identity(4));
        let t = compress(&FourierPoly::monomial(1, c(1.0, 0.0)), 3);
        for k in -2..=2 {
            assert_eq!(t.coeff(k), if k == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        }
        // 2 + cos 5x
        let f = FourierPoly::from_fn(5, |k| match k.abs() {
            0 => c(2.0, 0.0),
            5 => c(0.5, 0.0),
            _ => c(0.0, 0.0),
        });
        let t = compress(&f, 3);
        assert_eq!(
            t,
            ToeplitzElement::from_fn(3, |k| if k == 0 { c(2.0, 0.0) } else { c(0.0, 0.0) })
        );
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(
            symbol(&ToeplitzElement::identity(5)),
            FourierPoly::from_fn(4, |k| if k == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) })
        );
        let t = ToeplitzElement::from_fn(2, |k| if k == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let s = symbol(&t);
        assert_eq!(s.coeff(1), c(0.5, 0.0));
        assert_eq!(s.coeff(0), c(0.0, 0.0));
        assert_eq!(s.coeff(-1), c(0.0, 0.0));
    }

    #[test]
    fn matrix_layout() {
        assert_eq!(toeplitz_matrix(&ToeplitzElement::identity(3)), CMatrix::identity(3));
        let t = ToeplitzElement::from_fn(2, |k| if k == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let m = toeplitz_matrix(&t);
        assert_eq!(
            m,
            CMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = ToeplitzElement::random_hermitian(&mut rng, 5);
        assert!(toeplitz_matrix(&h).is_hermitian(0.0));
    }

    #[test]
    fn commutator_examples() {
        let z = toeplitz_commutator(&ToeplitzElement::identity(4));
        assert_eq!(z.max_abs(), 0.0);
        let cc = c(0.3, -1.2);
        let t = ToeplitzElement::from_fn(2, |k| if k == 1 { cc } else { c(0.0, 0.0) });
        let m = toeplitz_commutator(&t);
        assert_eq!(
            m,
            CMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(0.0, 0.0), cc, c(0.0, 0.0)])
        );
        assert!((spectral_norm(&m).unwrap() - cc.norm()).abs() < 1e-14);
    }

    #[test]
    fn commutator_is_d_t_minus_t_d() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let t = ToeplitzElement::random_hermitian(&mut rng, 6);
        let d = CMatrix::from_real_diag(&(1..=6).map(|k| k as f64).collect::<Vec<_>>());
        let direct = CMatrix::commutator(&d, &toeplitz_matrix(&t));
        assert!((&direct - &toeplitz_commutator(&t)).max_abs() < 1e-14);
    }

    #[test]
    fn lipschitz_examples() {
        let g = 4096;
        assert_eq!(circle_lipschitz(&FourierPoly::constant(3.0), g).certified(), 0.0);
        let e = circle_lipschitz(&FourierPoly::monomial(1, c(1.0, 0.0)), g);
        assert!((e.grid_max - 1.0).abs() < 1e-14);
        // sin 3x = (e^{3ix} - e^{-3ix}) / 2i, derivative 3 cos 3x
        let sin3 = FourierPoly::from_fn(3, |k| match k {
            3 => c(0.0, -0.5),
            -3 => c(0.0, 0.5),
            _ => c(0.0, 0.0),
        });
        let l = circle_lipschitz(&sin3, g);
        assert!((l.grid_max - 3.0).abs() < 1e-12);
        assert!(l.certified() >= 3.0);
        assert!((l.rigor_factor - 1.0 / (1.0 - 3.0 * PI / 4096.0)).abs() < 1e-15);
    }

    /// γ_n = π/2 + (2/π) Σ_{k=1}^{n-1} (1 - k/n)((-1)^k - 1)/k², from
    /// ∫_0^π y cos(ky) dy = ((-1)^k - 1)/k².
    fn gamma_closed_form(n: usize) -> f64 {
        let nf = n as f64;
        PI / 2.0
            + 2.0 / PI
                * (1..n)
                    .map(|k| {
                        let kf = k as f64;
                        (1.0 - kf / nf) * ((-1.0f64).powi(k as i32) - 1.0) / (kf * kf)
                    })
                    .sum::<f64>()
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_n(1, GAMMA_QUAD_POINTS) - PI / 2.0).abs() < 1e-12);
        assert!((gamma_n(2, GAMMA_QUAD_POINTS) - (PI / 2.0 - 2.0 / PI)).abs() < 1e-10);
        assert!((gamma_n(2, GAMMA_QUAD_POINTS) - 0.93417).abs() < 1e-5);
        let mut prev = f64::INFINITY;
        for n in 2..=64 {
            let g = gamma_n(n, GAMMA_QUAD_POINTS.max(64 * n));
            assert!((g - gamma_closed_form(n)).abs() < 1e-9, "n={n}");
            assert!(g > 0.0 && g < prev, "n={n}");
            prev = g;
        }
    }

    #[test]
    fn gamma_prime_values() {
        assert!((gamma_prime_n(1) - 2.0 * (1.0 + 1.0 / PI)).abs() < 1e-15);
        assert!((gamma_prime_n(1) - 2.63662).abs() < 1e-5);
        // (2/3)(1 + (1 + ln 3)/π) = 1.1120060...
        assert!((gamma_prime_n(3) - 1.112006).abs() < 1e-6);
        assert!(gamma_prime_n(10_000) < 0.002);
    }

    fn real_poly(coeffs: &[f64], degree: usize) -> FourierPoly {
        let mut it = coeffs.iter().cycle();
        let mut f = FourierPoly::from_fn(degree, |_| c(0.0, 0.0));
        let b0 = *it.next().unwrap();
        f.coeffs[degree] = c(b0, 0.0);
        for k in 1..=degree {
            let b = c(*it.next().unwrap(), *it.next().unwrap()) / (1.0 + k as f64);
            f.coeffs[degree + k] = b;
            f.coeffs[degree - k] = b.conj();
        }
        f
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn channel_identity(coeffs in prop::collection::vec(-2.0..2.0f64, 30), n in 2usize..10) {
            let f = real_poly(&coeffs, n - 1);
            let s = symbol(&compress(&f, n));
            for k in -(n as i64 - 1)..n as i64 {
                let expected = f.coeff(k) * (1.0 - k.abs() as f64 / n as f64);
                prop_assert_eq!(s.coeff(k), expected);
            }
        }

        #[test]
        fn compression_contracts_both_norms(coeffs in prop::collection::vec(-2.0..2.0f64, 40), n in 2usize..10, deg in 1usize..14) {
            let f = real_poly(&coeffs, deg);
            let t = compress(&f, n);
            prop_assert!(t.is_hermitian(0.0));
            let norm_t = spectral_norm(&toeplitz_matrix(&t)).unwrap();
            prop_assert!(norm_t <= sup_norm(&f, 4096).certified() + 1e-8);
            let lip_t = spectral_norm(&toeplitz_commutator(&t)).unwrap();
            prop_assert!(lip_t <= circle_lipschitz(&f, 4096).certified() + 1e-8);
        }

        #[test]
        fn symbol_contracts_both_norms(seed in 0u64..1000, n in 2usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = ToeplitzElement::random_hermitian(&mut rng, n);
            let s = symbol(&t);
            prop_assert!(s.is_real(1e-15));
            prop_assert!(sup_norm(&s, 4096).grid_max <= spectral_norm(&toeplitz_matrix(&t)).unwrap() + 1e-8);
            prop_assert!(circle_lipschitz(&s, 4096).grid_max <= spectral_norm(&toeplitz_commutator(&t)).unwrap() + 1e-8);
        }

        #[test]
        fn approximation_bounds(coeffs in prop::collection::vec(-2.0..2.0f64, 40), n in 2usize..10, deg in 1usize..14, seed in 0u64..1000) {
            let f = real_poly(&coeffs, deg);
            let smooth = symbol(&compress(&f, n));
            let err = sup_norm(&f.sub(&smooth), 4096).grid_max;
            let bound = gamma_n(n, GAMMA_QUAD_POINTS) * circle_lipschitz(&f, 4096).certified();
            prop_assert!(err <= bound + 1e-8);

            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = ToeplitzElement::random_hermitian(&mut rng, n);
            let back = compress(&symbol(&t), n);
            let err = spectral_norm(&toeplitz_matrix(&t.sub(&back))).unwrap();
            let bound = gamma_prime_n(n) * spectral_norm(&toeplitz_commutator(&t)).unwrap();
            prop_assert!(err <= bound + 1e-8);
        }

        #[test]
        fn compression_preserves_positivity(coeffs in prop::collection::vec(-2.0..2.0f64, 20), deg in 0usize..6, n in 1usize..9) {
            // |g|² is a nonnegative trigonometric polynomial of degree 2·deg.
            let g = real_poly(&coeffs, deg);
            let d = 2 * deg;
            let f = FourierPoly::from_fn(d, |k| {
                (-(deg as i64)..=deg as i64).map(|j| g.coeff(j) * g.coeff(j - k).conj()).sum()
            });
            let eig = eig_hermitian(&toeplitz_matrix(&compress(&f, n)), EIG_TOL).unwrap();
            prop_assert!(eig.values[0] >= -1e-9);
        }
    }
}
