//! The Fejér–Riesz operator system: finitely supported sequences on `ℤ`
//! acting on `L²(S¹)` by convolution, viewed as trigonometric polynomials.
//!
//! It is dual to the Toeplitz system: here the state space is the circle
//! itself (atomic measures), and the channel into it is Fejér smoothing.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::circle::{certified_sup, FourierPoly, GridSup};

/// Sequence `(a_k)_{|k| < n}` in `C*(ℤ)_(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FRElement {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl FRElement {
    /// `coeffs[k + n - 1]` is `a_k`.
    pub fn new(n: usize, coeffs: Vec<Complex64>) -> Self {
        assert!(n >= 1);
        assert_eq!(coeffs.len(), 2 * n - 1, "need 2n-1 coefficients");
        FRElement { n, coeffs }
    }

    pub fn from_fn(n: usize, f: impl FnMut(i64) -> Complex64) -> Self {
        let m = n as i64;
        FRElement {
            n,
            coeffs: (1 - m..m).map(f).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |k| Complex64::new(if k == 0 { 1.0 } else { 0.0 }, 0.0))
    }

    /// Random Hermitian element with standard normal coefficients.
    pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut a = Self::from_fn(n, |_| Complex64::new(0.0, 0.0));
        a.coeffs[n - 1] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for k in 1..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            a.coeffs[n - 1 + k] = Complex64::new(re, im);
            a.coeffs[n - 1 - k] = Complex64::new(re, -im);
        }
        a
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

    /// `(a*)_k = conj(a_{-k})`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |k| self.coeff(-k).conj())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.n as i64;
        (0..n).all(|k| (self.coeff(-k) - self.coeff(k).conj()).norm() <= tol)
    }

    /// Hermitian with `Σ a_k e^{ikx} ≥ -tol` on an `m`-point grid.
    pub fn is_positive(&self, grid_size: usize, tol: f64) -> bool {
        self.is_hermitian(tol) && fr_embed(self).eval_grid(grid_size).iter().all(|z| z.re >= -tol)
    }

    pub fn sub(&self, other: &FRElement) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |k| self.coeff(k) - other.coeff(k))
    }
}

/// The embedding `L_n` into trigonometric polynomials of degree `n - 1`.
pub fn fr_embed(a: &FRElement) -> FourierPoly {
    FourierPoly::from_fn(a.n - 1, |k| a.coeff(k))
}

/// `K_n(f) = F_n * f`, coefficients `(1 - |k|/n) b_k`.
pub fn fr_compress(f: &FourierPoly, n: usize) -> FRElement {
    let nf = n as f64;
    FRElement::from_fn(n, |k| f.coeff(k) * (1.0 - k.abs() as f64 / nf))
}

/// Operator norm, the sup-norm of the embedded polynomial.
pub fn fr_norm(a: &FRElement, grid_size: usize) -> GridSup {
    certified_sup(&fr_embed(a), grid_size)
}

/// `‖[D, a]‖ = sup |Σ k a_k e^{ikx}|`.
pub fn fr_lipschitz(a: &FRElement, grid_size: usize) -> GridSup {
    certified_sup(&fr_embed(a).map_coeffs(|k, b| b * k as f64), grid_size)
}

/// `γ'_n = √(2n - 1) / n`.
pub fn gamma_prime_fr(n: usize) -> f64 {
    ((2 * n - 1) as f64).sqrt() / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{circle_lipschitz, gamma_n, sup_norm, GAMMA_QUAD_POINTS};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const GRID: usize = 4096;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cos_x(n: usize) -> FRElement {
        FRElement::from_fn(n, |k| c(if k.abs() == 1 { 0.5 } else { 0.0 }))
    }

    fn fejer_f2() -> FRElement {
        FRElement::from_fn(2, |k| c(if k == 0 { 1.0 } else { 0.5 }))
    }

    #[test]
    fn embed_examples() {
        assert_eq!(
            fr_embed(&FRElement::identity(3)),
            FourierPoly::from_fn(2, |k| c(if k == 0 { 1.0 } else { 0.0 }))
        );
        let e = FRElement::from_fn(2, |k| c(if k == 1 { 1.0 } else { 0.0 }));
        assert_eq!(fr_embed(&e), FourierPoly::monomial(1, c(1.0)));
        assert!(fejer_f2().is_positive(GRID, 1e-12));
        assert!(!cos_x(2).is_positive(GRID, 1e-12));
    }

    #[test]
    fn compress_examples() {
        assert_eq!(fr_compress(&FourierPoly::constant(1.0), 4), FRElement::identity(4));
        let a = fr_compress(&FourierPoly::monomial(1, c(1.0)), 2);
        assert_eq!(a.coeff(1), c(0.5));
        assert_eq!(a.coeff(0), c(0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = FRElement::random_hermitian(&mut rng, 6);
        let d = fr_compress(&fr_embed(&a), 6).sub(&a);
        for k in -5..=5i64 {
            assert!((d.coeff(k) + a.coeff(k) * (k.abs() as f64 / 6.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn norm_and_lipschitz_examples() {
        assert!((fr_norm(&FRElement::identity(3), GRID).grid_max - 1.0).abs() < 1e-15);
        assert!((fr_norm(&cos_x(2), GRID).grid_max - 1.0).abs() < 1e-15);
        assert!((fr_norm(&fejer_f2(), GRID).grid_max - 2.0).abs() < 1e-15);
        assert_eq!(fr_lipschitz(&FRElement::identity(3), GRID).certified(), 0.0);
        assert!((fr_lipschitz(&cos_x(2), GRID).grid_max - 1.0).abs() < 1e-12);
        let e = FRElement::from_fn(2, |k| c(if k == 1 { 1.0 } else { 0.0 }));
        assert!((fr_lipschitz(&e, GRID).grid_max - 1.0).abs() < 1e-15);
    }

    #[test]
    fn adjoint_flips_and_conjugates() {
        let a = FRElement::from_fn(2, |k| Complex64::new(k as f64, 1.0));
        let s = a.adjoint();
        assert_eq!(s.coeff(1), Complex64::new(-1.0, -1.0));
        assert_eq!(s.adjoint(), a);
    }

    #[test]
    fn gamma_prime_values() {
        assert_eq!(gamma_prime_fr(1), 1.0);
        assert!((gamma_prime_fr(5) - 0.6).abs() < 1e-15);
        assert!(gamma_prime_fr(1_000_000) < 0.002);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn smoothing_error_bound(seed in 0u64..1000, n in 1usize..10, deg in 1usize..14) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = FourierPoly::random_real(&mut rng, deg);
            let err = sup_norm(&f.sub(&fr_embed(&fr_compress(&f, n))), GRID).grid_max;
            let bound = gamma_n(n, GAMMA_QUAD_POINTS) * circle_lipschitz(&f, GRID).certified();
            prop_assert!(err <= bound + 1e-8);
        }

        #[test]
        fn round_trip_error_bound(seed in 0u64..1000, n in 1usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = FRElement::random_hermitian(&mut rng, n);
            let err = fr_norm(&fr_compress(&fr_embed(&a), n).sub(&a), GRID).grid_max;
            prop_assert!(err <= gamma_prime_fr(n) * fr_lipschitz(&a, GRID).certified() + 1e-8);
        }

        #[test]
        fn channels_are_positive(seed in 0u64..1000, n in 1usize..10, deg in 0usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = FourierPoly::random_real(&mut rng, deg);
            let d = 2 * deg;
            let f = FourierPoly::from_fn(d, |k| {
                (-(deg as i64)..=deg as i64).map(|j| g.coeff(j) * g.coeff(j - k).conj()).sum()
            });
            let a = fr_compress(&f, n);
            prop_assert!(a.is_positive(GRID, 1e-9));
            prop_assert!(fr_embed(&a).eval_grid(GRID).iter().all(|z| z.re >= -1e-9));
        }

        #[test]
        fn norm_dominates_haar_average(seed in 0u64..1000, n in 1usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = FRElement::random_hermitian(&mut rng, n);
            prop_assert!(fr_norm(&a, GRID).certified() >= a.coeff(0).norm() - 1e-12);
        }
    }
}
