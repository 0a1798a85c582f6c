use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

use super::sphere::{sphere_grid, SpherePoint, SphereQuadrature};

fn index(l: usize, m: i64) -> usize {
    ((l * l + l) as i64 + m) as usize
}

/// Normalized associated Legendre values `√((2l+1)/4π · (l-m)!/(l+m)!) P_l^m(x)`
/// (Condon–Shortley phase included) for `0 ≤ m ≤ l ≤ lmax`, at `l(l+1)/2 + m`.
fn legendre_table(lmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; (lmax + 1) * (lmax + 2) / 2];
    let at = |l: usize, m: usize| l * (l + 1) / 2 + m;
    let omx2 = (1.0 - x) * (1.0 + x);
    let mut pmm_raw = 1.0;
    for m in 0..=lmax {
        if m > 0 {
            let f = (2 * m - 1) as f64;
            pmm_raw *= omx2 * f / (f + 1.0);
        }
        let mut pmm = ((2 * m + 1) as f64 * pmm_raw / (4.0 * PI)).sqrt();
        if m % 2 == 1 {
            pmm = -pmm;
        }
        out[at(m, m)] = pmm;
        if m == lmax {
            break;
        }
        let mut pmmp1 = x * ((2 * m + 3) as f64).sqrt() * pmm;
        out[at(m + 1, m)] = pmmp1;
        let mut old = ((2 * m + 3) as f64).sqrt();
        for l in m + 2..=lmax {
            let (lf, mf) = (l as f64, m as f64);
            let fact = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let pll = (x * pmmp1 - pmm / old) * fact;
            old = fact;
            pmm = pmmp1;
            pmmp1 = pll;
            out[at(l, m)] = pll;
        }
    }
    out
}

/// All `Y_lm(p)` for `l ≤ lmax`, at index `l² + l + m`.
///
/// Normalized so that `∫ |Y_lm|² dΩ = 1` over the unnormalized area measure.
pub fn spherical_harmonics(lmax: usize, p: SpherePoint) -> Vec<Complex64> {
    let table = legendre_table(lmax, p.theta().cos());
    let mut out = vec![Complex64::new(0.0, 0.0); (lmax + 1) * (lmax + 1)];
    for l in 0..=lmax {
        for m in 0..=l {
            let y = Complex64::from_polar(table[l * (l + 1) / 2 + m], m as f64 * p.phi());
            out[index(l, m as i64)] = y;
            if m > 0 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                out[index(l, -(m as i64))] = y.conj() * sign;
            }
        }
    }
    out
}

/// Finite spherical-harmonic expansion `f = Σ_{l ≤ L} Σ_m c_lm Y_lm`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereFunction {
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl SphereFunction {
    /// `coeffs[l² + l + m]` is `c_lm`.
    pub fn new(degree: usize, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), (degree + 1) * (degree + 1));
        SphereFunction { degree, coeffs }
    }

    pub fn from_fn(degree: usize, mut f: impl FnMut(usize, i64) -> Complex64) -> Self {
        let mut coeffs = Vec::with_capacity((degree + 1) * (degree + 1));
        for l in 0..=degree {
            for m in -(l as i64)..=l as i64 {
                coeffs.push(f(l, m));
            }
        }
        SphereFunction { degree, coeffs }
    }

    /// The constant function `c`.
    pub fn constant(c: f64) -> Self {
        Self::new(0, vec![Complex64::new(c * (4.0 * PI).sqrt(), 0.0)])
    }

    /// A single harmonic `Y_lm`.
    pub fn harmonic(l: usize, m: i64) -> Self {
        assert!(m.unsigned_abs() as usize <= l);
        Self::from_fn(l, |a, b| Complex64::new(if a == l && b == m { 1.0 } else { 0.0 }, 0.0))
    }

    /// The coordinate function `x_k` (`k` = 0, 1, 2).
    pub fn coordinate(k: usize) -> Self {
        let s = (2.0 * PI / 3.0).sqrt();
        let c = |re: f64, im: f64| Complex64::new(re, im);
        // x₁ = √(2π/3)(Y_{1,-1} - Y_{11}), x₂ = i√(2π/3)(Y_{1,-1} + Y_{11}), x₃ = √(4π/3) Y_10
        let (minus, zero, plus) = match k {
            0 => (c(s, 0.0), c(0.0, 0.0), c(-s, 0.0)),
            1 => (c(0.0, s), c(0.0, 0.0), c(0.0, s)),
            2 => (c(0.0, 0.0), c((2.0f64).sqrt() * s, 0.0), c(0.0, 0.0)),
            _ => panic!("coordinate index must be 0, 1 or 2"),
        };
        Self::new(1, vec![c(0.0, 0.0), minus, zero, plus])
    }

    /// Random real function with coefficients of size `~1/(1+l)`.
    pub fn random_real<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Self {
        let mut f = Self::from_fn(degree, |_, _| Complex64::new(0.0, 0.0));
        for l in 0..=degree {
            let damp = 1.0 / (1.0 + l as f64);
            let c0: f64 = rng.sample(StandardNormal);
            f.coeffs[index(l, 0)] = Complex64::new(c0 * damp, 0.0);
            for m in 1..=l as i64 {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                let c = Complex64::new(re, im) * (damp / 2f64.sqrt());
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                f.coeffs[index(l, m)] = c;
                f.coeffs[index(l, -m)] = c.conj() * sign;
            }
        }
        f
    }

    /// Coefficients `c_lm = ∫ conj(Y_lm) g dΩ` by quadrature.
    ///
    /// Exact when `g` has degree at most `quad.exact_degree() - degree`.
    pub fn project(degree: usize, quad: &SphereQuadrature, g: impl Fn(SpherePoint) -> Complex64) -> Result<Self> {
        if quad.exact_degree() < 2 * degree {
            return Err(Error::QuadratureTooCoarse {
                required: 2 * degree,
                available: quad.exact_degree(),
            });
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (degree + 1) * (degree + 1)];
        for (p, w) in quad.points().iter().zip(quad.weights()) {
            let gv = g(*p) * (4.0 * PI * w);
            for (c, y) in coeffs.iter_mut().zip(spherical_harmonics(degree, *p)) {
                *c += y.conj() * gv;
            }
        }
        Ok(SphereFunction { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, l: usize, m: i64) -> Complex64 {
        if l > self.degree || m.unsigned_abs() as usize > l {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[index(l, m)]
        }
    }

    /// Real-valued iff `c_{l,-m} = (-1)^m conj(c_lm)`.
    pub fn is_real(&self, tol: f64) -> bool {
        (0..=self.degree).all(|l| {
            (0..=l as i64).all(|m| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                (self.coeff(l, -m) - self.coeff(l, m).conj() * sign).norm() <= tol
            })
        })
    }

    pub fn eval(&self, p: SpherePoint) -> Complex64 {
        self.coeffs
            .iter()
            .zip(spherical_harmonics(self.degree, p))
            .map(|(c, y)| c * y)
            .sum()
    }

    /// Coefficientwise map `c_lm ↦ g(l, m, c_lm)`.
    pub fn map_coeffs(&self, mut g: impl FnMut(usize, i64, Complex64) -> Complex64) -> Self {
        Self::from_fn(self.degree, |l, m| g(l, m, self.coeff(l, m)))
    }

    pub fn sub(&self, other: &SphereFunction) -> Self {
        Self::from_fn(self.degree.max(other.degree), |l, m| {
            self.coeff(l, m) - other.coeff(l, m)
        })
    }

    /// `⟨f, g⟩ = ∫ conj(f) g` against the normalized area measure.
    pub fn inner(&self, other: &SphereFunction) -> Complex64 {
        let d = self.degree.min(other.degree);
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..=d {
            for m in -(l as i64)..=l as i64 {
                acc += self.coeff(l, m).conj() * other.coeff(l, m);
            }
        }
        acc / (4.0 * PI)
    }

    /// `L_z f`, `L_+ f`, `L_- f` for the angular momentum `L = -i x × ∇`.
    pub fn ladder(&self) -> [SphereFunction; 3] {
        let lz = self.map_coeffs(|_, m, c| c * m as f64);
        // (L_± f)_{l,m} = √((l ∓ m + 1)(l ± m)) c_{l,m∓1}
        let lplus = Self::from_fn(self.degree, |l, m| {
            let (lf, mf) = (l as f64, m as f64);
            self.coeff(l, m - 1) * ((lf - mf + 1.0) * (lf + mf)).max(0.0).sqrt()
        });
        let lminus = Self::from_fn(self.degree, |l, m| {
            let (lf, mf) = (l as f64, m as f64);
            self.coeff(l, m + 1) * ((lf + mf + 1.0) * (lf - mf)).max(0.0).sqrt()
        });
        [lz, lplus, lminus]
    }

    /// `max |f|` on [`sphere_grid`].
    pub fn sup_grid(&self, grid: usize) -> f64 {
        sphere_grid(grid)
            .into_iter()
            .map(|p| self.eval(p).norm())
            .fold(0.0, f64::max)
    }
}

/// Riemannian gradient norm `|∇f|(p)`, from `|∇f|² = |L_z f|² + (|L_+ f|² + |L_- f|²)/2`.
pub fn gradient_norm(f: &SphereFunction, p: SpherePoint) -> f64 {
    let [lz, lp, lm] = f.ladder();
    gradient_norm_from_ladder(&lz, &lp, &lm, p)
}

fn gradient_norm_from_ladder(lz: &SphereFunction, lp: &SphereFunction, lm: &SphereFunction, p: SpherePoint) -> f64 {
    let y = spherical_harmonics(lz.degree(), p);
    let ev = |g: &SphereFunction| -> Complex64 { g.coeffs().iter().zip(&y).map(|(c, y)| c * y).sum() };
    (ev(lz).norm_sqr() + 0.5 * (ev(lp).norm_sqr() + ev(lm).norm_sqr())).sqrt()
}

/// `‖[D_{S²}, f]‖ = sup |∇f|`, sampled on [`sphere_grid`]. Never exceeds the
/// true value and converges to it under grid refinement.
pub fn sphere_lipschitz(f: &SphereFunction, grid: usize) -> f64 {
    let [lz, lp, lm] = f.ladder();
    sphere_grid(grid)
        .into_iter()
        .map(|p| gradient_norm_from_ladder(&lz, &lp, &lm, p))
        .fold(0.0, f64::max)
}
