use num_complex::Complex64;

use crate::circle::{default_grid, rigor_factor, toeplitz_commutator, ToeplitzElement};
use crate::error::{Error, Result};
use crate::fejer_riesz::{fr_lipschitz, FRElement};
use crate::fuzzy_sphere::{fuzzy_commutator, fuzzy_lipschitz, FuzzyOperator, Su2Rep};
use crate::linalg::{spectral_norm, CMatrix};

use super::state::{Element, State, SystemKind};

/// An operator system spectral triple on which distances are computed.
// Systems are built once per sweep, so keeping the representation inline costs nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum System {
    /// `C(S¹)^(n)` with `P_n D P_n`.
    Toeplitz { n: usize },
    /// `C*(ℤ)_(n)`, with sup-norms certified on a `grid`-point uniform grid.
    FejerRiesz { n: usize, grid: usize },
    /// The fuzzy sphere `L(V_n)` with `D_n`.
    Fuzzy(Su2Rep),
}

impl System {
    pub fn toeplitz(n: usize) -> Self {
        assert!(n >= 1);
        System::Toeplitz { n }
    }

    /// Fejér–Riesz system with the default grid `max(4096, 64 (n - 1))`.
    pub fn fejer_riesz(n: usize) -> Self {
        Self::fejer_riesz_with_grid(n, default_grid(n.saturating_sub(1)))
    }

    /// Panics unless `grid ≥ 8 n`.
    pub fn fejer_riesz_with_grid(n: usize, grid: usize) -> Self {
        assert!(n >= 1);
        assert!(grid >= 8 * n, "grid of {grid} points is too coarse for n = {n}");
        System::FejerRiesz { n, grid }
    }

    pub fn fuzzy(n: usize) -> Self {
        System::Fuzzy(Su2Rep::new(n))
    }

    pub fn kind(&self) -> SystemKind {
        match self {
            System::Toeplitz { .. } => SystemKind::Toeplitz,
            System::FejerRiesz { .. } => SystemKind::FejerRiesz,
            System::Fuzzy(_) => SystemKind::Fuzzy,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            System::Toeplitz { n } | System::FejerRiesz { n, .. } => *n,
            System::Fuzzy(rep) => rep.n(),
        }
    }

    /// Number of real coordinates of Hermitian elements modulo `ℂ1`.
    pub fn dim(&self) -> usize {
        let n = self.n();
        match self {
            System::Toeplitz { .. } | System::FejerRiesz { .. } => 2 * (n - 1),
            System::Fuzzy(_) => n * n - 1,
        }
    }

    /// Hermitian element with coordinates `y`, identity component zero.
    ///
    /// Toeplitz and Fejér–Riesz: `a_k = y_{2k-2} + i y_{2k-1}` for `k ≥ 1`,
    /// `a_{-k} = conj(a_k)`, `a_0 = 0`. Fuzzy: the traceless diagonals
    /// `E_dd - E_{d+1,d+1}`, then `E_ij + E_ji` and `i E_ij - i E_ji` for `i < j`.
    pub fn element(&self, y: &[f64]) -> Element {
        assert_eq!(y.len(), self.dim());
        let n = self.n();
        match self {
            System::Toeplitz { .. } => Element::Toeplitz(ToeplitzElement::from_fn(n, |k| hermitian_coeff(y, k))),
            System::FejerRiesz { .. } => Element::FejerRiesz(FRElement::from_fn(n, |k| hermitian_coeff(y, k))),
            System::Fuzzy(_) => {
                let mut m = CMatrix::zeros(n, n);
                for d in 0..n - 1 {
                    m[(d, d)] += Complex64::new(y[d], 0.0);
                    m[(d + 1, d + 1)] -= Complex64::new(y[d], 0.0);
                }
                let mut t = n - 1;
                for i in 0..n {
                    for j in i + 1..n {
                        let z = Complex64::new(y[t], y[t + 1]);
                        m[(i, j)] += z;
                        m[(j, i)] += z.conj();
                        t += 2;
                    }
                }
                Element::Fuzzy(FuzzyOperator::new(m))
            }
        }
    }

    /// Real vector representing `[D, x]` in the constraint space, for the
    /// element with coordinates `y`.
    ///
    /// Matrix systems use the real-stacked entries of the Hermitian matrix
    /// `i [D, x]`; Fejér–Riesz uses the samples of `f'` on the grid, whose
    /// modulus is `|Σ k a_k e^{ikx}|`.
    pub fn commutator_image(&self, y: &[f64]) -> Vec<f64> {
        let i = Complex64::new(0.0, 1.0);
        match (self, self.element(y)) {
            (System::Toeplitz { .. }, Element::Toeplitz(t)) => toeplitz_commutator(&t).scale(i).to_real_vec(),
            (System::Fuzzy(rep), Element::Fuzzy(t)) => fuzzy_commutator(rep, &t).scale(i).to_real_vec(),
            (System::FejerRiesz { n, grid }, _) => {
                let m = *grid;
                (0..m)
                    .map(|j| {
                        let x = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                        (1..*n)
                            .map(|k| {
                                let (s, c) = (k as f64 * x).sin_cos();
                                let (u, v) = (y[2 * k - 2], y[2 * k - 1]);
                                // f = Σ 2(u cos kx - v sin kx)
                                -2.0 * k as f64 * (u * s + v * c)
                            })
                            .sum()
                    })
                    .collect()
            }
            _ => unreachable!("element kind matches system"),
        }
    }

    /// `‖[D, x]‖` for the element with coordinates `y`, computed from the
    /// module-level seminorms (certified upper bound for Fejér–Riesz).
    pub fn seminorm(&self, y: &[f64]) -> Result<f64> {
        self.element_seminorm(&self.element(y))
    }

    pub fn element_seminorm(&self, x: &Element) -> Result<f64> {
        match (self, x) {
            (System::Toeplitz { .. }, Element::Toeplitz(t)) => spectral_norm(&toeplitz_commutator(t)),
            (System::FejerRiesz { grid, .. }, Element::FejerRiesz(a)) => Ok(fr_lipschitz(a, *grid).certified()),
            (System::Fuzzy(rep), Element::Fuzzy(t)) => fuzzy_lipschitz(rep, t),
            _ => Err(Error::SystemMismatch),
        }
    }

    /// Radius of the constraint ball in the image space: 1 for matrix
    /// systems, `1 - π(n-1)/grid` for Fejér–Riesz so that grid feasibility
    /// certifies `sup |f'| ≤ 1`.
    pub fn constraint_radius(&self) -> f64 {
        match self {
            System::FejerRiesz { n, grid } => 1.0 / rigor_factor(n - 1, *grid),
            _ => 1.0,
        }
    }

    /// Side length of the Hermitian matrices in the image space.
    pub(crate) fn image_side(&self) -> Option<usize> {
        match self {
            System::Toeplitz { n } => Some(*n),
            System::Fuzzy(rep) => Some(2 * rep.n()),
            System::FejerRiesz { .. } => None,
        }
    }

    /// Objective `w_t = (φ - ψ)(x_t)` on the coordinate basis.
    pub fn objective(&self, phi: &State, psi: &State) -> Result<Vec<f64>> {
        for s in [phi, psi] {
            if s.kind() != self.kind() {
                return Err(Error::SystemMismatch);
            }
            if s.n() != self.n() {
                return Err(Error::DimensionMismatch(format!(
                    "state of size {} on a system of size {}",
                    s.n(),
                    self.n()
                )));
            }
        }
        let p = self.dim();
        (0..p)
            .map(|t| {
                let mut e = vec![0.0; p];
                e[t] = 1.0;
                let x = self.element(&e);
                Ok((phi.eval(&x)? - psi.eval(&x)?).re)
            })
            .collect()
    }
}

fn hermitian_coeff(y: &[f64], k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let j = k.unsigned_abs() as usize;
    let z = Complex64::new(y[2 * j - 2], y[2 * j - 1]);
    if k > 0 {
        z
    } else {
        z.conj()
    }
}
