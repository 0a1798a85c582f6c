use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::circle::{toeplitz_matrix, ToeplitzElement};
use crate::error::{Error, Result};
use crate::fejer_riesz::FRElement;
use crate::fuzzy_sphere::{FuzzyOperator, SpherePoint, Su2Rep};
use crate::linalg::{eig_hermitian, CMatrix, EIG_TOL};

/// Which operator system an element or state belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemKind {
    Toeplitz,
    FejerRiesz,
    Fuzzy,
}

/// Element of one of the three operator systems.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Toeplitz(ToeplitzElement),
    FejerRiesz(FRElement),
    Fuzzy(FuzzyOperator),
}

impl Element {
    pub fn kind(&self) -> SystemKind {
        match self {
            Element::Toeplitz(_) => SystemKind::Toeplitz,
            Element::FejerRiesz(_) => SystemKind::FejerRiesz,
            Element::Fuzzy(_) => SystemKind::Fuzzy,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Element::Toeplitz(t) => t.n(),
            Element::FejerRiesz(a) => a.n(),
            Element::Fuzzy(t) => t.n(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    /// `T ↦ tr(ρ T)`.
    Density(CMatrix),
    /// `a ↦ Σ_k a_k μ_k`, stored at `k + n - 1`.
    Moments(Vec<Complex64>),
}

/// Positive unital functional on an operator system of size `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    kind: SystemKind,
    n: usize,
    repr: Repr,
}

const VALIDATION_TOL: f64 = 1e-9;

fn validate_density(rho: &CMatrix) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::InvalidState("density matrix must be square".into()));
    }
    if !rho.is_hermitian(VALIDATION_TOL) {
        return Err(Error::InvalidState("density matrix must be Hermitian".into()));
    }
    let tr = rho.trace();
    if (tr - 1.0).norm() > VALIDATION_TOL {
        return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
    }
    let eig = eig_hermitian(&rho.hermitian_part(), EIG_TOL)?;
    if eig.values[0] < -VALIDATION_TOL {
        return Err(Error::InvalidState(format!(
            "density matrix has negative eigenvalue {}",
            eig.values[0]
        )));
    }
    Ok(())
}

fn wishart_density<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let rho = (&a * &a.adjoint()).hermitian_part();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

impl State {
    /// Density state `T ↦ tr(ρ T)` on the Toeplitz system.
    pub fn toeplitz_density(rho: CMatrix) -> Result<Self> {
        validate_density(&rho)?;
        Ok(State {
            kind: SystemKind::Toeplitz,
            n: rho.rows(),
            repr: Repr::Density(rho),
        })
    }

    /// Vector state `⟨ψ, T ψ⟩` on the Toeplitz system; `ψ` is normalized here.
    pub fn toeplitz_vector(psi: &[Complex64]) -> Result<Self> {
        Self::toeplitz_density(normalized_projection(psi)?)
    }

    /// Random density state on the Toeplitz system (normalized Wishart).
    pub fn random_toeplitz<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        State {
            kind: SystemKind::Toeplitz,
            n,
            repr: Repr::Density(wishart_density(rng, n)),
        }
    }

    /// State `a ↦ Σ_k a_k μ_k` on the Fejér–Riesz system, given moments
    /// `μ_k` for `|k| < n` at index `k + n - 1`.
    ///
    /// Positivity on the system is equivalent to the moment matrix
    /// `[μ_{l-j}]_{j,l}` being positive semidefinite.
    pub fn fr_moments(n: usize, moments: Vec<Complex64>) -> Result<Self> {
        if moments.len() != 2 * n - 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} moments, got {}",
                2 * n - 1,
                moments.len()
            )));
        }
        let mu = |k: i64| moments[(k + n as i64 - 1) as usize];
        let gram = CMatrix::from_fn(n, n, |j, l| mu(l as i64 - j as i64));
        validate_density(&gram.scale_real(1.0 / n as f64))?;
        Ok(State {
            kind: SystemKind::FejerRiesz,
            n,
            repr: Repr::Moments(moments),
        })
    }

    /// Pullback of the probability measure `Σ w_i δ_{x_i}` to the Fejér–Riesz system.
    pub fn fr_measure(n: usize, atoms: &[(f64, f64)]) -> Result<Self> {
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        if atoms.iter().any(|(_, w)| *w < 0.0) || (total - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::InvalidState("atom weights must be a probability vector".into()));
        }
        let m = n as i64;
        let moments = (1 - m..m)
            .map(|k| atoms.iter().map(|(x, w)| Complex64::from_polar(*w, k as f64 * x)).sum())
            .collect();
        Ok(State {
            kind: SystemKind::FejerRiesz,
            n,
            repr: Repr::Moments(moments),
        })
    }

    /// `ev_x ∘ L_n`.
    pub fn fr_evaluation(x: f64, n: usize) -> Self {
        Self::fr_measure(n, &[(x, 1.0)]).expect("a point mass is a probability measure")
    }

    /// Random measure with three atoms pulled back to the Fejér–Riesz system.
    pub fn random_fr<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut atoms: Vec<(f64, f64)> = (0..3)
            .map(|_| (rng.random_range(0.0..2.0 * PI), rng.random_range(0.05..1.0)))
            .collect();
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        atoms.iter_mut().for_each(|(_, w)| *w /= total);
        Self::fr_measure(n, &atoms).expect("weights are normalized")
    }

    /// Density state `T ↦ tr(ρ T)` on the fuzzy sphere.
    pub fn fuzzy_density(rho: CMatrix) -> Result<Self> {
        validate_density(&rho)?;
        Ok(State {
            kind: SystemKind::Fuzzy,
            n: rho.rows(),
            repr: Repr::Density(rho),
        })
    }

    /// `σ*(ev_p)`, the coherent state `T ↦ σ_T(p)`.
    pub fn coherent(rep: &Su2Rep, p: SpherePoint) -> Self {
        let v = rep.coherent_vector(p);
        State {
            kind: SystemKind::Fuzzy,
            n: rep.n(),
            repr: Repr::Density(CMatrix::outer(&v, &v)),
        }
    }

    /// Random density state on the fuzzy sphere (normalized Wishart).
    pub fn random_fuzzy<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        State {
            kind: SystemKind::Fuzzy,
            n,
            repr: Repr::Density(wishart_density(rng, n)),
        }
    }

    /// Random state of the given system.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, kind: SystemKind, n: usize) -> Self {
        match kind {
            SystemKind::Toeplitz => Self::random_toeplitz(rng, n),
            SystemKind::FejerRiesz => Self::random_fr(rng, n),
            SystemKind::Fuzzy => Self::random_fuzzy(rng, n),
        }
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Density matrix, for the matrix-realized systems.
    pub fn density(&self) -> Option<&CMatrix> {
        match &self.repr {
            Repr::Density(rho) => Some(rho),
            Repr::Moments(_) => None,
        }
    }

    /// `μ_k` with `φ(T) = Σ_k a_k μ_k` for Toeplitz and Fejér–Riesz states.
    ///
    /// For a Toeplitz density, `μ_d = Σ_l ρ_{l, l+d}`.
    pub fn moments(&self) -> Option<Vec<Complex64>> {
        match (&self.repr, self.kind) {
            (Repr::Moments(m), _) => Some(m.clone()),
            (Repr::Density(rho), SystemKind::Toeplitz) => {
                let n = self.n as i64;
                Some(
                    (1 - n..n)
                        .map(|d| {
                            (0..n)
                                .filter(|l| (0..n).contains(&(l + d)))
                                .map(|l| rho[(l as usize, (l + d) as usize)])
                                .sum()
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// `φ(x)`.
    pub fn eval(&self, x: &Element) -> Result<Complex64> {
        if x.kind() != self.kind {
            return Err(Error::SystemMismatch);
        }
        if x.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "state on size {} applied to element of size {}",
                self.n,
                x.n()
            )));
        }
        Ok(match (&self.repr, x) {
            (Repr::Density(rho), Element::Toeplitz(t)) => (rho * &toeplitz_matrix(t)).trace(),
            (Repr::Density(rho), Element::Fuzzy(t)) => (rho * t.matrix()).trace(),
            (Repr::Moments(mu), Element::FejerRiesz(a)) => a.coeffs().iter().zip(mu).map(|(a, m)| a * m).sum(),
            _ => return Err(Error::SystemMismatch),
        })
    }
}

fn normalized_projection(psi: &[Complex64]) -> Result<CMatrix> {
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidState("zero vector".into()));
    }
    let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
    Ok(CMatrix::outer(&v, &v))
}

/// `S_n*(ev_x)`: the vector state of `ψ_x = (e^{-ikx}/√n)_{k=1..n}`, with
/// `S_n*(ev_x)(T) = Σ (1 - |k|/n) a_k e^{ikx} = S_n(T)(x)`.
pub fn state_pullback_symbol(x: f64, n: usize) -> State {
    let scale = 1.0 / (n as f64).sqrt();
    let psi: Vec<Complex64> = (1..=n).map(|k| Complex64::from_polar(scale, -(k as f64) * x)).collect();
    State {
        kind: SystemKind::Toeplitz,
        n,
        repr: Repr::Density(CMatrix::outer(&psi, &psi)),
    }
}

/// `φ ∘ R_n` for a Toeplitz state `φ`, as a functional on trigonometric
/// polynomials of degree `n - 1` (the Fejér–Riesz system of the same size).
pub fn pullback_compress(state: &State) -> Result<State> {
    if state.kind != SystemKind::Toeplitz {
        return Err(Error::SystemMismatch);
    }
    let moments = state.moments().expect("Toeplitz states have moments");
    State::fr_moments(state.n, moments)
}
