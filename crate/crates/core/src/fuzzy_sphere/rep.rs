use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::linalg::{eig_hermitian, kron, spectral_norm, CMatrix, HermitianEigen, EIG_TOL};

use super::sphere::SpherePoint;

/// The `n`-dimensional irreducible representation of su(2), spin `j = (n-1)/2`.
///
/// Basis vector `i` has weight `m = j - i`, so index 0 is the highest weight.
/// The skew-Hermitian generators are `L12 = iJ₃`, `L13 = -iJ₂`, `L23 = iJ₁`.
#[derive(Clone, Debug)]
pub struct Su2Rep {
    n: usize,
    /// Hermitian spin matrices `J₁, J₂, J₃`.
    j: [CMatrix; 3],
    l12: CMatrix,
    l13: CMatrix,
    l23: CMatrix,
    j2_eigen: HermitianEigen,
}

/// `su2_generators(n)`.
pub fn su2_generators(n: usize) -> Su2Rep {
    Su2Rep::new(n)
}

impl Su2Rep {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "representation dimension must be at least 1");
        let spin = (n as f64 - 1.0) / 2.0;
        let weight = |i: usize| spin - i as f64;
        // J₊ e_{i} = √(j(j+1) - m(m+1)) e_{i-1}
        let raise = CMatrix::from_fn(n, n, |r, c| {
            if c == r + 1 {
                let m = weight(c);
                Complex64::new((spin * (spin + 1.0) - m * (m + 1.0)).sqrt(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let lower = raise.adjoint();
        let j1 = (&raise + &lower).scale_real(0.5);
        let j2 = (&raise - &lower).scale(Complex64::new(0.0, -0.5));
        let j3 = CMatrix::from_real_diag(&(0..n).map(weight).collect::<Vec<_>>());
        let i = Complex64::new(0.0, 1.0);
        let l12 = j3.scale(i);
        let l13 = j2.scale(-i);
        let l23 = j1.scale(i);
        let j2_eigen = eig_hermitian(&j2, EIG_TOL).expect("spin matrix is Hermitian");
        Su2Rep {
            n,
            j: [j1, j2, j3],
            l12,
            l13,
            l23,
            j2_eigen,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spin(&self) -> f64 {
        (self.n as f64 - 1.0) / 2.0
    }

    pub fn l12(&self) -> &CMatrix {
        &self.l12
    }

    pub fn l13(&self) -> &CMatrix {
        &self.l13
    }

    pub fn l23(&self) -> &CMatrix {
        &self.l23
    }

    /// Generators in the order `L12, L13, L23`.
    pub fn generators(&self) -> [&CMatrix; 3] {
        [&self.l12, &self.l13, &self.l23]
    }

    /// Hermitian spin matrices `J₁, J₂, J₃`.
    pub fn spin_matrices(&self) -> &[CMatrix; 3] {
        &self.j
    }

    /// `L12² + L13² + L23²`, which equals `-(n² - 1)/4 · I`.
    pub fn casimir(&self) -> CMatrix {
        let sq = |m: &CMatrix| m * m;
        &(&sq(&self.l12) + &sq(&self.l13)) + &sq(&self.l23)
    }

    /// `exp(-iθJ₂)`.
    fn tilt(&self, theta: f64) -> CMatrix {
        self.j2_eigen
            .map_values_complex(|l| Complex64::from_polar(1.0, -theta * l))
    }

    /// `exp(-iψJ₃)`, diagonal.
    pub fn spin_about_axis(&self, psi: f64) -> CMatrix {
        CMatrix::from_fn(self.n, self.n, |r, c| {
            if r == c {
                Complex64::from_polar(1.0, -psi * (self.spin() - r as f64))
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Unitary `U = exp(-iφJ₃) exp(-iθJ₂)` carrying the north pole to `p`.
    pub fn rotation(&self, p: SpherePoint) -> CMatrix {
        &self.spin_about_axis(p.phi()) * &self.tilt(p.theta())
    }

    /// Coherent vector `U e₀` at `p`.
    pub fn coherent_vector(&self, p: SpherePoint) -> Vec<Complex64> {
        let tilt = self.tilt(p.theta()).column(0);
        let spin = self.spin();
        tilt.into_iter()
            .enumerate()
            .map(|(i, z)| z * Complex64::from_polar(1.0, -p.phi() * (spin - i as f64)))
            .collect()
    }

    /// Projection onto the highest-weight vector.
    pub fn highest_weight_projection(&self) -> CMatrix {
        CMatrix::from_fn(self.n, self.n, |r, c| {
            Complex64::new(if r == 0 && c == 0 { 1.0 } else { 0.0 }, 0.0)
        })
    }
}

/// Matrix `T ∈ L(V_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyOperator {
    matrix: CMatrix,
}

impl FuzzyOperator {
    pub fn new(matrix: CMatrix) -> Self {
        assert!(matrix.is_square(), "fuzzy operator must be square");
        FuzzyOperator { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(CMatrix::identity(n))
    }

    /// Traceless sample from the Gaussian unitary ensemble.
    pub fn random_traceless<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut m = CMatrix::random_hermitian(rng, n);
        let mean = m.trace() / n as f64;
        for i in 0..n {
            m[(i, i)] -= mean;
        }
        Self::new(m)
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.matrix.is_hermitian(tol)
    }

    /// `α_g(T) = U T U*`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        Self::new(&(u * &self.matrix) * &u.adjoint())
    }
}

fn pauli() -> [CMatrix; 3] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        CMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
        CMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
        CMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
    ]
}

/// `[D_n, T] = Σ_{j<k} σ^j σ^k ⊗ [L_jk, T]` as a `2n × 2n` matrix, with
/// `σ¹σ² = iσ³`, `σ¹σ³ = -iσ²`, `σ²σ³ = iσ¹`.
pub fn fuzzy_commutator(rep: &Su2Rep, t: &FuzzyOperator) -> CMatrix {
    let [s1, s2, s3] = pauli();
    let i = Complex64::new(0.0, 1.0);
    let m = t.matrix();
    let parts = [
        (s3.scale(i), rep.l12()),
        (s2.scale(-i), rep.l13()),
        (s1.scale(i), rep.l23()),
    ];
    let mut out = CMatrix::zeros(2 * rep.n(), 2 * rep.n());
    for (pauli_product, gen) in &parts {
        out = &out + &kron(pauli_product, &CMatrix::commutator(gen, m));
    }
    out
}

/// `‖[D_n, T]‖`.
pub fn fuzzy_lipschitz(rep: &Su2Rep, t: &FuzzyOperator) -> Result<f64> {
    spectral_norm(&fuzzy_commutator(rep, t))
}
