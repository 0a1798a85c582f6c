//! Dense complex linear algebra for the small matrices used throughout the crate.
//!
//! Everything here is sized for matrices of a few dozen rows: the Hermitian
//! eigensolver is a cyclic complex Jacobi iteration, which is slow for large
//! inputs but unconditionally stable and accurate to a few ulps.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Default tolerance for the Hermitian eigensolver.
pub const EIG_TOL: f64 = 1e-12;
/// Default tolerance for [`dykstra_project`].
pub const DYKSTRA_TOL: f64 = 1e-9;

const MAX_JACOBI_SWEEPS: usize = 100;

/// Dense complex matrix stored in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major entries.
    ///
    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        CMatrix { rows, cols, data }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Rank-one matrix `u v*`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |M - M*|` entrywise; zero exactly when the matrix is Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// `A B - B A`.
    pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
        &(a * b) - &(b * a)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Real coordinates `(Re m_00, Re m_01, ..., Im m_00, Im m_01, ...)`.
    ///
    /// The Euclidean inner product of two such vectors is the real Frobenius
    /// pairing `Re tr(A* B)`.
    pub fn to_real_vec(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.data.len());
        out.extend(self.data.iter().map(|z| z.re));
        out.extend(self.data.iter().map(|z| z.im));
        out
    }

    /// Inverse of [`CMatrix::to_real_vec`] for a square `n x n` matrix.
    pub fn from_real_vec(n: usize, v: &[f64]) -> Self {
        assert_eq!(v.len(), 2 * n * n);
        let (re, im) = v.split_at(n * n);
        CMatrix {
            rows: n,
            cols: n,
            data: re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect(),
        }
    }

    /// Sample from the Gaussian unitary ensemble: standard normal diagonal,
    /// off-diagonal real and imaginary parts with variance 1/2.
    pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..n {
            m[(i, i)] = Complex64::new(rng.sample(StandardNormal), 0.0);
            for j in i + 1..n {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                let z = Complex64::new(re * s, im * s);
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

/// Eigendecomposition `M = V diag(values) V*` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// Rebuilds `V diag(g(λ)) V*`.
    pub fn map_values(&self, g: impl Fn(f64) -> f64) -> CMatrix {
        self.map_values_complex(|l| Complex64::new(g(l), 0.0))
    }

    /// Rebuilds `V diag(g(λ)) V*` for a complex-valued `g`, e.g. `e^{-itλ}`.
    pub fn map_values_complex(&self, g: impl Fn(f64) -> Complex64) -> CMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let scaled: Vec<Complex64> = self.values.iter().map(|&l| g(l)).collect();
        CMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * scaled[k]).sum()
        })
    }
}

/// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic complex Jacobi.
///
/// The input must satisfy `max |M - M*| <= 10 tol max(1, max |M|)`; its
/// Hermitian part is what gets diagonalized.
pub fn eig_hermitian(m: &CMatrix, tol: f64) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigensolver needs a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    let defect = m.hermitian_defect();
    if defect > 10.0 * tol * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.rows;
    let mut a = m.hermitian_part();
    let mut v = CMatrix::identity(n);
    let fro = a.frobenius_norm();
    if n <= 1 || fro == 0.0 {
        return Ok(sorted(a, v));
    }
    // ‖MV − VΛ‖ equals the off-diagonal mass of the rotated matrix.
    let target = tol * fro / (n as f64).sqrt();

    for sweep in 0..MAX_JACOBI_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= target {
            return Ok(sorted(a, v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let b = a[(p, q)];
                let abs_b = b.norm();
                if abs_b == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if sweep > 3 && app.abs() + 100.0 * abs_b == app.abs() && aqq.abs() + 100.0 * abs_b == aqq.abs() {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                jacobi_rotate(&mut a, &mut v, p, q, b, abs_b, app, aqq);
            }
        }
    }
    if off_diagonal_norm(&a) <= target {
        return Ok(sorted(a, v));
    }
    Err(Error::NoConvergence {
        what: "Jacobi eigensolver",
        iterations: MAX_JACOBI_SWEEPS,
    })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

#[allow(clippy::too_many_arguments)]
fn jacobi_rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, b: Complex64, abs_b: f64, app: f64, aqq: f64) {
    let n = a.rows;
    // Phase e^{-iα} turns a_pq real, then a real Jacobi rotation zeroes it.
    let phase = (b / abs_b).conj();
    let tau = (aqq - app) / (2.0 * abs_b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * abs_b, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * abs_b, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

fn sorted(a: CMatrix, v: CMatrix) -> HermitianEigen {
    let n = a.rows;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// Largest singular value.
///
/// Hermitian inputs use `max |λ|` directly; anything else goes through the top
/// eigenvalue of `M* M`.
pub fn spectral_norm(m: &CMatrix) -> Result<f64> {
    let scale = m.max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    if m.is_square() && m.hermitian_defect() <= 1e-14 * scale {
        let eig = eig_hermitian(m, EIG_TOL)?;
        return Ok(eig.values.iter().fold(0.0_f64, |acc, l| acc.max(l.abs())));
    }
    let gram = &m.adjoint() * m;
    let eig = eig_hermitian(&gram, EIG_TOL)?;
    Ok(eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        a[(i / b.rows, j / b.cols)] * b[(i % b.rows, j % b.cols)]
    })
}

/// Frobenius-nearest point of the spectral-norm ball of the given radius.
///
/// Hermitian arguments have their eigenvalues clipped to `[-radius, radius]`;
/// other matrices have their singular values clipped at `radius`.
pub fn project_spectral_ball(m: &CMatrix, radius: f64) -> Result<CMatrix> {
    let scale = m.max_abs();
    if scale == 0.0 {
        return Ok(m.clone());
    }
    if m.is_square() && m.hermitian_defect() <= 1e-14 * scale {
        let eig = eig_hermitian(m, EIG_TOL)?;
        if eig.values.iter().all(|l| l.abs() <= radius) {
            return Ok(m.clone());
        }
        return Ok(eig.map_values(|l| l.clamp(-radius, radius)));
    }
    // M = U Σ W*, and M W diag(min(1, r/s)) W* clips Σ.
    let eig = eig_hermitian(&(&m.adjoint() * m), EIG_TOL)?;
    let shrink = eig.map_values(|l| {
        let s = l.max(0.0).sqrt();
        if s > radius {
            radius / s
        } else {
            1.0
        }
    });
    Ok(m * &shrink)
}

/// Dykstra's alternating projections onto `S ∩ B`.
///
/// `subspace_proj` must be an orthogonal projector onto a linear subspace
/// `S`, and `ball_proj` the Euclidean metric projection onto a closed convex
/// set `B`. The result is the point of `S ∩ B` nearest to `y0`, returned once
/// consecutive iterates move by less than `tol` and the iterate is within
/// `tol` of `B`.
pub fn dykstra_project<P, B>(y0: &[f64], subspace_proj: P, ball_proj: B, tol: f64, max_iter: usize) -> Result<Vec<f64>>
where
    P: Fn(&[f64]) -> Vec<f64>,
    B: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let dim = y0.len();
    let mut x = y0.to_vec();
    let mut p = vec![0.0; dim];
    let mut q = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    for _ in 0..max_iter {
        for i in 0..dim {
            buf[i] = x[i] + p[i];
        }
        let y = ball_proj(&buf)?;
        for i in 0..dim {
            p[i] = buf[i] - y[i];
            buf[i] = y[i] + q[i];
        }
        let x_next = subspace_proj(&buf);
        for i in 0..dim {
            q[i] = buf[i] - x_next[i];
        }
        let step = dist(&x_next, &x);
        let gap = dist(&x_next, &y);
        x = x_next;
        if step <= tol && gap <= tol {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        what: "Dykstra projection",
        iterations: max_iter,
    })
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Thin QR factorization `A = Q R` of a tall real matrix given by columns.
///
/// Uses modified Gram–Schmidt with one reorthogonalization pass, which keeps
/// `Q` orthonormal to working precision for the well-conditioned bases built
/// in this crate.
#[derive(Clone, Debug)]
pub struct RealQr {
    /// Orthonormal columns.
    pub q: Vec<Vec<f64>>,
    /// Upper-triangular factor, `r[i][j]` for `i <= j`.
    pub r: Vec<Vec<f64>>,
}

impl RealQr {
    pub fn new(columns: &[Vec<f64>]) -> Result<Self> {
        let p = columns.len();
        let mut q: Vec<Vec<f64>> = Vec::with_capacity(p);
        let mut r = vec![vec![0.0; p]; p];
        for (j, col) in columns.iter().enumerate() {
            let mut v = col.clone();
            let original = norm2(&v);
            for _pass in 0..2 {
                for (i, qi) in q.iter().enumerate() {
                    let c = dot(qi, &v);
                    r[i][j] += c;
                    for (vk, qk) in v.iter_mut().zip(qi) {
                        *vk -= c * qk;
                    }
                }
            }
            let nv = norm2(&v);
            if nv <= 1e-12 * original.max(1e-300) {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} is linearly dependent on the previous ones"
                )));
            }
            r[j][j] = nv;
            v.iter_mut().for_each(|x| *x /= nv);
            q.push(v);
        }
        Ok(RealQr { q, r })
    }

    /// Solves `R x = b`.
    pub fn solve_r(&self, b: &[f64]) -> Vec<f64> {
        let p = self.r.len();
        let mut x = vec![0.0; p];
        for i in (0..p).rev() {
            let s: f64 = (i + 1..p).map(|k| self.r[i][k] * x[k]).sum();
            x[i] = (b[i] - s) / self.r[i][i];
        }
        x
    }

    /// Solves `Rᵀ x = b`.
    pub fn solve_rt(&self, b: &[f64]) -> Vec<f64> {
        let p = self.r.len();
        let mut x = vec![0.0; p];
        for i in 0..p {
            let s: f64 = (0..i).map(|k| self.r[k][i] * x[k]).sum();
            x[i] = (b[i] - s) / self.r[i][i];
        }
        x
    }

    /// `Q y`.
    pub fn expand(&self, y: &[f64]) -> Vec<f64> {
        let dim = self.q.first().map_or(0, Vec::len);
        let mut out = vec![0.0; dim];
        for (qi, &yi) in self.q.iter().zip(y) {
            for (o, &qk) in out.iter_mut().zip(qi) {
                *o += yi * qk;
            }
        }
        out
    }

    /// `Qᵀ z`.
    pub fn coords(&self, z: &[f64]) -> Vec<f64> {
        self.q.iter().map(|qi| dot(qi, z)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, entries: &[f64]) -> CMatrix {
        let mut it = entries.iter().cycle();
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(*it.next().unwrap(), 0.0);
            for j in i + 1..n {
                let z = c(*it.next().unwrap(), *it.next().unwrap());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn identity_eigenvalues() {
        let eig = eig_hermitian(&CMatrix::identity(3), EIG_TOL).unwrap();
        assert_eq!(eig.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_eigenvalues_are_sorted() {
        let eig = eig_hermitian(&CMatrix::from_real_diag(&[5.0, -2.0, 0.0]), EIG_TOL).unwrap();
        assert_eq!(eig.values, vec![-2.0, 0.0, 5.0]);
    }

    #[test]
    fn two_by_two_matches_quadratic_formula() {
        // [[a, b], [b̄, d]] has eigenvalues (a+d)/2 ± sqrt(((a-d)/2)² + |b|²).
        for &(a, d, br, bi) in &[(1.0, 2.0, 0.3, -0.7), (-3.0, 0.5, 2.0, 1.0), (0.0, 0.0, 0.0, 1e-3)] {
            let b = c(br, bi);
            let m = CMatrix::from_vec(2, 2, vec![c(a, 0.0), b, b.conj(), c(d, 0.0)]);
            let mid = (a + d) / 2.0;
            let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
            let eig = eig_hermitian(&m, EIG_TOL).unwrap();
            assert!((eig.values[0] - (mid - rad)).abs() < 1e-13);
            assert!((eig.values[1] - (mid + rad)).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(eig_hermitian(&m, EIG_TOL), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn spectral_norm_examples() {
        assert_eq!(spectral_norm(&CMatrix::zeros(3, 3)).unwrap(), 0.0);
        let sigma1 = CMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((spectral_norm(&sigma1).unwrap() - 1.0).abs() < 1e-14);
        // [[0,2],[0,0]] = 2 e_0 e_1ᵀ, a rank-one matrix with singular value 2.
        let nil = CMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!((spectral_norm(&nil).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron(&CMatrix::identity(2), &CMatrix::identity(2)), CMatrix::identity(4));
        let sigma3 = CMatrix::from_real_diag(&[1.0, -1.0]);
        let d = CMatrix::from_real_diag(&[2.0, 7.0]);
        assert_eq!(kron(&sigma3, &d), CMatrix::from_real_diag(&[2.0, 7.0, -2.0, -7.0]));
    }

    #[test]
    fn kron_matches_index_arithmetic() {
        let a = CMatrix::from_vec(2, 3, (0..6).map(|k| c(k as f64, 1.0 - k as f64)).collect());
        let b = CMatrix::from_vec(3, 2, (0..6).map(|k| c(0.5 * k as f64, 2.0)).collect());
        let k = kron(&a, &b);
        let mut naive = CMatrix::zeros(6, 6);
        for i in 0..2 {
            for j in 0..3 {
                for r in 0..3 {
                    for s in 0..2 {
                        naive[(i * 3 + r, j * 2 + s)] = a[(i, j)] * b[(r, s)];
                    }
                }
            }
        }
        assert_eq!(k, naive);
        let v: Vec<Complex64> = (0..6).map(|i| c(i as f64 - 2.5, 0.25 * i as f64)).collect();
        let lhs = k.mul_vec(&v);
        let rhs = naive.mul_vec(&v);
        for (x, y) in lhs.iter().zip(&rhs) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn spectral_ball_projection_clips_eigenvalues() {
        // Hermitian with eigenvalues (3, -0.5) in a rotated basis.
        let (cs, sn) = (0.6_f64, 0.8_f64);
        let u = CMatrix::from_vec(2, 2, vec![c(cs, 0.0), c(-sn, 0.0), c(0.0, sn), c(0.0, cs)]);
        let m = &(&u * &CMatrix::from_real_diag(&[3.0, -0.5])) * &u.adjoint();
        let expected = &(&u * &CMatrix::from_real_diag(&[1.0, -0.5])) * &u.adjoint();
        let got = project_spectral_ball(&m, 1.0).unwrap();
        assert!((&got - &expected).max_abs() < 1e-12);

        let via_dykstra = dykstra_project(
            &m.to_real_vec(),
            |v| v.to_vec(),
            |v| Ok(project_spectral_ball(&CMatrix::from_real_vec(2, v), 1.0)?.to_real_vec()),
            DYKSTRA_TOL,
            1000,
        )
        .unwrap();
        assert!((&CMatrix::from_real_vec(2, &via_dykstra) - &expected).max_abs() < 1e-9);
    }

    #[test]
    fn dykstra_fixed_point() {
        let y0 = [0.3, 0.3];
        let got = dykstra_project(&y0, line_proj, disc_proj, DYKSTRA_TOL, 10).unwrap();
        assert_eq!(got, y0.to_vec());
    }

    fn line_proj(v: &[f64]) -> Vec<f64> {
        let m = 0.5 * (v[0] + v[1]);
        vec![m, m]
    }

    fn disc_proj(v: &[f64]) -> Result<Vec<f64>> {
        let r = norm2(v);
        Ok(if r > 1.0 {
            v.iter().map(|x| x / r).collect()
        } else {
            v.to_vec()
        })
    }

    #[test]
    fn dykstra_line_and_disc() {
        let got = dykstra_project(&[2.0, 0.0], line_proj, disc_proj, 1e-12, 100_000).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((got[0] - h).abs() < 1e-9 && (got[1] - h).abs() < 1e-9, "{got:?}");
    }

    #[test]
    fn qr_solves_round_trip() {
        let cols = vec![
            vec![1.0, 2.0, 0.0, 1.0],
            vec![0.0, 1.0, 3.0, -1.0],
            vec![2.0, 0.0, 1.0, 1.0],
        ];
        let qr = RealQr::new(&cols).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let d = dot(&qr.q[i], &qr.q[j]);
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        let t = [0.5, -1.0, 2.0];
        let a_t: Vec<f64> = (0..4).map(|k| (0..3).map(|j| cols[j][k] * t[j]).sum()).collect();
        let y = qr.coords(&a_t);
        let back = qr.solve_r(&y);
        for (x, y) in back.iter().zip(&t) {
            assert!((x - y).abs() < 1e-13);
        }
        let w = [1.0, 2.0, 3.0];
        let z = qr.solve_rt(&w);
        // Rᵀ z = w
        for (i, wi) in w.iter().enumerate() {
            let s: f64 = (0..=i).map(|k| qr.r[k][i] * z[k]).sum();
            assert!((s - wi).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn spectral_norm_is_max_abs_eigenvalue(entries in prop::collection::vec(-3.0..3.0f64, 40), n in 1usize..7) {
            let m = random_hermitian(n, &entries);
            let eig = eig_hermitian(&m, EIG_TOL).unwrap();
            let top = eig.values.iter().fold(0.0f64, |a, l| a.max(l.abs()));
            let norm = spectral_norm(&m).unwrap();
            prop_assert!((norm - top).abs() <= 1e-10 * top.max(1e-300));
            let tr: f64 = m.trace().re;
            let sum: f64 = eig.values.iter().sum();
            prop_assert!((tr - sum).abs() <= 1e-10 * m.frobenius_norm().max(1.0));
            // residual and orthonormality
            let av = &m * &eig.vectors;
            let vl = &eig.vectors * &CMatrix::from_real_diag(&eig.values);
            prop_assert!((&av - &vl).max_abs() <= 1e-12 * m.frobenius_norm().max(1.0));
            let vv = &eig.vectors.adjoint() * &eig.vectors;
            prop_assert!((&vv - &CMatrix::identity(n)).max_abs() <= 1e-12);
            for w in eig.values.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
        }

        #[test]
        fn kron_norm_is_multiplicative(a in prop::collection::vec(-2.0..2.0f64, 18), b in prop::collection::vec(-2.0..2.0f64, 18)) {
            let ma = CMatrix::from_vec(3, 3, (0..9).map(|k| c(a[k], a[k + 9])).collect());
            let mb = CMatrix::from_vec(3, 3, (0..9).map(|k| c(b[k], b[k + 9])).collect());
            let lhs = spectral_norm(&kron(&ma, &mb)).unwrap();
            let rhs = spectral_norm(&ma).unwrap() * spectral_norm(&mb).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-8 * rhs.max(1.0));
        }

        #[test]
        fn dykstra_output_is_nearest_feasible(x in -4.0..4.0f64, y in -4.0..4.0f64, probes in prop::collection::vec(-1.0..1.0f64, 20)) {
            let got = dykstra_project(&[x, y], line_proj, disc_proj, 1e-12, 200_000).unwrap();
            prop_assert!((got[0] - got[1]).abs() <= 1e-9);
            prop_assert!(norm2(&got) <= 1.0 + 1e-9);
            let d0 = dist(&got, &[x, y]);
            for t in probes {
                let h = t * std::f64::consts::FRAC_1_SQRT_2;
                prop_assert!(dist(&[h, h], &[x, y]) >= d0 - 1e-9);
            }
        }
    }
}
