use std::f64::consts::{PI, TAU};

use crate::quadrature::gauss_legendre;

/// Point on the unit sphere in polar coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint {
    theta: f64,
    phi: f64,
}

impl SpherePoint {
    /// Clamps `theta` to `[0, π]` and reduces `phi` to `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Self {
        SpherePoint {
            theta: theta.clamp(0.0, PI),
            phi: phi.rem_euclid(TAU),
        }
    }

    pub fn north() -> Self {
        SpherePoint { theta: 0.0, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `(x₁, x₂, x₃)`.
    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Great-circle distance.
    pub fn round_distance(&self, other: &SpherePoint) -> f64 {
        let a = self.cartesian();
        let b = other.cartesian();
        let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let sin = cross.iter().map(|c| c * c).sum::<f64>().sqrt();
        sin.atan2(dot)
    }
}

/// Product rule on the sphere: Gauss–Legendre in `cos θ` times the uniform
/// trapezoid rule in `φ`. Weights are normalized to total mass 1.
#[derive(Clone, Debug)]
pub struct SphereQuadrature {
    n_theta: usize,
    n_phi: usize,
    points: Vec<SpherePoint>,
    weights: Vec<f64>,
}

impl SphereQuadrature {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        assert!(n_theta >= 1 && n_phi >= 1);
        let (x, w) = gauss_legendre(n_theta);
        let mut points = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (xi, wi) in x.iter().zip(&w) {
            let theta = xi.clamp(-1.0, 1.0).acos();
            for k in 0..n_phi {
                points.push(SpherePoint::new(theta, TAU * k as f64 / n_phi as f64));
                weights.push(wi / (2.0 * n_phi as f64));
            }
        }
        SphereQuadrature {
            n_theta,
            n_phi,
            points,
            weights,
        }
    }

    /// Smallest rule exact for spherical polynomials of degree `d`.
    pub fn for_degree(d: usize) -> Self {
        Self::new(d / 2 + 1, d + 1)
    }

    /// Largest degree integrated exactly: `min(2 n_θ - 1, n_φ - 1)`.
    pub fn exact_degree(&self) -> usize {
        (2 * self.n_theta - 1).min(self.n_phi - 1)
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `∫ f` against the normalized area measure.
    pub fn integrate(&self, f: impl Fn(SpherePoint) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(p, w)| w * f(*p)).sum()
    }
}

/// Polar product grid with `grid + 1` latitudes (poles included) and `2 grid`
/// longitudes, used for sup-norm estimates.
pub fn sphere_grid(grid: usize) -> Vec<SpherePoint> {
    let grid = grid.max(1);
    let mut out = Vec::with_capacity((grid + 1) * 2 * grid);
    for a in 0..=grid {
        let theta = PI * a as f64 / grid as f64;
        for b in 0..2 * grid {
            out.push(SpherePoint::new(theta, PI * b as f64 / grid as f64));
        }
    }
    out
}
