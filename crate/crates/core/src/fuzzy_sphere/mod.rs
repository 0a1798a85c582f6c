//! The fuzzy sphere: matrices on the `n`-dimensional irreducible SU(2)
//! representation, with the Berezin symbol and quantization maps relating
//! them to functions on the round sphere.
//!
//! The fixed highest-weight projection `P` is rotated around the sphere by
//! the Euler section `g(θ, φ) = exp(-iφJ₃) exp(-iθJ₂)`; other sections differ
//! by a phase on the highest-weight vector and give the same symbols.
//! Functions on the sphere are finite spherical-harmonic expansions so that
//! the Berezin transform acts diagonally by degree.

mod berezin;
mod harmonics;
mod rep;
mod sphere;

pub use berezin::{
    berezin_quantize, berezin_symbol, berezin_symbol_function, berezin_transform, berezin_transform_multiplier,
    gamma_sphere, heat_measure, quantization_error_ratio, CoherentFrame,
};
pub use harmonics::{gradient_norm, sphere_lipschitz, spherical_harmonics, SphereFunction};
pub use rep::{fuzzy_commutator, fuzzy_lipschitz, su2_generators, FuzzyOperator, Su2Rep};
pub use sphere::{sphere_grid, SpherePoint, SphereQuadrature};

/// Sphere rule used for quantizing functions of degree `degree` on the
/// `n`-dimensional representation: exact to degree `2 degree + 2n`.
pub fn quadrature_for(n: usize, degree: usize) -> SphereQuadrature {
    SphereQuadrature::for_degree(2 * degree + 2 * n)
}
