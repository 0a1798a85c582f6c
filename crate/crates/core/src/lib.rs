//! Spectral truncations of the circle and the fuzzy sphere.
//!
//! Toeplitz and Fejér–Riesz operator systems approximate `C(S¹)`, matrix
//! algebras with the su(2) Dirac operator approximate `C(S²)`. The crate
//! computes Connes distances between states on these systems, the error
//! constants that control their convergence, and the resulting
//! Gromov–Hausdorff bounds.

pub mod circle;
pub mod error;
pub mod fejer_riesz;
pub mod fuzzy_sphere;
pub mod linalg;
pub mod metric;
pub mod quadrature;
pub mod selftest;

pub use circle::{FourierPoly, ToeplitzElement};
pub use error::{Error, Result};
pub use fejer_riesz::FRElement;
pub use fuzzy_sphere::{FuzzyOperator, SphereFunction, SpherePoint, Su2Rep};
pub use linalg::CMatrix;
pub use metric::{connes_distance, DistanceResult, DistanceSolver, Element, SolverOptions, State, System, SystemKind};
