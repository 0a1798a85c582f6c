use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circle::ToeplitzElement;
use crate::error::Result;
use crate::fejer_riesz::FRElement;
use crate::fuzzy_sphere::FuzzyOperator;
use crate::linalg::CMatrix;

use super::state::{Element, State};
use super::system::System;

/// Independent lower bound on `d(φ, ψ)`: the best `|φ(x) - ψ(x)|` over
/// `samples` random Hermitian elements rescaled to `‖[D, x]‖ = 1`.
///
/// Works directly with the module-level elements and seminorms rather than
/// the solver's coordinates, so it cross-checks the solver's setup.
pub fn distance_oracle(system: &System, phi: &State, psi: &State, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = system.n();
    let mut best: f64 = 0.0;
    for _ in 0..samples {
        let x = match system {
            System::Toeplitz { .. } => Element::Toeplitz(ToeplitzElement::random_hermitian(&mut rng, n)),
            System::FejerRiesz { .. } => Element::FejerRiesz(FRElement::random_hermitian(&mut rng, n)),
            System::Fuzzy(_) => Element::Fuzzy(FuzzyOperator::new(CMatrix::random_hermitian(&mut rng, n))),
        };
        let seminorm = system.element_seminorm(&x)?;
        if seminorm <= 0.0 {
            continue;
        }
        let gap = (phi.eval(&x)? - psi.eval(&x)?).norm() / seminorm;
        best = best.max(gap);
    }
    Ok(best)
}
