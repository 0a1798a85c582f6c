//! States on the truncated systems, the Connes distance between them, and
//! the comparison with the limit metric on the circle.

mod circle_limit;
mod oracle;
mod solver;
mod state;
mod system;

pub use circle_limit::{
    circle_wasserstein, compressed_state_measure, curve_point, distortion_estimate, exact_circle_distance,
    gh_upper_bound, sandwich_check, sandwich_check_with_margin, toeplitz_distortion_sample, CurvePoint, DistortionPair,
    CIRCLE_DISCRETIZATION, SANDWICH_MARGIN,
};
pub use oracle::distance_oracle;
pub use solver::{connes_distance, DistanceResult, DistanceSolver, SolverOptions};
pub use state::{pullback_compress, state_pullback_symbol, Element, State, SystemKind};
pub use system::System;
