//! Gaussian-density functionals for rotationally symmetric hypersurfaces.
//!
//! For a profile `r = u(y)` the reduced functional is
//!
//! ```text
//!     ℋ(u) = ∫ u^{n−1} e^{−u²/4} √(1 + u_y²) e^{−y²/4} dy,
//! ```
//!
//! the Gaussian-weighted area of the surface of revolution with every
//! dimensional prefactor dropped.  All comparisons made here are between
//! reduced values, so those constants cancel.
//!
//! Three facts about ℋ drive the diagnostics in this crate:
//!
//! * the pointwise factor `u^{n−1} e^{−u²/4}` is maximized exactly at the
//!   cylinder radius `√(2(n−1))`, so the infinite cylinder's value
//!   `(2(n−1)/e)^{(n−1)/2} · 2√π` is a natural threshold;
//! * along the rescaled flow ℋ is non-increasing, with dissipation
//!   `−∫ (H̄ + ½ X·N)² dμ̄` (inward normal), vanishing exactly on shrinkers;
//! * for surfaces trapped below the cylinder value and graphically close to
//!   the cylinder, the windowed values control each other layer by layer:
//!   gradient and outer Gaussian mass of the deviation are bounded by its
//!   inner mass ([`inner_outer_check`]).
//!
//! The weighted Poincaré inequality ([`weighted_poincare_check`]) is the
//! one-dimensional coercivity estimate behind that control.

pub mod functional;
pub mod inner_outer;
pub mod monotonicity;
pub mod poincare;

pub use functional::{cylinder_value, huisken_curve, huisken_graph, sphere_value, HuiskenValue};
pub use inner_outer::{inner_outer_check, InnerOuterReport, DELTA_0, L_0};
pub use monotonicity::{monotonicity_series, MonotonicityReport};
pub use poincare::{weighted_poincare_check, PoincareCheck};

use numerics_core::NumericsError;

#[derive(Debug, thiserror::Error)]
pub enum HuiskenError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("window [{lo}, {hi}] lies outside the grid (half-length {half_length})")]
    WindowOutsideDomain { lo: f64, hi: f64, half_length: f64 },
    #[error("functional hypothesis fails: ℋ(profile) = {h_profile} exceeds the cylinder value {h_cylinder}; the inner-outer estimate is conditional")]
    HypothesisViolated { h_profile: f64, h_cylinder: f64 },
    #[error("need at least {min} records, got {got}")]
    TooFewRecords { min: usize, got: usize },
    #[error("series lengths differ: {expected} vs {got}")]
    LengthMismatch { expected: usize, got: usize },
}
