//! Leaf atlases for the shrinker foliation.
//!
//! The cap leaves Σ_a (tips on the axis at height a, inside the cylinder)
//! and the trumpet leaves Σ̃_b (asymptotic to the cones r = b·y, outside)
//! fit together with the cylinder r = √(2(n−1)) into a foliation of the
//! wedge 0 < r < b0·y, y ≥ y0.  This crate assembles sampled leaf families
//! into a queryable atlas and exposes the three properties the comparison
//! arguments lean on:
//!
//! * **calibration** — with tan φ = u_y along each leaf and Φ = ‖X‖²/4, the
//!   field e^{−Φ}ν, ν = (−sin φ, cos φ ω), satisfies
//!   div(e^{−Φ}ν) = −e^{−Φ}(H + ½ X·ν), which vanishes exactly on
//!   self-shrinkers; [`calibration_divergence`] measures the defect;
//! * **squeeze** — near the cylinder the angle obeys
//!   tan φ = (w/2ry)(r² − 2(n−1)) with w pinched into [2, 2 + K/y²];
//!   [`leaf_through`] realizes the angle field, [`Foliation::measured_squeeze`]
//!   reports the observed K;
//! * **normal variation** — V = ν·∂X_a/∂a solves the Jacobi equation
//!   ΔV − ∇Φ·∇V + (‖A‖² + ½)V = 0 with V = 1 at the tip and V > 0 on
//!   y ≥ y0; [`normal_variation`] forms V from leaf pairs and reports the
//!   Jacobi residual.

pub mod atlas;
pub mod calibration;
pub mod query;
pub mod variation;

pub use atlas::{build, default_a_grid, default_b_grid, squeeze_constant, Foliation};
pub use calibration::{calibration_divergence, CalibrationField, Region};
pub use query::{leaf_through, LeafId, NormalSample};
pub use variation::{normal_variation, supersolution_margin, NormalVariation};

use numerics_core::{Dimension, NumericsError};
use shrinker_ode::ShrinkerError;

/// Entry height 5√(n−1) below which cap leaves are allowed to cross.
pub fn default_entry_height(n: Dimension) -> f64 {
    5.0 * (n.nf() - 1.0).sqrt()
}

#[derive(Debug, thiserror::Error)]
pub enum FoliationError {
    #[error(transparent)]
    Shrinker(#[from] ShrinkerError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("{name} grid must be {constraint}")]
    BadGrid {
        name: &'static str,
        constraint: &'static str,
    },
    #[error("parameter {name} = {value} violates {constraint}")]
    BadParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("leaves {lower} and {upper} cross near y = {y}")]
    LeavesCross { lower: String, upper: String, y: f64 },
    #[error("point (y, r) = ({y}, {r}) is outside the foliated region: {reason}")]
    OutsideRegion {
        y: f64,
        r: f64,
        reason: &'static str,
    },
    #[error("normal-gap iteration failed to settle near y = {y}")]
    GapDiverged { y: f64 },
}
