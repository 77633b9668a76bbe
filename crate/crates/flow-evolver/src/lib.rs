//! Mean curvature flow for rotationally symmetric hypersurfaces, driven as a
//! parametric curve flow on the generating curve.
//!
//! Two gauges of the same flow are exposed. The unrescaled flow moves every
//! point with normal speed H and shrinks closed convex surfaces to a round
//! point in finite time. The rescaled flow moves with speed H + ½⟨X, ν⟩, so
//! that the self-shrinking cylinder of radius √(2(n−1)) and the sphere of
//! radius √(2n) sit still; ancient ovals traversed backwards in the rescaled
//! time become long cylinder-like states capped off near |y| ≈ √(2|τ|).
//!
//! Each step is linearly implicit: the arclength Laplacian together with the
//! near-axis advection term is frozen at the current state and inverted by two
//! tridiagonal solves, while the bounded reaction terms stay explicit. Axis
//! tips travel along the axis with the umbilic speed n·κ. The discretization
//! is chord-exact on circles and straight lines, which keeps both shrinkers
//! fixed to rounding error rather than to truncation order; see [`step`] for
//! the details and [`diagnostics`] for the per-step geometric summary.

mod diagnostics;
mod geometry;
mod run;
mod state;
mod step;

pub use diagnostics::{diagnostics, FlowDiagnostics};
pub use geometry::{convexity_margin, mean_curvature, shrinker_speed, surface_area};
pub use run::{run, run_rescaled, run_unrescaled, FlowRun, RunOptions};
pub use state::FlowState;
pub use step::{stability_bound, step_rescaled, step_unrescaled, Gauge};

use numerics_core::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),

    /// The proposed step would have produced an invalid curve (or exceeded
    /// the transport bound on the step size). Retry with a smaller step.
    #[error("step rejected: {why}")]
    StepRejected { why: String },

    /// The generating curve bends the wrong way by more than the slack
    /// allowed for discretization wiggle.
    #[error("state is not convex (curvature margin {margin:.3e})")]
    NotConvex { margin: f64 },

    #[error("{name} = {value} is outside {constraint}")]
    BadParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
}
