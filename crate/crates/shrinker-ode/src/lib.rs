//! The self-shrinker ODE family behind the foliation.
//!
//! Rotationally symmetric self-shrinkers with profile `r = u(y)` satisfy
//!
//! ```text
//!     u_yy/(1+u_y²) − (y/2) u_y + u/2 − (n−1)/u = 0,
//! ```
//!
//! whose solutions of interest here are the cap leaves `Σ_a` (tip on the
//! axis at height `a`, graph down to some `y_*(a)`), the convex
//! cone-asymptotic trumpets `Σ̃_b`, and — in the blow-up limit at the tip —
//! the translating bowl soliton `Ψ`.
//!
//! Near the axis the graph equation degenerates, so caps start in the tip
//! chart: write `y = a − ψ(ρ)/a`, `r = ρ/a`; the profile equation becomes
//!
//! ```text
//!     ψ_ρρ = (1 + ψ_ρ²) ( ½ − (n−1) ψ_ρ/ρ + ε (ρ ψ_ρ − ψ) ),    ε = 1/(2a²),
//! ```
//!
//! exactly, with the bowl as the ε = 0 member.  The regular solution through
//! the axis (the fast unstable manifold of the singular point) is pinned by
//! the Taylor data ψ = ρ²/(4n) + c₄ρ⁴ + …, which [`solve_bowl`] and
//! [`solve_tip_cap`] use to bridge the singularity before handing off to a
//! Runge–Kutta march.
//!
//! Two diagnostics from the comparison arguments are provided:
//! [`w_diagnostic`] for w = y·d/dy ln(2(n−1) − u²), whose bounds (w > 2 on
//! caps, tip limit 2n/(n−1), barrier 2 + K/(a²−y²) + K/y²) pin the leaves
//! between cylinder and sphere scales, and [`fit_expansions`] for the inner
//! (1 − (y²−2)/(2a²)) and outer √(1−y²/a²) asymptotics in the leaf height.

pub mod bowl;
pub mod expansion;
pub mod leaf;
pub mod tip_cap;
pub mod w_diag;

mod integrate;

pub use bowl::{solve_bowl, BowlProfile};
pub use expansion::{decay_estimate, fit_expansions, inner_expansion, outer_expansion, ExpansionFit};
pub use leaf::{shoot_leaf, shrinker_residual, solve_trumpet, LeafKind, ShrinkerLeaf, B0};
pub use tip_cap::{solve_tip_cap, TipCap};
pub use w_diag::{w_diagnostic, WDiagnostic};

use numerics_core::NumericsError;

#[derive(Debug, thiserror::Error)]
pub enum ShrinkerError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("parameter {name} = {value} violates {constraint}")]
    BadParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("integration failure in {context} near coordinate {at}")]
    IntegrationFailure { context: &'static str, at: f64 },
}
