//! Spectral analysis of cylinder deviations in the Gaussian-weighted L².
//!
//! Near the middle of an ancient oval the rescaled profile is a small graph
//! over the cylinder, u = √(2(n−1))(1 + v), and v evolves by
//!
//! ```text
//! v_τ = ℒv + E,   ℒv = v_yy − (y/2) v_y + v,
//! E   = −v²/(2(1+v)) − 2(n−1) v_y² v_yy / (1 + 2(n−1) v_y²).
//! ```
//!
//! ℒ is self-adjoint in L²(e^{-y²/4} dy) with the even polynomial
//! eigenfunctions ψ_{2m} (eigenvalue 1 − m), so the natural coordinates for a
//! deviation are the unstable ψ₀ share, the neutral ψ₂ amplitude α, and the
//! stable remainder. This crate owns that decomposition: the basis and its
//! closed-form Gram data, the smooth cutoff that localizes v to |y| ≲ ℓ
//! before projecting, the cutoff commutator error terms, and the τ-series
//! fits that test the predicted neutral-mode dynamics α′ ≈ 4α² (for the
//! orientation of ψ₂ that makes the amplitude positive).

pub mod alpha;
pub mod classify;
pub mod cutoff;
pub mod error_terms;
pub mod hermite;
pub mod project;

pub use alpha::{track_alpha, AlphaTrack};
pub use classify::{classify_modes, DominanceReport, ModeDominance};
pub use cutoff::Cutoff;
pub use error_terms::{error_terms, ErrorTerms};
pub use hermite::HermiteBasis;
pub use project::{project, truncate, SpectralSplit};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Numerics(#[from] numerics_core::NumericsError),

    #[error("need at least {min} records for a spectral series fit, got {got}")]
    TooFewRecords { min: usize, got: usize },

    #[error("neutral amplitude changes sign inside the fit window (τ = {tau})")]
    AlphaSignChange { tau: f64 },

    #[error("neutral amplitude vanishes at τ = {tau}; cannot normalize orientation")]
    AlphaVanishes { tau: f64 },

    #[error(
        "mode-removed remainder has negative square {value:?}; \
         projections are inconsistent with the norm beyond quadrature tolerance"
    )]
    NegativeRemainder { value: f64 },

    #[error("cutoff scale must be positive and finite, got {0}")]
    BadCutoffScale(f64),

    #[error("basis must contain modes 0 and 2 for a spectral split")]
    BasisTooSmall,
}
