//! Shared numerical kernels for rotationally symmetric hypersurface geometry.
//!
//! Everything downstream (shrinker ODEs, foliations, curve flows, spectral
//! projections, Huisken functionals) works with hypersurfaces in R^{n+1} that
//! are invariant under O(1) × O(n): a profile curve in the (y, r) half-plane,
//! rotated over an S^{n-1} factor. This crate owns the two sample
//! representations of such a curve — the graph chart [`RadialProfile`] with
//! r = u(y) on a uniform grid, and the arclength chart [`ArcCurve`] that stays
//! regular at the axis — together with the quadrature, differentiation, and
//! interpolation routines the rest of the workspace builds on.
//!
//! The Gaussian weight e^{-y²/4} and the model radii √(2(n−1)) (cylinder) and
//! √(2n) (sphere) are fixed here once so every crate agrees on normalization.

pub mod curve;
pub mod diff;
pub mod dimension;
pub mod error;
pub mod grid;
pub mod interp;
pub mod io;
pub mod ode;
pub mod profile;
pub mod quad;

pub use curve::ArcCurve;
pub use diff::{d1_nonuniform, d2_nonuniform, diff, DiffOrder};
pub use dimension::Dimension;
pub use error::NumericsError;
pub use grid::Grid;
pub use interp::{lagrange_cubic, MonotoneCubic};
pub use profile::{ConcavityReport, RadialProfile};
pub use quad::{gaussian_weight, simpson, simpson_window, weighted_inner, weighted_norm};
