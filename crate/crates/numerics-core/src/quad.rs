//! Quadrature against the Gaussian weight e^{-y²/4}.
//!
//! All spectral inner products and Huisken-type functionals in the workspace
//! reduce to one-dimensional integrals of smooth integrands against this
//! weight. Composite Simpson on the uniform grid is accurate to O(h⁴) and,
//! because its pair-blocks are local, windowed integrals snapped to
//! even-interval boundaries satisfy ∫₀ᴸ + ∫ᴸ²ᴸ = ∫₀²ᴸ with no splitting
//! error beyond roundoff: both sides sum exactly the same pair-blocks.

use crate::error::NumericsError;
use crate::grid::Grid;

/// e^{-y²/4}, the weight of the Gaussian measure all inner products use.
#[inline]
pub fn gaussian_weight(y: f64) -> f64 {
    (-0.25 * y * y).exp()
}

/// Composite Simpson over uniformly spaced samples (odd length).
pub fn simpson(values: &[f64], spacing: f64) -> Result<f64, NumericsError> {
    if values.len() < 3 || values.len() % 2 == 0 {
        return Err(NumericsError::SimpsonParity(values.len()));
    }
    let mut acc = 0.0;
    for k in (0..values.len() - 2).step_by(2) {
        acc += values[k] + 4.0 * values[k + 1] + values[k + 2];
    }
    Ok(acc * spacing / 3.0)
}

/// Simpson restricted to the node window [lo, hi]; hi − lo must be even.
pub fn simpson_window(
    values: &[f64],
    spacing: f64,
    lo: usize,
    hi: usize,
) -> Result<f64, NumericsError> {
    if lo >= hi || hi >= values.len() || (hi - lo) % 2 != 0 {
        return Err(NumericsError::BadWindow { lo, hi });
    }
    simpson(&values[lo..=hi], spacing)
}

/// ⟨f, g⟩ = ∫ f g e^{-y²/4} dy over the full grid.
pub fn weighted_inner(f: &[f64], g: &[f64], grid: &Grid) -> Result<f64, NumericsError> {
    if f.len() != grid.count() {
        return Err(NumericsError::LengthMismatch {
            expected: grid.count(),
            got: f.len(),
        });
    }
    if g.len() != grid.count() {
        return Err(NumericsError::LengthMismatch {
            expected: grid.count(),
            got: g.len(),
        });
    }
    let integrand: Vec<f64> = (0..grid.count())
        .map(|i| f[i] * g[i] * gaussian_weight(grid.node(i)))
        .collect();
    simpson(&integrand, grid.spacing())
}

/// ‖f‖ = ⟨f, f⟩^{1/2} in the Gaussian-weighted L².
pub fn weighted_norm(f: &[f64], grid: &Grid) -> Result<f64, NumericsError> {
    Ok(weighted_inner(f, f, grid)?.sqrt())
}
