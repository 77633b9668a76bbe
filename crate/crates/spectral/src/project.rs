//! Spectral splitting of a localized deviation.

use numerics_core::{weighted_inner, weighted_norm, Grid};
use serde::Serialize;

use crate::cutoff::Cutoff;
use crate::hermite::HermiteBasis;
use crate::SpectralError;

/// v̄ = φ v with the bump at scale ℓ: untouched on |y| ≤ ℓ, zero beyond 2ℓ.
pub fn truncate(v: &[f64], grid: &Grid, ell: f64) -> Result<Vec<f64>, SpectralError> {
    if v.len() != grid.count() {
        return Err(SpectralError::Numerics(
            numerics_core::NumericsError::LengthMismatch {
                expected: grid.count(),
                got: v.len(),
            },
        ));
    }
    let cutoff = Cutoff::new(ell)?;
    Ok((0..v.len())
        .map(|i| v[i] * cutoff.value(grid.node(i)))
        .collect())
}

/// Sizes of the unstable / neutral / stable parts of a localized deviation.
///
/// `alpha` is the signed neutral coefficient ⟨v̄, ψ₂⟩/‖ψ₂‖²; the three `v_*`
/// fields are the norms of the ψ₀ projection, the ψ₂ projection, and the
/// orthogonal remainder, so v_plus² + v_zero² + v_minus² = ‖v̄‖².
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectralSplit {
    pub alpha: f64,
    pub v_plus: f64,
    pub v_zero: f64,
    pub v_minus: f64,
    pub norm: f64,
}

pub fn project(
    v_bar: &[f64],
    grid: &Grid,
    basis: &HermiteBasis,
) -> Result<SpectralSplit, SpectralError> {
    if basis.len() < 2 {
        return Err(SpectralError::BasisTooSmall);
    }
    let psi0 = basis.mode(0).sample(grid);
    let psi2 = basis.mode(1).sample(grid);
    let c0 = weighted_inner(v_bar, &psi0, grid)? / basis.mode(0).norm_sq;
    let alpha = weighted_inner(v_bar, &psi2, grid)? / basis.mode(1).norm_sq;
    let norm = weighted_norm(v_bar, grid)?;
    let v_plus = c0.abs() * basis.mode(0).norm_sq.sqrt();
    let v_zero = alpha.abs() * basis.mode(1).norm_sq.sqrt();
    let rem_sq = norm * norm - v_plus * v_plus - v_zero * v_zero;
    // Bessel guarantees rem_sq ≥ 0 for exact integrals; quadrature may dip
    // a hair below zero. Anything worse means inconsistent inputs.
    let tol = 1e-8 * norm * norm + 1e-30;
    if rem_sq < -tol {
        return Err(SpectralError::NegativeRemainder { value: rem_sq });
    }
    Ok(SpectralSplit {
        alpha,
        v_plus,
        v_zero,
        v_minus: rem_sq.max(0.0).sqrt(),
        norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid() -> Grid {
        Grid::new(20.0, 4001).unwrap()
    }

    #[test]
    fn recovers_synthetic_mode_mix() {
        let g = grid();
        let b = HermiteBasis::new(3);
        let (c0, alpha, c4) = (0.3, -0.02, 0.005);
        let v: Vec<f64> = g.sample(|y| {
            c0 * b.mode(0).eval(y) + alpha * b.mode(1).eval(y) + c4 * b.mode(2).eval(y)
        });
        let split = project(&v, &g, &b).unwrap();
        assert_relative_eq!(split.alpha, alpha, max_relative = 1e-8);
        assert_relative_eq!(
            split.v_plus,
            c0 * b.mode(0).norm_sq.sqrt(),
            max_relative = 1e-8
        );
        assert_relative_eq!(
            split.v_zero,
            alpha.abs() * b.mode(1).norm_sq.sqrt(),
            max_relative = 1e-8
        );
        assert_relative_eq!(
            split.v_minus,
            c4 * b.mode(2).norm_sq.sqrt(),
            max_relative = 1e-6
        );
    }

    #[test]
    fn alpha_keeps_its_sign() {
        let g = grid();
        let b = HermiteBasis::new(1);
        for sign in [-1.0, 1.0] {
            let v: Vec<f64> = g.sample(|y| sign * 0.01 * (y * y - 2.0));
            let split = project(&v, &g, &b).unwrap();
            assert_relative_eq!(split.alpha, sign * 0.01, max_relative = 1e-9);
        }
    }

    #[test]
    fn truncation_localizes() {
        let g = grid();
        let v = vec![1.0; g.count()];
        let vb = truncate(&v, &g, 5.0).unwrap();
        for i in 0..g.count() {
            let y = g.node(i).abs();
            if y <= 5.0 {
                assert_eq!(vb[i], 1.0);
            } else if y >= 10.0 {
                assert_eq!(vb[i], 0.0);
            }
        }
    }

    #[test]
    fn split_is_pythagorean() {
        let g = grid();
        let b = HermiteBasis::new(2);
        let v: Vec<f64> = g.sample(|y| 0.05 * (y * y - 2.0) + 0.01 * (0.3 * y).cos());
        let vb = truncate(&v, &g, 6.0).unwrap();
        let s = project(&vb, &g, &b).unwrap();
        let total = (s.v_plus.powi(2) + s.v_zero.powi(2) + s.v_minus.powi(2)).sqrt();
        assert_relative_eq!(total, s.norm, max_relative = 1e-12);
    }
}
