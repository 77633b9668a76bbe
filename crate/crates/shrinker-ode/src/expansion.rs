//! Comparison of cap leaves against their two limiting expansions.
//!
//! On bounded intervals a cap approaches the cylinder with a quadratic
//! correction,
//!
//!   u_a(y) = √(2(n−1)) (1 − (y² − 2)/(2a²)) + o(a⁻²),
//!
//! while at the outer scale y ~ a it follows the ellipse
//! u_a(y) = √(2(n−1)(1 − (y/a)²)) + o(1).

use numerics_core::Dimension;
use serde::Serialize;

use crate::leaf::{LeafKind, ShrinkerLeaf};
use crate::ShrinkerError;

/// Cylinder-with-correction model valid on bounded y-intervals.
pub fn inner_expansion(n: Dimension, a: f64, y: f64) -> f64 {
    n.cylinder_radius() * (1.0 - (y * y - 2.0) / (2.0 * a * a))
}

/// Elliptical outer model valid on the scale of the whole leaf.
pub fn outer_expansion(n: Dimension, a: f64, y: f64) -> f64 {
    n.cylinder_radius() * (1.0 - (y / a) * (y / a)).max(0.0).sqrt()
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionFit {
    /// Tip height of the fitted leaf.
    pub a: f64,
    /// Inner window the quadratic model was compared on.
    pub window: (f64, f64),
    /// Least-squares c in u ≈ √(2(n−1))(1 − c(y² − 2)); the expansion
    /// predicts c = 1/(2a²).
    pub inner_coefficient: f64,
    /// sup |u − inner model| over the window.
    pub inner_residual: f64,
    /// sup |u − outer model| over the whole leaf.
    pub outer_residual: f64,
    /// Filled in from an a-sweep by [`decay_estimate`].
    pub decay_exponent: Option<f64>,
}

pub fn fit_expansions(
    leaf: &ShrinkerLeaf,
    inner_window: (f64, f64),
) -> Result<ExpansionFit, ShrinkerError> {
    let a = match leaf.kind {
        LeafKind::Cap { a } if a >= 20.0 => a,
        LeafKind::Cap { a } => {
            return Err(ShrinkerError::BadParameter {
                name: "a",
                value: a,
                constraint: "a >= 20 for expansion fits",
            })
        }
        LeafKind::Trumpet { b } => {
            return Err(ShrinkerError::BadParameter {
                name: "leaf",
                value: b,
                constraint: "expansions describe cap leaves",
            })
        }
    };
    let (lo, hi) = inner_window;
    if !(0.0 <= lo && lo < hi && hi <= 5.0) {
        return Err(ShrinkerError::BadParameter {
            name: "inner_window",
            value: hi,
            constraint: "0 <= lo < hi <= 5",
        });
    }

    let n = leaf.n;
    let radius = n.cylinder_radius();
    let mut inner_residual: f64 = 0.0;
    let mut outer_residual: f64 = 0.0;
    // Least squares for c: minimize Σ (u − R + R c (y²−2))².
    let mut num = 0.0;
    let mut den = 0.0;
    for (&yi, &ui) in leaf.y.iter().zip(&leaf.u) {
        outer_residual = outer_residual.max((ui - outer_expansion(n, a, yi)).abs());
        if (lo..=hi).contains(&yi) {
            inner_residual = inner_residual.max((ui - inner_expansion(n, a, yi)).abs());
            let basis = yi * yi - 2.0;
            num += (radius - ui) * basis;
            den += radius * basis * basis;
        }
    }
    if den == 0.0 {
        return Err(ShrinkerError::BadParameter {
            name: "inner_window",
            value: lo,
            constraint: "window must contain leaf samples",
        });
    }

    Ok(ExpansionFit {
        a,
        window: inner_window,
        inner_coefficient: num / den,
        inner_residual,
        outer_residual,
        decay_exponent: None,
    })
}

/// Exponent p with inner residual ~ a⁻ᵖ, from the log-log slope across an
/// a-sweep.  The inner expansion corresponds to p > 2.
pub fn decay_estimate(fits: &[ExpansionFit]) -> Result<f64, ShrinkerError> {
    if fits.len() < 2 {
        return Err(ShrinkerError::BadParameter {
            name: "fits",
            value: fits.len() as f64,
            constraint: "decay estimate needs at least two fits",
        });
    }
    let m = fits.len() as f64;
    let xs: Vec<f64> = fits.iter().map(|f| f.a.ln()).collect();
    let ys: Vec<f64> = fits.iter().map(|f| f.inner_residual.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let var: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    Ok(-cov / var)
}
