//! A weighted Poincaré inequality on [0, ℓ].
//!
//! For any C¹ function f,
//!
//! ```text
//!     ∫₀^ℓ f_y² e^{−y²/4} dy + ¼ ∫₀^ℓ f² e^{−y²/4} dy
//!         ≥ ¼ ℓ e^{−ℓ²/4} f(ℓ)² + (1/16) ∫₀^ℓ y² f² e^{−y²/4} dy,
//! ```
//!
//! an identity-with-remainder rather than a compactness statement: the
//! difference of the two sides equals ∫₀^ℓ (f_y − yf/4)² e^{−y²/4} dy, as
//! integrating −½∫yf f_y e by parts shows.  The slack therefore vanishes only
//! along f ∝ e^{y²/8}, and is strictly positive for polynomials.

use numerics_core::{diff, gaussian_weight, simpson, DiffOrder, NumericsError};
use serde::Serialize;

use crate::HuiskenError;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PoincareCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// lhs − rhs; nonnegative up to quadrature error for every C¹ input.
    pub slack: f64,
}

/// Evaluate both sides for f sampled uniformly on [0, ℓ].
///
/// `f_y` supplies the analytic derivative when available; otherwise centered
/// differences of the samples are used, whose one-sided endpoint rows lose an
/// order and dominate the quadrature noise.
pub fn weighted_poincare_check(
    f: &[f64],
    f_y: Option<&[f64]>,
    ell: f64,
) -> Result<PoincareCheck, HuiskenError> {
    if !(ell.is_finite() && ell > 0.0) {
        return Err(NumericsError::BadGridLength(ell).into());
    }
    let m = f.len();
    if let Some(d) = f_y {
        if d.len() != m {
            return Err(HuiskenError::LengthMismatch {
                expected: m,
                got: d.len(),
            });
        }
    }
    let h = ell / (m - 1).max(1) as f64;
    let fy = match f_y {
        Some(d) => d.to_vec(),
        None => diff(f, h, DiffOrder::First)?,
    };

    let weighted = |g: &dyn Fn(usize, f64) -> f64| -> Result<f64, HuiskenError> {
        let vals: Vec<f64> = (0..m)
            .map(|i| {
                let y = i as f64 * h;
                g(i, y) * gaussian_weight(y)
            })
            .collect();
        Ok(simpson(&vals, h)?)
    };

    let grad = weighted(&|i, _| fy[i] * fy[i])?;
    let mass = weighted(&|i, _| f[i] * f[i])?;
    let moment = weighted(&|i, y| y * y * f[i] * f[i])?;

    let lhs = grad + 0.25 * mass;
    let rhs = 0.25 * ell * gaussian_weight(ell) * f[m - 1] * f[m - 1] + moment / 16.0;
    Ok(PoincareCheck {
        lhs,
        rhs,
        slack: lhs - rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const ERF_1: f64 = 0.842_700_792_949_714_9;

    fn samples(ell: f64, m: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..m).map(|i| f(i as f64 * ell / (m - 1) as f64)).collect()
    }

    #[test]
    fn zero_function_has_zero_slack() {
        let f = vec![0.0; 201];
        let check = weighted_poincare_check(&f, None, 3.0).unwrap();
        assert_eq!(check.lhs, 0.0);
        assert_eq!(check.rhs, 0.0);
        assert_eq!(check.slack, 0.0);
    }

    #[test]
    fn constant_one_on_length_two() {
        // Closed forms: lhs = ¼√π·erf(1), rhs = ½e^{-1} + (2√π·erf(1) − 4e^{-1})/16.
        let f = vec![1.0; 801];
        let fy = vec![0.0; 801];
        let check = weighted_poincare_check(&f, Some(&fy), 2.0).unwrap();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let lhs = 0.25 * sqrt_pi * ERF_1;
        let rhs = 0.5 * (-1.0_f64).exp()
            + (2.0 * sqrt_pi * ERF_1 - 4.0 * (-1.0_f64).exp()) / 16.0;
        assert_abs_diff_eq!(check.lhs, lhs, epsilon = 1e-9);
        assert_abs_diff_eq!(check.rhs, rhs, epsilon = 1e-9);
        assert!(check.slack > 0.09);
    }

    #[test]
    fn slack_matches_the_remainder_integral() {
        let ell = 3.0;
        let m = 1601;
        let f = samples(ell, m, |y| (1.2 * y).sin() + 0.5 * y);
        let fy = samples(ell, m, |y| 1.2 * (1.2 * y).cos() + 0.5);
        let check = weighted_poincare_check(&f, Some(&fy), ell).unwrap();

        let h = ell / (m - 1) as f64;
        let rem: Vec<f64> = (0..m)
            .map(|i| {
                let y = i as f64 * h;
                let d = fy[i] - y * f[i] / 4.0;
                d * d * gaussian_weight(y)
            })
            .collect();
        let remainder = simpson(&rem, h).unwrap();
        assert_abs_diff_eq!(check.slack, remainder, epsilon = 1e-10);
        assert!(check.slack > 0.0);
    }

    #[test]
    fn slack_nonnegative_over_random_quintics() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = 1601;
        for _ in 0..1000 {
            let c: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let ell = rng.gen_range(0.5..4.0);
            let f = samples(ell, m, |y| c.iter().rev().fold(0.0, |a, &ck| a * y + ck));
            let fy = samples(ell, m, |y| {
                (1..6).rev().fold(0.0, |a, k| a * y + k as f64 * c[k])
            });
            let check = weighted_poincare_check(&f, Some(&fy), ell).unwrap();
            assert!(check.slack >= -1e-8, "slack {} at ℓ = {ell}", check.slack);
        }
    }

    #[test]
    fn sampled_derivative_agrees_with_analytic() {
        let ell = 2.5;
        let m = 2001;
        let f = samples(ell, m, |y| (y * y / 8.0).exp());
        let fy = samples(ell, m, |y| y / 4.0 * (y * y / 8.0).exp());
        // f ∝ e^{y²/8} is the equality case; both paths must sit at zero
        // slack up to their respective discretization errors.
        let exact = weighted_poincare_check(&f, Some(&fy), ell).unwrap();
        let sampled = weighted_poincare_check(&f, None, ell).unwrap();
        assert_abs_diff_eq!(exact.slack, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(sampled.slack, 0.0, epsilon = 1e-6);
        assert!(sampled.slack >= -1e-8);
    }

    #[test]
    fn rejects_bad_length_and_ragged_derivative() {
        assert!(weighted_poincare_check(&[1.0; 11], None, -1.0).is_err());
        let err = weighted_poincare_check(&[1.0; 11], Some(&[0.0; 9]), 1.0).unwrap_err();
        assert!(matches!(err, HuiskenError::LengthMismatch { .. }));
    }
}
