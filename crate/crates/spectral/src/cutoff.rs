//! The standard smooth bump used to localize deviations before projecting.
//!
//! ```text
//! φ̄(s) = f(2 − |s|) / (f(2 − |s|) + f(|s| − 1)),   f(t) = e^{-1/t} (t > 0), else 0,
//! ```
//!
//! so φ̄ ≡ 1 on |s| ≤ 1, φ̄ ≡ 0 on |s| ≥ 2, and both transition factors are
//! C^∞. Derivatives are evaluated in closed form; that keeps the supports of
//! the commutator error terms Ẽ₂, Ẽ₃ exactly inside ℓ ≤ |y| ≤ 2ℓ instead of
//! smearing them by a stencil width.

use crate::SpectralError;

/// φ(y) = φ̄(y/ℓ) with analytic first and second derivatives.
#[derive(Debug, Clone, Copy)]
pub struct Cutoff {
    ell: f64,
}

impl Cutoff {
    pub fn new(ell: f64) -> Result<Self, SpectralError> {
        if !(ell.is_finite() && ell > 0.0) {
            return Err(SpectralError::BadCutoffScale(ell));
        }
        Ok(Cutoff { ell })
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn value(&self, y: f64) -> f64 {
        bump(y.abs() / self.ell).0
    }

    /// (φ, φ_y, φ_yy) at y.
    pub fn with_derivatives(&self, y: f64) -> (f64, f64, f64) {
        let s = y / self.ell;
        let (b, bt, btt) = bump(s.abs());
        let sign = if s < 0.0 { -1.0 } else { 1.0 };
        (b, sign * bt / self.ell, btt / (self.ell * self.ell))
    }
}

/// (φ̄, φ̄′, φ̄″) as functions of t = |s| ≥ 0.
fn bump(t: f64) -> (f64, f64, f64) {
    if t <= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    if t >= 2.0 {
        return (0.0, 0.0, 0.0);
    }
    let (a, a1, a2) = mollifier(2.0 - t);
    let (b, b1, b2) = mollifier(t - 1.0);
    // Chain rule: d/dt f(2−t) = −f′(2−t), d/dt f(t−1) = +f′(t−1).
    let (a1, b1) = (-a1, b1);
    let sum = a + b;
    let num = a1 * b - a * b1;
    let num_t = a2 * b - a * b2; // the a1·b1 cross terms cancel
    let phi = a / sum;
    let phi_t = num / (sum * sum);
    let phi_tt = (num_t * sum - 2.0 * num * (a1 + b1)) / (sum * sum * sum);
    (phi, phi_t, phi_tt)
}

/// (f, f′, f″) for f(t) = e^{-1/t} on t > 0.
fn mollifier(t: f64) -> (f64, f64, f64) {
    let f = (-1.0 / t).exp();
    let f1 = f / (t * t);
    let f2 = f * (1.0 - 2.0 * t) / (t * t * t * t);
    (f, f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn plateau_and_support() {
        let c = Cutoff::new(5.0).unwrap();
        assert_eq!(c.value(0.0), 1.0);
        assert_eq!(c.value(4.999), 1.0);
        assert_eq!(c.value(-3.0), 1.0);
        assert_eq!(c.value(10.0), 0.0);
        assert_eq!(c.value(-12.0), 0.0);
        let mid = c.value(7.5);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn symmetric_and_monotone_on_the_shoulder() {
        let c = Cutoff::new(1.0).unwrap();
        let mut prev = 1.0;
        for k in 0..=100 {
            let t = 1.0 + k as f64 / 100.0;
            let v = c.value(t);
            assert!(v <= prev + 1e-15, "bump must decay, rose at {t}");
            assert_relative_eq!(c.value(-t), v, epsilon = 1e-15);
            prev = v;
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let c = Cutoff::new(3.0).unwrap();
        let h = 1e-5;
        for &y in &[3.4, 4.0, 4.7, 5.5, -3.7, -5.2] {
            let (_, dy, dyy) = c.with_derivatives(y);
            let fd1 = (c.value(y + h) - c.value(y - h)) / (2.0 * h);
            let fd2 = (c.value(y + h) - 2.0 * c.value(y) + c.value(y - h)) / (h * h);
            assert_relative_eq!(dy, fd1, epsilon = 1e-6, max_relative = 1e-5);
            assert_relative_eq!(dyy, fd2, epsilon = 1e-4, max_relative = 1e-4);
        }
    }

    #[test]
    fn derivative_support_is_the_annulus() {
        let c = Cutoff::new(2.0).unwrap();
        for &y in &[0.0, 1.0, 1.999, 4.001, 6.0] {
            let (_, dy, dyy) = c.with_derivatives(y);
            assert_eq!(dy, 0.0, "φ_y must vanish off the annulus at {y}");
            assert_eq!(dyy, 0.0);
        }
        let (_, dy, _) = c.with_derivatives(3.0);
        assert!(dy < 0.0);
    }

    #[test]
    fn scaled_derivative_bound() {
        // ℓ|φ_y| + |y φ_y| + ℓ²|φ_yy| stays bounded by one constant for all ℓ
        // — the bound that makes the commutator terms uniformly small.
        for &ell in &[0.5, 1.0, 3.7, 10.0, 50.0] {
            let c = Cutoff::new(ell).unwrap();
            let mut worst = 0.0_f64;
            for k in 0..=400 {
                let y = ell * (1.0 + k as f64 / 400.0);
                let (_, dy, dyy) = c.with_derivatives(y);
                worst = worst.max(ell * dy.abs() + (y * dy).abs() + ell * ell * dyy.abs());
            }
            assert!(worst < 30.0, "ℓ = {ell}: scaled bound {worst}");
        }
    }
}
