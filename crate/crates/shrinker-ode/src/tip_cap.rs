//! Tip caps: the shrinker leaf near its axis point in blow-up coordinates.
//!
//! With the tip at height a, the substitution y = a − ψ(ρ)/a, r = ρ/a turns
//! the shrinker profile equation into the tip-chart equation with
//! ε = 1/(2a²) — exactly, not asymptotically — and the bowl is recovered as
//! ε → 0 at rate a⁻².

use numerics_core::Dimension;
use serde::Serialize;

use crate::integrate::integrate_psi;
use crate::ShrinkerError;

#[derive(Clone, Debug, Serialize)]
pub struct TipCap {
    pub n: Dimension,
    /// Tip height.
    pub a: f64,
    /// ε = 1/(2a²), the chart's perturbation parameter.
    pub epsilon: f64,
    /// Chart extent in ρ.
    pub m: f64,
    /// Uniform ρ grid on [0, M].
    pub rho: Vec<f64>,
    pub psi: Vec<f64>,
    pub psi_rho: Vec<f64>,
}

impl TipCap {
    /// Height at which the chart hands off to the graph representation:
    /// y_{Ma} = a − ψ(M, a)/a.
    pub fn y_ma(&self) -> f64 {
        self.a - self.psi.last().unwrap() / self.a
    }
}

/// Integrate the tip-chart equation for the cap of height `a` out to ρ = M.
pub fn solve_tip_cap(a: f64, m: f64, n: Dimension) -> Result<TipCap, ShrinkerError> {
    if !a.is_finite() || a < 10.0 {
        return Err(ShrinkerError::BadParameter {
            name: "a",
            value: a,
            constraint: "a >= 10",
        });
    }
    if !m.is_finite() || m < 10.0 {
        return Err(ShrinkerError::BadParameter {
            name: "M",
            value: m,
            constraint: "M >= 10",
        });
    }
    let epsilon = 1.0 / (2.0 * a * a);
    let sol = integrate_psi(n, epsilon, m, 1e-3)?;
    Ok(TipCap {
        n,
        a,
        epsilon,
        m,
        rho: sol.rho,
        psi: sol.psi,
        psi_rho: sol.psi_rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve_bowl;
    use approx::assert_abs_diff_eq;

    fn dim2() -> Dimension {
        Dimension::new(2).unwrap()
    }

    #[test]
    fn axis_conditions_hold_for_every_a() {
        for a in [10.0, 40.0, 160.0] {
            let cap = solve_tip_cap(a, 10.0, dim2()).unwrap();
            assert_eq!(cap.psi[0], 0.0);
            assert_eq!(cap.psi_rho[0], 0.0);
            // ψ_ρρ(0) = 1/(2n) independent of ε: the equation at ρ = 0 reads
            // n ψ_ρρ(0) = 1/2 exactly.
            let h = cap.rho[1];
            assert_abs_diff_eq!(cap.psi_rho[1] / h, 0.25, epsilon = 1e-5);
        }
    }

    #[test]
    fn converges_to_the_bowl_at_rate_a_squared() {
        let bowl = solve_bowl(dim2(), 10.0, 1e-3).unwrap();
        let sup_error = |a: f64| {
            let cap = solve_tip_cap(a, 10.0, dim2()).unwrap();
            cap.psi
                .iter()
                .zip(&bowl.psi)
                .map(|(&p, &q)| (p - q).abs())
                .fold(0.0, f64::max)
        };
        let e20 = sup_error(20.0);
        let e40 = sup_error(40.0);
        let e80 = sup_error(80.0);
        assert!(e20 > e40 && e40 > e80);
        // O(a⁻²) convergence: doubling a should quarter the gap, with slack
        // for the o(a⁻²) remainder.
        for ratio in [e40 / e20, e80 / e40] {
            assert!((0.2..0.35).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn handoff_height_is_below_the_tip() {
        let cap = solve_tip_cap(40.0, 30.0, dim2()).unwrap();
        let y_ma = cap.y_ma();
        assert!(y_ma < 40.0);
        // ψ(30) ≈ 30²/4 − 2 ln 30 + C0; the handoff sits a few units down.
        assert!((30.0..40.0).contains(&y_ma), "y_Ma = {y_ma}");
    }

    #[test]
    fn chart_breakdown_is_an_integration_failure() {
        // For a = 20 the leaf's radius never reaches 30/a; marching the chart
        // to ρ = 30 exits the graph regime and ψ_ρ blows up.
        assert!(matches!(
            solve_tip_cap(20.0, 30.0, dim2()),
            Err(ShrinkerError::IntegrationFailure { .. })
        ));
    }

    #[test]
    fn rejects_small_parameters() {
        assert!(solve_tip_cap(5.0, 30.0, dim2()).is_err());
        assert!(solve_tip_cap(40.0, 5.0, dim2()).is_err());
    }
}
