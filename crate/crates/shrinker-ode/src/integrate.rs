//! Shared march for the tip-chart equation at fixed ε ≥ 0.

use numerics_core::{ode::rk4_step, Dimension};

use crate::ShrinkerError;

pub(crate) struct PsiSolution {
    /// Uniform grid 0, h, 2h, … up to the requested extent.
    pub rho: Vec<f64>,
    pub psi: Vec<f64>,
    pub psi_rho: Vec<f64>,
}

/// Right-hand side of ψ_ρρ = (1+ψ_ρ²)(½ − (n−1)ψ_ρ/ρ + ε(ρψ_ρ − ψ)).
pub(crate) fn psi_rhs(nf: f64, eps: f64, rho: f64, psi: f64, chi: f64) -> f64 {
    (1.0 + chi * chi) * (0.5 - (nf - 1.0) * chi / rho + eps * (rho * chi - psi))
}

/// Degree-4 Taylor coefficient of the regular solution at the axis:
/// ψ = ρ²/(4n) + c₄ ρ⁴ + O(ρ⁶) with c₄ = (ε/(4n) + 1/(8n³)) / (4(n+2)),
/// from matching the equation order by order.
pub(crate) fn c4(nf: f64, eps: f64) -> f64 {
    (eps / (4.0 * nf) + 1.0 / (8.0 * nf * nf * nf)) / (4.0 * (nf + 2.0))
}

/// March the regular solution from the axis out to `rho_max` with step `h`,
/// seeding the first few nodes from the Taylor polynomial.  Fails when the
/// state leaves the realm of finite doubles (e.g. when the chart leaves the
/// graph regime and ψ_ρ blows up before `rho_max`).
pub(crate) fn integrate_psi(
    n: Dimension,
    eps: f64,
    rho_max: f64,
    h: f64,
) -> Result<PsiSolution, ShrinkerError> {
    let nf = n.nf();
    let c = c4(nf, eps);
    let taylor = |rho: f64| {
        let r2 = rho * rho;
        (r2 / (4.0 * nf) + c * r2 * r2, rho / (2.0 * nf) + 4.0 * c * r2 * rho)
    };

    let count = (rho_max / h).round() as usize + 1;
    // Bridge the singular axis point with the series; 10⁻² is far inside its
    // radius of convergence while the truncation error c₆ρ⁶ is below 1e-13.
    let seed = ((1e-2 / h).ceil() as usize).clamp(2, count - 1);

    let mut rho = Vec::with_capacity(count);
    let mut psi = Vec::with_capacity(count);
    let mut psi_rho = Vec::with_capacity(count);
    for k in 0..=seed {
        let r = k as f64 * h;
        let (p, q) = taylor(r);
        rho.push(r);
        psi.push(p);
        psi_rho.push(q);
    }

    let f = |r: f64, state: &[f64; 2]| [state[1], psi_rhs(nf, eps, r, state[0], state[1])];
    let mut state = [psi[seed], psi_rho[seed]];
    for k in seed..count - 1 {
        let r = k as f64 * h;
        state = rk4_step(&f, r, &state, h);
        if !(state[0].is_finite() && state[1].is_finite()) {
            return Err(ShrinkerError::IntegrationFailure {
                context: "tip-chart march",
                at: r + h,
            });
        }
        rho.push(r + h);
        psi.push(state[0]);
        psi_rho.push(state[1]);
    }
    Ok(PsiSolution { rho, psi, psi_rho })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn taylor_seed_matches_the_equation() {
        // Residual of the degree-4 polynomial must vanish to O(ρ⁴):
        // ψ_ρρ − RHS = O(ρ⁴) iff c₄ solves the order-ρ² matching.
        for (nf, eps) in [(2.0, 0.0), (2.0, 1.0 / 800.0), (3.0, 1.0 / 3200.0)] {
            let c = c4(nf, eps);
            let at = |rho: f64| {
                let psi = rho * rho / (4.0 * nf) + c * rho.powi(4);
                let chi = rho / (2.0 * nf) + 4.0 * c * rho.powi(3);
                let lhs = 1.0 / (2.0 * nf) + 12.0 * c * rho * rho;
                lhs - psi_rhs(nf, eps, rho, psi, chi)
            };
            // O(ρ⁴) scaling: shrinking ρ by 2 shrinks the residual ~16×
            let ratio = at(0.2) / at(0.1);
            assert!((10.0..22.0).contains(&ratio), "ratio {ratio}");
            assert_abs_diff_eq!(at(0.05), 0.0, epsilon = 1e-5);
        }
    }

}
