//! Quadrature of the reduced functional in graph and parametric form.

use numerics_core::{diff, gaussian_weight, simpson_window, ArcCurve, Dimension, RadialProfile};
use serde::{Deserialize, Serialize};

use crate::HuiskenError;

/// Value of the reduced functional over a window of the axis.
///
/// Values over disjoint node-aligned windows add exactly (up to summation
/// roundoff): the composite quadrature blocks never straddle a window
/// boundary, so splitting an interval splits the sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuiskenValue {
    pub value: f64,
    /// Axis window `[lo, hi]` after snapping to grid nodes; `None` means the
    /// whole grid.
    pub window: Option<(f64, f64)>,
}

/// ℋ(u) = ∫ u^{n−1} e^{−u²/4} √(1 + u_y²) e^{−y²/4} dy over a window.
///
/// Window endpoints snap to the nearest grid nodes.  When the enclosed
/// interval count is odd the upper endpoint moves inward one node so the
/// composite rule applies; pass node-aligned windows with even interval
/// counts (as the windowed-additivity identity requires) to avoid the
/// adjustment.
pub fn huisken_graph(
    profile: &RadialProfile,
    window: Option<(f64, f64)>,
) -> Result<HuiskenValue, HuiskenError> {
    let grid = profile.grid();
    let h = grid.spacing();
    let last = grid.count() - 1;
    let values = integrand(profile)?;

    let Some((lo, hi)) = window else {
        let value = simpson_window(&values, h, 0, last)?;
        return Ok(HuiskenValue { value, window: None });
    };

    let (lo, hi) = (lo.min(hi), lo.max(hi));
    if lo < grid.node(0) - 0.5 * h || hi > grid.node(last) + 0.5 * h {
        return Err(HuiskenError::WindowOutsideDomain {
            lo,
            hi,
            half_length: grid.half_length(),
        });
    }
    let ilo = (((lo - grid.node(0)) / h).round().max(0.0) as usize).min(last);
    let mut ihi = (((hi - grid.node(0)) / h).round().max(0.0) as usize).min(last);
    if (ihi - ilo) % 2 == 1 {
        ihi -= 1;
    }
    let snapped = Some((grid.node(ilo), grid.node(ihi)));
    if ihi <= ilo {
        return Ok(HuiskenValue {
            value: 0.0,
            window: snapped,
        });
    }
    let value = simpson_window(&values, h, ilo, ihi)?;
    Ok(HuiskenValue {
        value,
        window: snapped,
    })
}

fn integrand(profile: &RadialProfile) -> Result<Vec<f64>, HuiskenError> {
    let grid = profile.grid();
    let u = profile.u();
    let uy = diff(u, grid.spacing(), numerics_core::DiffOrder::First)?;
    let m = profile.n().n() as i32 - 1;
    Ok((0..grid.count())
        .map(|i| {
            u[i].powi(m)
                * (-u[i] * u[i] / 4.0).exp()
                * uy[i].mul_add(uy[i], 1.0).sqrt()
                * gaussian_weight(grid.node(i))
        })
        .collect())
}

/// Parametric form ∫ r^{n−1} e^{−(y²+r²)/4} ds by the trapezoid rule on
/// chords.  Agrees with [`huisken_graph`] when the curve is a graph, and
/// stays usable once tips or vertical tangents leave graph coordinates.
pub fn huisken_curve(curve: &ArcCurve) -> f64 {
    let (y, r) = (curve.y(), curve.r());
    let m = curve.n().n() as i32 - 1;
    let g: Vec<f64> = (0..curve.len())
        .map(|i| r[i].powi(m) * (-(y[i] * y[i] + r[i] * r[i]) / 4.0).exp())
        .collect();
    curve
        .chord_lengths()
        .iter()
        .enumerate()
        .map(|(i, ds)| 0.5 * (g[i] + g[i + 1]) * ds)
        .sum()
}

/// Reduced value of the infinite cylinder, `(2(n−1)/e)^{(n−1)/2} · 2√π`.
///
/// The pointwise factor u^{n−1}e^{−u²/4} attains its maximum at the cylinder
/// radius, so this is the comparison threshold used by the conditional
/// estimates: for n = 2 it is √(2/e)·2√π ≈ 3.040694.
pub fn cylinder_value(n: Dimension) -> f64 {
    let m = n.nf() - 1.0;
    (2.0 * m / std::f64::consts::E).powf(m / 2.0) * 2.0 * std::f64::consts::PI.sqrt()
}

/// Reduced value of the shrinking sphere of radius √(2n):
/// `(2n)^{n/2} e^{−n/2} ∫₀^π sin^{n−1}φ dφ`, the Wallis integral evaluated
/// through Γ at integer and half-integer arguments.  For n = 2 this is
/// 8/e ≈ 2.943035.
pub fn sphere_value(n: Dimension) -> f64 {
    let nf = n.nf();
    let wallis = std::f64::consts::PI.sqrt() * gamma_half(n.n()) / gamma_half(n.n() + 1);
    (2.0 * nf).powf(nf / 2.0) * (-nf / 2.0).exp() * wallis
}

/// Γ(two_z / 2) for two_z ≥ 1: (m−1)! at integers, (2k)!√π/(4^k k!) at
/// half-integers k + ½.
fn gamma_half(two_z: u32) -> f64 {
    if two_z % 2 == 0 {
        (1..two_z / 2).map(f64::from).product()
    } else {
        let k = (two_z - 1) / 2;
        let mut val = std::f64::consts::PI.sqrt();
        for j in 1..=k {
            val *= (2.0 * f64::from(j) - 1.0) / 2.0;
        }
        val
    }
}
