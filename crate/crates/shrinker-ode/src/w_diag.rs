//! The collar diagnostic w = y·u_y/(u/2 − (n−1)/u).
//!
//! Writing the profile equation in terms of w = y·d/dy ln|2(n−1) − u²|
//! produces a first-order equation along each leaf,
//!
//!   y w_y = w − (½ + (n−1)/u²) w² + ½ y² (1 + u_y²)(w − 2),
//!
//! which is the workhorse for the cap and trumpet bounds: w stays above 2 on
//! the tip side of the cylinder crossing, approaches 2n/(n−1) at the tip, and
//! is pinned to 2 + O(y⁻²) along conical ends.
//!
//! w has a genuine pole where u crosses the cylinder radius √(2(n−1)), so the
//! usable window of a leaf is the contiguous run of samples, adjacent to the
//! tip (largest y), on which 2(n−1) − u² keeps one sign.

use serde::Serialize;

use numerics_core::d1_nonuniform;
use crate::leaf::ShrinkerLeaf;

/// Samples with |w| above this are too close to the pole for the
/// finite-difference residual monitor to say anything useful.
const RESIDUAL_W_CAP: f64 = 4.5;

#[derive(Clone, Debug, Serialize)]
pub struct WDiagnostic {
    /// Heights of the retained samples, ascending.
    pub y: Vec<f64>,
    pub w: Vec<f64>,
    /// Span of the retained samples.
    pub window: (f64, f64),
    /// True when the cylinder crossing forced the window to shrink.
    pub clipped: bool,
    /// max |y w_y − RHS| over interior samples with |w| ≤ 4.5, w_y by
    /// centered differences; NaN when no sample qualifies.
    pub ode_residual: f64,
    /// Richardson extrapolation of w to the tip, for cap leaves.
    pub tip_limit: Option<f64>,
}

/// Extrapolate the tip samples w(ρ) at ρ = 0.25, 0.5, 1.0 to ρ = 0.  The
/// chart solution is even in ρ, so each halving of ρ quarters the leading
/// error term and two Richardson stages leave O(ρ⁶).
fn richardson_tip(tw: [f64; 3]) -> f64 {
    let r1 = (4.0 * tw[1] - tw[2]) / 3.0;
    let r2 = (4.0 * tw[0] - tw[1]) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

pub fn w_diagnostic(leaf: &ShrinkerLeaf) -> WDiagnostic {
    let nf = leaf.n.nf();
    let cyl2 = 2.0 * (nf - 1.0);
    let last = leaf.y.len() - 1;

    let sign_at = |i: usize| (cyl2 - leaf.u[i] * leaf.u[i]) > 0.0;
    let top_sign = sign_at(last);
    let mut i_lo = last;
    while i_lo > 0 && sign_at(i_lo - 1) == top_sign && leaf.w[i_lo - 1].is_finite() {
        i_lo -= 1;
    }

    let y = leaf.y[i_lo..].to_vec();
    let w = leaf.w[i_lo..].to_vec();

    let mut ode_residual = f64::NAN;
    for i in i_lo + 1..last {
        let ws = [leaf.w[i - 1], leaf.w[i], leaf.w[i + 1]];
        if !(ws.iter().all(|v| v.abs() <= RESIDUAL_W_CAP) && leaf.u_y[i].is_finite()) {
            continue;
        }
        let ys = [leaf.y[i - 1], leaf.y[i], leaf.y[i + 1]];
        let w_y = d1_nonuniform(&ys, &ws);
        let (yi, ui, uyi, wi) = (leaf.y[i], leaf.u[i], leaf.u_y[i], leaf.w[i]);
        let rhs = wi - (0.5 + (nf - 1.0) / (ui * ui)) * wi * wi
            + 0.5 * yi * yi * (1.0 + uyi * uyi) * (wi - 2.0);
        let res = (yi * w_y - rhs).abs();
        ode_residual = if ode_residual.is_nan() {
            res
        } else {
            ode_residual.max(res)
        };
    }

    WDiagnostic {
        window: (y[0], y[y.len() - 1]),
        y,
        w,
        clipped: i_lo > 0,
        ode_residual,
        tip_limit: leaf.tip_w.map(richardson_tip),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leaf::{shoot_leaf, solve_trumpet, LeafKind};
    use numerics_core::Dimension;

    fn dim2() -> Dimension {
        Dimension::new(2).unwrap()
    }

    /// The sphere of radius 2 as the n = 2 cap with tip height a = 2:
    /// u = √(4 − y²), w = 2y²/(y² − 2), and in chart radii
    /// w(ρ) = 2(16 − ρ²)/(8 − ρ²).
    fn sphere_leaf() -> ShrinkerLeaf {
        let count = 1951;
        let mut y = Vec::with_capacity(count);
        let mut u = Vec::with_capacity(count);
        let mut u_y = Vec::with_capacity(count);
        let mut w = Vec::with_capacity(count);
        for k in 0..count {
            let yi: f64 = -1.9 + 0.002 * k as f64;
            let ui = (4.0 - yi * yi).max(0.0).sqrt();
            y.push(yi);
            u.push(ui);
            u_y.push(-yi / ui);
            w.push(2.0 * yi * yi / (yi * yi - 2.0));
        }
        let w_chart = |rho: f64| 2.0 * (16.0 - rho * rho) / (8.0 - rho * rho);
        ShrinkerLeaf {
            kind: LeafKind::Cap { a: 2.0 },
            n: dim2(),
            y,
            u,
            u_y,
            w,
            y_star: -1.9,
            y_ma: None,
            tip_w: Some([w_chart(0.25), w_chart(0.5), w_chart(1.0)]),
            sup_residual: 0.0,
        }
    }

    #[test]
    fn sphere_is_clipped_at_the_crossing_with_tip_limit_four() {
        let diag = w_diagnostic(&sphere_leaf());
        assert!(diag.clipped);
        assert_eq!(diag.window.1, 2.0);
        let crossing = 2.0_f64.sqrt();
        assert!(diag.window.0 > crossing && diag.window.0 < crossing + 0.004);
        assert!(diag.w.iter().all(|&v| v > 2.0));
        let tip = diag.tip_limit.unwrap();
        assert!((tip - 4.0).abs() < 1e-3, "tip limit {tip}");
        assert!(diag.ode_residual < 1e-3, "residual {}", diag.ode_residual);
    }

    #[test]
    fn cap_tip_limit_and_upper_barrier() {
        let a = 40.0;
        let leaf = shoot_leaf(a, dim2(), 0.0).unwrap();
        let diag = w_diagnostic(&leaf);

        let tip = diag.tip_limit.unwrap();
        assert!((tip - 4.0).abs() < 1e-3, "tip limit {tip}");
        assert!(diag.clipped);
        assert!(diag.w.iter().all(|&v| v > 2.0));
        assert!(diag.ode_residual < 0.05, "residual {}", diag.ode_residual);

        // w ≤ 2 + K/(a²−y²) + K/y² with K = 20(n−1) on [y0, y_Ma].
        let (k, y0) = (20.0, 5.0);
        let y_ma = leaf.y_ma.unwrap();
        let mut checked = 0usize;
        for (&yi, &wi) in diag.y.iter().zip(&diag.w) {
            if yi >= y0 && yi <= y_ma {
                let barrier = 2.0 + k / (a * a - yi * yi) + k / (yi * yi);
                assert!(wi <= barrier + 1e-9, "w({yi}) = {wi} over {barrier}");
                checked += 1;
            }
        }
        assert!(checked > 1000, "only {checked} samples in the barrier band");
    }

    #[test]
    fn trumpet_clips_at_its_cylinder_crossing() {
        // A trumpet only exceeds the cylinder radius beyond a crossing
        // height y₁ < 2√2, so its w window is clipped there and the entire
        // conical band [2√2, Y] survives, with w > 2 throughout.
        let leaf = solve_trumpet(0.5, dim2(), (0.0, 120.0)).unwrap();
        let diag = w_diagnostic(&leaf);
        assert!(diag.clipped);
        assert_eq!(diag.window.1, 120.0);
        assert!(diag.window.0 < 2.0 * 2.0_f64.sqrt(), "window {:?}", diag.window);
        assert!(diag.w.iter().all(|&v| v > 2.0));
        assert!(diag.tip_limit.is_none());
        assert!(diag.ode_residual < 5e-2, "residual {}", diag.ode_residual);
    }
}
