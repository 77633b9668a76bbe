//! Per-state geometric summary of a flow.
//!
//! Scale-sensitive quantities (extent, curvature maxima, area, the Gaussian
//! area) are read straight off the curve. The pointwise shape monitors are
//! evaluated in the graph chart r = u(y) on the sub-window |y| ≤ 0.9·d̄,
//! safely away from the tips where the chart degenerates:
//!
//! * R = λ_n/λ₁, the tip-to-collar curvature ratio; R ≤ 1 is the hallmark
//!   of the oval class,
//! * P = −(log u)_y and Q = u_y²/(u²(1+u_y²)), whose y-monotonicity on the
//!   northern half encodes the concavity properties the flow preserves.
//!
//! In curve variables P = −tan θ / r and Q = sin²θ / r², so no resampling is
//! needed: the window quantities are computed at the curve nodes themselves
//! and differentiated with nonuniform three-point stencils.

use serde::Serialize;

use numerics_core::{d1_nonuniform, Ends};

use crate::geometry::{curve_geometry, surface_area};
use crate::state::FlowState;
use crate::FlowError;

#[derive(Clone, Debug, Serialize)]
pub struct FlowDiagnostics {
    /// Flow time of the state this summarizes (τ or t, per the stepper used).
    pub time: f64,
    /// Axial half-extent max |y| over the endpoints.
    pub dbar: f64,
    /// Largest mean curvature over all nodes.
    pub hbar_max: f64,
    /// Node index attaining `hbar_max` (0 or len−1 means a tip).
    pub hbar_argmax: usize,
    /// Mean curvature at the tips (the larger of the two); `None` for
    /// clamped curves, which have no tips.
    pub hbar_tip: Option<f64>,
    /// Area of the revolved hypersurface.
    pub area: f64,
    /// Max of R = λ_n/λ₁ over the graph window |y| ≤ 0.9·d̄.
    pub r_max: f64,
    /// Min of ∂_y P over the window half y ∈ [0, 0.9·d̄].
    pub min_p_y: f64,
    /// Min of ∂_y Q over the window half y ∈ [0, 0.9·d̄].
    pub min_q_y: f64,
    /// Gaussian-weighted area ∫ r^{n−1} e^{−|X|²/4} ds.
    pub huisken: f64,
}

pub fn diagnostics(state: &FlowState) -> Result<FlowDiagnostics, FlowError> {
    let curve = &state.curve;
    let m = curve.len();
    let (y, r, th) = (curve.y(), curve.r(), curve.theta());
    let geo = curve_geometry(curve);

    let dbar = state.dbar();
    if dbar <= 0.0 {
        return Err(FlowError::Degenerate("the surface has no axial extent"));
    }

    let (hbar_argmax, hbar_max) = geo
        .h
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| {
            if v > bv {
                (i, v)
            } else {
                (bi, bv)
            }
        });
    let hbar_tip = match curve.ends() {
        Ends::Axis => Some(geo.h[0].max(geo.h[m - 1])),
        Ends::Clamped => None,
    };

    // Graph-chart monitors at interior nodes inside the window. tan θ is
    // safe there: on a convex curve the tangent only turns vertical at the
    // tips, which the 0.9·d̄ window excludes.
    let win = 0.9 * dbar;
    let p: Vec<f64> = (0..m)
        .map(|i| {
            if th[i].cos() > 1e-12 && r[i] > 0.0 {
                -th[i].tan() / r[i]
            } else {
                f64::NAN
            }
        })
        .collect();
    let q: Vec<f64> = (0..m)
        .map(|i| {
            if r[i] > 0.0 {
                (th[i].sin() / r[i]).powi(2)
            } else {
                f64::NAN
            }
        })
        .collect();

    let mut r_max = f64::NEG_INFINITY;
    let mut min_p_y = f64::INFINITY;
    let mut min_q_y = f64::INFINITY;
    let mut seen = 0usize;
    for i in 1..m - 1 {
        if y[i].abs() > win {
            continue;
        }
        seen += 1;
        if th[i].cos() > 1e-12 {
            r_max = r_max.max(geo.kappa[i] * r[i] / th[i].cos());
        }
        if y[i] >= 0.0 && p[i - 1].is_finite() && p[i].is_finite() && p[i + 1].is_finite() {
            let ys = [y[i - 1], y[i], y[i + 1]];
            min_p_y = min_p_y.min(d1_nonuniform(&ys, &[p[i - 1], p[i], p[i + 1]]));
            min_q_y = min_q_y.min(d1_nonuniform(&ys, &[q[i - 1], q[i], q[i + 1]]));
        }
    }
    if seen < 3 || !min_p_y.is_finite() {
        return Err(FlowError::Degenerate(
            "the graph window holds too few nodes at this resolution",
        ));
    }

    Ok(FlowDiagnostics {
        time: state.time,
        dbar,
        hbar_max,
        hbar_argmax,
        hbar_tip,
        area: surface_area(curve),
        r_max,
        min_p_y,
        min_q_y,
        huisken: huisken::huisken_curve(curve),
    })
}
