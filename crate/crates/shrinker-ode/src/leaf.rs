//! Shrinker leaves: tip caps Σ_a shot down from the chart seam, and
//! trumpets Σ̃_b integrated inward from their conical far field.
//!
//! A cap is assembled in two phases.  The tip chart carries the solution
//! from the axis out to ρ = M; from the seam height y_{Ma} = a − ψ(M)/a the
//! profile is continued as a curve in arclength, which tolerates the steep
//! slopes near the tip and keeps marching if the graph ever turns.  The
//! arclength system for (y(s), u(s), θ(s)) with tangent (cos θ, sin θ) is
//!
//!   θ_s = ((n−1)/u − u/2) cos θ + (y/2) sin θ,
//!
//! whose residual form in graph variables is used as the accuracy monitor:
//!
//!   u_yy/(1+u_y²) − (y/2) u_y − (n−1)/u + u/2 = 0.

use std::f64::consts::PI;

use numerics_core::ode::rk4_step;
use numerics_core::Dimension;
use serde::Serialize;

use crate::integrate::integrate_psi;
use numerics_core::d2_nonuniform;
use crate::ShrinkerError;

/// Largest trumpet slope accepted by [`solve_trumpet`].
pub const B0: f64 = 1.0;

const DEFAULT_STEP: f64 = 1e-3;
/// Keep every tenth node of the arclength march.
const SHOT_DECIMATION: usize = 10;
/// Keep every thirtieth node of the tip chart.
const CHART_DECIMATION: usize = 30;
/// Radius below which the march is declared to have reached the axis.
const AXIS_FLOOR: f64 = 1e-6;
/// Graph-slope cutoff for the finite-difference residual monitor.
const RESIDUAL_COS_FLOOR: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum LeafKind {
    /// Cap with tip at height `a`.
    Cap { a: f64 },
    /// Trumpet asymptotic to the cone u = b·y.
    Trumpet { b: f64 },
}

impl LeafKind {
    pub fn parameter(&self) -> f64 {
        match *self {
            LeafKind::Cap { a } => a,
            LeafKind::Trumpet { b } => b,
        }
    }
}

/// One leaf of the shrinker family, sampled along increasing y.
///
/// For caps the samples cover [max(y_min, y_star), a] with the tip node
/// included; `u_y` at the tip is −∞ and `w` there is the exact axis limit
/// 2n/(n−1).  For trumpets the samples cover the requested span.
#[derive(Clone, Debug, Serialize)]
pub struct ShrinkerLeaf {
    pub kind: LeafKind,
    pub n: Dimension,
    pub y: Vec<f64>,
    pub u: Vec<f64>,
    pub u_y: Vec<f64>,
    pub w: Vec<f64>,
    /// Smallest height reached before the leaf left the graph regime (or the
    /// requested floor, whichever came first).
    pub y_star: f64,
    /// Seam height a − ψ(M)/a between the tip chart and the shot portion.
    pub y_ma: Option<f64>,
    /// w sampled at chart radii ρ = 0.25, 0.5, 1.0, for tip extrapolation.
    pub tip_w: Option<[f64; 3]>,
    /// Largest finite-difference residual of the profile equation along the
    /// shot portion, computed at full step resolution before decimation.
    pub sup_residual: f64,
}

/// Pointwise residual of the rescaled profile equation
/// u_yy/(1+u_y²) − (y/2)u_y − (n−1)/u + u/2.
pub fn shrinker_residual(n: Dimension, y: f64, u: f64, u_y: f64, u_yy: f64) -> f64 {
    let nf = n.nf();
    u_yy / (1.0 + u_y * u_y) - 0.5 * y * u_y - (nf - 1.0) / u + 0.5 * u
}

impl ShrinkerLeaf {
    /// Finite-difference residual of the profile equation at each stored
    /// sample.  Endpoints and samples where the graph is too steep for a
    /// second difference to mean anything come back as NaN.
    pub fn residual_samples(&self) -> Vec<f64> {
        let steep = 1.0 / RESIDUAL_COS_FLOOR;
        (0..self.y.len())
            .map(|i| {
                if i == 0 || i + 1 == self.y.len() || !self.u_y[i].is_finite() {
                    return f64::NAN;
                }
                if self.u_y[i - 1..=i + 1].iter().any(|v| v.abs() > steep) {
                    return f64::NAN;
                }
                let ys = [self.y[i - 1], self.y[i], self.y[i + 1]];
                let us = [self.u[i - 1], self.u[i], self.u[i + 1]];
                shrinker_residual(self.n, self.y[i], self.u[i], self.u_y[i], d2_nonuniform(&ys, &us))
            })
            .collect()
    }
}

/// w = y·u_y/(u/2 − (n−1)/u), the drift-to-reaction ratio of the profile.
pub(crate) fn graph_w(n: Dimension, y: f64, u: f64, u_y: f64) -> f64 {
    let nf = n.nf();
    2.0 * y * u * u_y / (u * u - 2.0 * (nf - 1.0))
}

/// w along the tip chart: with y = a − ψ/a and u = ρ/a,
/// w = 2ρ(1 − ψ/a²) / (ψ_ρ (2(n−1) − ρ²/a²)), extended by its axis limit
/// 2n/(n−1) at ρ = 0.
fn chart_w(n: Dimension, a: f64, rho: f64, psi: f64, psi_rho: f64) -> f64 {
    let nf = n.nf();
    if rho == 0.0 {
        return 2.0 * nf / (nf - 1.0);
    }
    2.0 * rho * (1.0 - psi / (a * a)) / (psi_rho * (2.0 * (nf - 1.0) - (rho / a) * (rho / a)))
}

/// Shoot the cap leaf of tip height `a` from the chart seam down to `y_min`.
pub fn shoot_leaf(a: f64, n: Dimension, y_min: f64) -> Result<ShrinkerLeaf, ShrinkerError> {
    shoot_leaf_with_step(a, n, y_min, DEFAULT_STEP)
}

pub(crate) fn shoot_leaf_with_step(
    a: f64,
    n: Dimension,
    y_min: f64,
    h: f64,
) -> Result<ShrinkerLeaf, ShrinkerError> {
    let nf = n.nf();
    let y0 = 5.0 * (nf - 1.0).sqrt();
    if !a.is_finite() || a < y0 {
        return Err(ShrinkerError::BadParameter {
            name: "a",
            value: a,
            constraint: "a >= 5 sqrt(n - 1)",
        });
    }
    if !(0.0..a).contains(&y_min) {
        return Err(ShrinkerError::BadParameter {
            name: "y_min",
            value: y_min,
            constraint: "0 <= y_min < a",
        });
    }

    // The chart leaves the graph regime where the leaf's radius peaks, near
    // ρ = a√(2(n−1)); stopping at half that keeps a wide safety margin while
    // still seeding the march well away from the tip.
    let m_eff = (0.5 * a * (2.0 * (nf - 1.0)).sqrt()).min(30.0);
    let epsilon = 0.5 / (a * a);
    let chart = integrate_psi(n, epsilon, m_eff, h)?;
    let last = chart.rho.len() - 1;
    let y_ma = a - chart.psi[last] / a;

    let tip_w = [0.25, 0.5, 1.0].map(|rho| {
        let i = (rho / h).round() as usize;
        chart_w(n, a, chart.rho[i], chart.psi[i], chart.psi_rho[i])
    });

    // Arclength march from the seam, y decreasing.
    let rhs = |_s: f64, state: &[f64; 3]| -> [f64; 3] {
        let [y, u, theta] = *state;
        let (sin_t, cos_t) = theta.sin_cos();
        [
            cos_t,
            sin_t,
            ((nf - 1.0) / u - 0.5 * u) * cos_t + 0.5 * y * sin_t,
        ]
    };
    let theta_seed = PI - (1.0 / chart.psi_rho[last]).atan();
    let mut state = [y_ma, chart.rho[last] / a, theta_seed];
    let mut s = 0.0;

    let mut shot_y = Vec::new();
    let mut shot_u = Vec::new();
    let mut shot_uy = Vec::new();
    let mut sup_residual: f64 = 0.0;
    let mut window: [[f64; 3]; 3] = [state; 3];
    let y_star;
    let max_steps = ((2.0 * a + 100.0) / h) as usize;

    let mut step = 0usize;
    loop {
        step += 1;
        if step > max_steps {
            return Err(ShrinkerError::IntegrationFailure {
                context: "cap march exceeded its step budget",
                at: state[0],
            });
        }
        let prev = state;
        state = rk4_step(&rhs, s, &state, h);
        s += h;
        if !state.iter().all(|v| v.is_finite()) {
            return Err(ShrinkerError::IntegrationFailure {
                context: "cap march produced a non-finite state",
                at: prev[0],
            });
        }

        window = [window[1], window[2], state];
        if step >= 2 {
            let [p0, p1, p2] = window;
            let cos_mid = p1[2].cos();
            if cos_mid.abs() >= RESIDUAL_COS_FLOOR {
                let ys = [p0[0], p1[0], p2[0]];
                let us = [p0[1], p1[1], p2[1]];
                let uyy = d2_nonuniform(&ys, &us);
                let res = shrinker_residual(n, p1[0], p1[1], p1[2].tan(), uyy);
                sup_residual = sup_residual.max(res.abs());
            }
        }

        if state[0] <= y_min {
            // Interpolate back onto y = y_min exactly.
            let lambda = (prev[0] - y_min) / (prev[0] - state[0]);
            let u_end = prev[1] + lambda * (state[1] - prev[1]);
            let th_end = prev[2] + lambda * (state[2] - prev[2]);
            shot_y.push(y_min);
            shot_u.push(u_end);
            shot_uy.push(th_end.tan());
            y_star = y_min;
            break;
        }
        if state[1] <= AXIS_FLOOR {
            y_star = state[0];
            break;
        }
        if state[2].cos() >= 0.0 {
            // The curve turned around: below this height the leaf is no
            // longer a graph over y.
            y_star = state[0];
            break;
        }
        if step % SHOT_DECIMATION == 0 {
            shot_y.push(state[0]);
            shot_u.push(state[1]);
            shot_uy.push(state[2].tan());
        }
    }

    // Assemble ascending in y: reversed shot portion, then the chart from the
    // seam (ρ = M) up to the tip (ρ = 0).
    let mut chart_sel: Vec<usize> = (0..=last).step_by(CHART_DECIMATION).collect();
    if *chart_sel.last().unwrap() != last {
        chart_sel.push(last);
    }
    let cap = shot_y.len() + chart_sel.len();
    let mut y = Vec::with_capacity(cap);
    let mut u = Vec::with_capacity(cap);
    let mut u_y = Vec::with_capacity(cap);
    let mut w = Vec::with_capacity(cap);

    for i in (0..shot_y.len()).rev() {
        y.push(shot_y[i]);
        u.push(shot_u[i]);
        u_y.push(shot_uy[i]);
        w.push(graph_w(n, shot_y[i], shot_u[i], shot_uy[i]));
    }
    for &i in chart_sel.iter().rev() {
        y.push(a - chart.psi[i] / a);
        u.push(chart.rho[i] / a);
        u_y.push(-1.0 / chart.psi_rho[i]);
        w.push(chart_w(n, a, chart.rho[i], chart.psi[i], chart.psi_rho[i]));
    }

    Ok(ShrinkerLeaf {
        kind: LeafKind::Cap { a },
        n,
        y,
        u,
        u_y,
        w,
        y_star,
        y_ma: Some(y_ma),
        tip_w: Some(tip_w),
        sup_residual,
    })
}

/// Integrate the trumpet of slope `b` inward from y = Y with the matched
/// far-field seed u = bY + (n−1)/(bY) + d/Y³.
pub fn solve_trumpet(
    b: f64,
    n: Dimension,
    y_span: (f64, f64),
) -> Result<ShrinkerLeaf, ShrinkerError> {
    solve_trumpet_with_step(b, n, y_span, DEFAULT_STEP)
}

pub(crate) fn solve_trumpet_with_step(
    b: f64,
    n: Dimension,
    (y_lo, y_hi): (f64, f64),
    h: f64,
) -> Result<ShrinkerLeaf, ShrinkerError> {
    let nf = n.nf();
    if !(b > 0.0 && b <= B0) {
        return Err(ShrinkerError::BadParameter {
            name: "b",
            value: b,
            constraint: "0 < b <= 1",
        });
    }
    if !y_hi.is_finite() || y_hi < 100.0 {
        return Err(ShrinkerError::BadParameter {
            name: "y_hi",
            value: y_hi,
            constraint: "y_hi >= 100",
        });
    }
    if !(0.0..y_hi).contains(&y_lo) {
        return Err(ShrinkerError::BadParameter {
            name: "y_lo",
            value: y_lo,
            constraint: "0 <= y_lo < y_hi",
        });
    }

    let rhs = |y: f64, state: &[f64; 2]| -> [f64; 2] {
        let [u, u_y] = *state;
        [
            u_y,
            (1.0 + u_y * u_y) * (0.5 * y * u_y - 0.5 * u + (nf - 1.0) / u),
        ]
    };
    let count = ((y_hi - y_lo) / h).round().max(1.0) as usize;
    let dy = (y_hi - y_lo) / count as f64;

    // Far-field seed u = bY + c/Y + d/Y³.  Matching the equation order by
    // order forces c = (n−1)/b and d = −(c/2)(2/(1+b²) + (n−1)/b²), leaving
    // an O(Y⁻⁵) launch error.  The cubic term matters: without it the seed
    // point lands on the concave side of the leaf, with w slightly below 2.
    let c = (nf - 1.0) / b;
    let d = -0.5 * c * (2.0 / (1.0 + b * b) + (nf - 1.0) / (b * b));
    let y2 = y_hi * y_hi;
    let mut state = [
        b * y_hi + c / y_hi + d / (y_hi * y2),
        b - c / y2 - 3.0 * d / (y2 * y2),
    ];
    let mut rows: Vec<(f64, f64, f64)> = vec![(y_hi, state[0], state[1])];
    let mut window: [(f64, [f64; 2]); 3] = [(y_hi, state); 3];
    let mut sup_residual: f64 = 0.0;

    for k in 1..=count {
        let y_here = y_hi - (k - 1) as f64 * dy;
        state = rk4_step(&rhs, y_here, &state, -dy);
        let y_next = y_hi - k as f64 * dy;
        if !(state[0].is_finite() && state[1].is_finite()) || state[0] <= AXIS_FLOOR {
            return Err(ShrinkerError::IntegrationFailure {
                context: "trumpet march left the positive-radius regime",
                at: y_next,
            });
        }

        window = [window[1], window[2], (y_next, state)];
        if k >= 2 {
            let [(y0, s0), (y1, s1), (y2, s2)] = window;
            let uyy = d2_nonuniform(&[y0, y1, y2], &[s0[0], s1[0], s2[0]]);
            let res = shrinker_residual(n, y1, s1[0], s1[1], uyy);
            sup_residual = sup_residual.max(res.abs());
        }

        if k % SHOT_DECIMATION == 0 || k == count {
            rows.push((y_next, state[0], state[1]));
        }
    }

    rows.reverse();
    let mut y = Vec::with_capacity(rows.len());
    let mut u = Vec::with_capacity(rows.len());
    let mut u_y = Vec::with_capacity(rows.len());
    let mut w = Vec::with_capacity(rows.len());
    for &(yi, ui, uyi) in &rows {
        y.push(yi);
        u.push(ui);
        u_y.push(uyi);
        w.push(graph_w(n, yi, ui, uyi));
    }

    Ok(ShrinkerLeaf {
        kind: LeafKind::Trumpet { b },
        n,
        y,
        u,
        u_y,
        w,
        y_star: y_lo,
        y_ma: None,
        tip_w: None,
        sup_residual,
    })
}
