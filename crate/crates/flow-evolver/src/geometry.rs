//! Pointwise curvature data along a sampled generating curve.
//!
//! Everything is measured against the inward normal N = (sin θ, −cos θ), so
//! convex ovals have positive principal curvatures. Two discrete choices
//! matter enough to call out:
//!
//! * second derivatives are chord second differences, which on uniformly
//!   spaced nodes of a circle reproduce −X/ρ² *identically*, not merely to
//!   truncation order, and
//! * an axis tip is closed with the even reflection of its neighbour, which
//!   keeps that exactness at the poles and builds in the umbilic value
//!   H = n·κ there.
//!
//! Centered spheres and straight cylinders therefore carry exactly round
//! discrete curvature, which is what pins the shrinkers as fixed points of
//! the stepped flow rather than merely approximate ones.

use numerics_core::{d2_nonuniform, ArcCurve, Dimension, Ends};

pub(crate) struct CurveGeometry {
    /// Chord lengths |X_{i+1} − X_i|, one per segment.
    pub chord: Vec<f64>,
    /// Curve curvature κ = ⟨X_ss, N⟩.
    pub kappa: Vec<f64>,
    /// Rotational curvature cos θ / r, equal to κ at axis tips.
    pub lambda1: Vec<f64>,
    /// Mean curvature κ + (n−1)·λ₁, with the umbilic value n·κ at tips.
    pub h: Vec<f64>,
}

pub(crate) fn curve_geometry(curve: &ArcCurve) -> CurveGeometry {
    let (y, r, th) = (curve.y(), curve.r(), curve.theta());
    let m = curve.len();
    let nf = curve.n().nf();
    let chord = curve.chord_lengths();

    let mut kappa = vec![0.0; m];
    for i in 1..m - 1 {
        let (lm, lp) = (chord[i - 1], chord[i]);
        let yss = 2.0 * ((y[i + 1] - y[i]) / lp - (y[i] - y[i - 1]) / lm) / (lm + lp);
        let rss = 2.0 * ((r[i + 1] - r[i]) / lp - (r[i] - r[i - 1]) / lm) / (lm + lp);
        kappa[i] = yss * th[i].sin() - rss * th[i].cos();
    }
    match curve.ends() {
        Ends::Axis => {
            kappa[0] = 2.0 * (y[1] - y[0]) / (chord[0] * chord[0]);
            kappa[m - 1] = 2.0 * (y[m - 1] - y[m - 2]) / (chord[m - 2] * chord[m - 2]);
        }
        Ends::Clamped => {
            let s0 = [0.0, chord[0], chord[0] + chord[1]];
            let yss = d2_nonuniform(&s0, &[y[0], y[1], y[2]]);
            let rss = d2_nonuniform(&s0, &[r[0], r[1], r[2]]);
            kappa[0] = yss * th[0].sin() - rss * th[0].cos();
            let s1 = [0.0, chord[m - 3], chord[m - 3] + chord[m - 2]];
            let yss = d2_nonuniform(&s1, &[y[m - 3], y[m - 2], y[m - 1]]);
            let rss = d2_nonuniform(&s1, &[r[m - 3], r[m - 2], r[m - 1]]);
            kappa[m - 1] = yss * th[m - 1].sin() - rss * th[m - 1].cos();
        }
    }

    let mut lambda1 = vec![0.0; m];
    let mut h = vec![0.0; m];
    for i in 0..m {
        let tip = curve.ends() == Ends::Axis && (i == 0 || i == m - 1);
        if tip {
            lambda1[i] = kappa[i];
            h[i] = nf * kappa[i];
        } else {
            lambda1[i] = th[i].cos() / r[i];
            h[i] = kappa[i] + (nf - 1.0) * lambda1[i];
        }
    }

    CurveGeometry {
        chord,
        kappa,
        lambda1,
        h,
    }
}

/// Mean curvature H = λ_n + (n−1)λ₁ at every node, against the inward
/// normal, with the umbilic value n·λ_n at axis tips.
pub fn mean_curvature(curve: &ArcCurve) -> Vec<f64> {
    curve_geometry(curve).h
}

/// Normal speed H + ½⟨X, N⟩ of the rescaled flow at every node. Vanishes
/// identically on the shrinking cylinder, the √(2n)-sphere, and every leaf of
/// the shrinker family.
pub fn shrinker_speed(curve: &ArcCurve) -> Vec<f64> {
    let (y, r, th) = (curve.y(), curve.r(), curve.theta());
    curve_geometry(curve)
        .h
        .iter()
        .enumerate()
        .map(|(i, h)| h + 0.5 * (y[i] * th[i].sin() - r[i] * th[i].cos()))
        .collect()
}

/// Smallest principal curvature found anywhere on the curve, i.e.
/// min(min κ, min λ₁). Negative values mean the surface bends the wrong way
/// somewhere.
pub fn convexity_margin(curve: &ArcCurve) -> f64 {
    let geo = curve_geometry(curve);
    geo.kappa
        .iter()
        .chain(geo.lambda1.iter())
        .fold(f64::INFINITY, |a, &v| a.min(v))
}

/// |S^{n−1}| · ∫ r^{n−1} ds by the trapezoid rule: the area of the revolved
/// hypersurface.
pub fn surface_area(curve: &ArcCurve) -> f64 {
    let r = curve.r();
    let p = curve.n().n() as i32 - 1;
    let g: Vec<f64> = r.iter().map(|ri| ri.powi(p)).collect();
    let strip: f64 = curve
        .chord_lengths()
        .iter()
        .enumerate()
        .map(|(i, ds)| 0.5 * (g[i] + g[i + 1]) * ds)
        .sum();
    unit_sphere_area(curve.n()) * strip
}

/// Area of the unit sphere S^{n−1} ⊂ R^n, i.e. 2π^{n/2} / Γ(n/2).
fn unit_sphere_area(n: Dimension) -> f64 {
    let k = n.n();
    let half = k as f64 / 2.0;
    let mut gamma = if k % 2 == 0 {
        1.0
    } else {
        std::f64::consts::PI.sqrt()
    };
    let mut x = if k % 2 == 0 { 1.0 } else { 0.5 };
    while x + 0.25 < half {
        gamma *= x;
        x += 1.0;
    }
    2.0 * std::f64::consts::PI.powf(half) / gamma
}
