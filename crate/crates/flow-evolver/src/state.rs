//! A surface under flow: a generating curve plus the flow time.

use numerics_core::{ArcCurve, Dimension, Ends};

use crate::geometry::curve_geometry;
use crate::FlowError;

/// One time slice of the flow. `time` is rescaled time τ when the state is
/// advanced with [`crate::step_rescaled`] and ordinary time t with
/// [`crate::step_unrescaled`]; the state itself does not care.
///
/// Construction checks that the curve is convex up to a coarse margin —
/// genuinely nonconvex states are outside what the stepper and diagnostics
/// know how to handle, while small discrete dips of the sampled curvature
/// pass through. The sharp convexity monitoring belongs to the tests and to
/// [`crate::convexity_margin`].
#[derive(Clone, Debug)]
pub struct FlowState {
    pub time: f64,
    pub curve: ArcCurve,
}

impl FlowState {
    pub fn new(curve: ArcCurve, time: f64) -> Result<Self, FlowError> {
        if !time.is_finite() {
            return Err(FlowError::BadParameter {
                name: "time",
                value: time,
                constraint: "a finite flow time",
            });
        }
        let geo = curve_geometry(&curve);
        let margin = geo
            .kappa
            .iter()
            .chain(geo.lambda1.iter())
            .fold(f64::INFINITY, |a, &v| a.min(v));
        let scale = geo.kappa.iter().map(|k| k.abs()).sum::<f64>() / geo.kappa.len() as f64;
        if margin < -0.05 * (1.0 + scale) {
            return Err(FlowError::NotConvex { margin });
        }
        Ok(FlowState { time, curve })
    }

    /// Centered sphere of the given radius, sampled uniformly in arclength.
    pub fn sphere(n: Dimension, radius: f64, count: usize) -> Result<Self, FlowError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(FlowError::BadParameter {
                name: "radius",
                value: radius,
                constraint: "a positive sphere radius",
            });
        }
        if count < 5 {
            return Err(FlowError::BadParameter {
                name: "count",
                value: count as f64,
                constraint: "at least five nodes",
            });
        }
        Self::new(numerics_core::sphere_curve(radius, count, n), 0.0)
    }

    /// Straight cylinder r = radius on |y| ≤ half_length, with clamped ends.
    /// Under a stepped flow the end nodes are held fixed, so this is only
    /// meaningful for states meant to sit still (or nearly so).
    pub fn cylinder(
        n: Dimension,
        radius: f64,
        half_length: f64,
        count: usize,
    ) -> Result<Self, FlowError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(FlowError::BadParameter {
                name: "radius",
                value: radius,
                constraint: "a positive cylinder radius",
            });
        }
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(FlowError::BadParameter {
                name: "half_length",
                value: half_length,
                constraint: "a positive half-length",
            });
        }
        if count < 5 {
            return Err(FlowError::BadParameter {
                name: "count",
                value: count as f64,
                constraint: "at least five nodes",
            });
        }
        let y: Vec<f64> = (0..count)
            .map(|i| -half_length + 2.0 * half_length * i as f64 / (count - 1) as f64)
            .collect();
        let r = vec![radius; count];
        let curve = ArcCurve::from_positions(y, r, n, Ends::Clamped, true)?;
        Self::new(curve, 0.0)
    }

    /// Axial half-extent: the larger |y| of the two endpoints.
    pub fn dbar(&self) -> f64 {
        let (lo, hi) = self.curve.tips();
        lo.abs().max(hi.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim2() -> Dimension {
        Dimension::new(2).unwrap()
    }

    #[test]
    fn tips_give_the_axial_extent() {
        let s = FlowState::sphere(dim2(), 1.5, 101).unwrap();
        assert_eq!(s.dbar(), 1.5);
        let c = FlowState::cylinder(dim2(), 1.0, 7.0, 101).unwrap();
        assert_eq!(c.dbar(), 7.0);
    }

    #[test]
    fn grossly_nonconvex_curves_are_rejected() {
        // A dumbbell: the neck has strongly negative curve curvature.
        let m = 301;
        let mut y = Vec::new();
        let mut r = Vec::new();
        for i in 0..m {
            let t = std::f64::consts::PI * i as f64 / (m - 1) as f64;
            let pinch = 1.0 - 0.75 * (2.0 * t).sin().powi(2);
            y.push(-t.cos() * 2.0);
            r.push(t.sin() * pinch);
        }
        let curve = ArcCurve::from_positions(y, r, dim2(), Ends::Axis, true).unwrap();
        match FlowState::new(curve, 0.0) {
            Err(FlowError::NotConvex { margin }) => assert!(margin < -0.5),
            other => panic!("expected a convexity rejection, got {other:?}"),
        }
    }

    #[test]
    fn mild_discrete_wiggle_is_tolerated() {
        let m = 201;
        let mut y = Vec::new();
        let mut r = Vec::new();
        for i in 0..m {
            let t = std::f64::consts::PI * i as f64 / (m - 1) as f64;
            let eps = 1e-5 * (7.0 * t).sin();
            y.push(-(1.0 + eps) * t.cos());
            r.push((1.0 + eps) * t.sin());
        }
        let curve = ArcCurve::from_positions(y, r, dim2(), Ends::Axis, true).unwrap();
        assert!(FlowState::new(curve, 0.0).is_ok());
    }
}
