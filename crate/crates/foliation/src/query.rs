//! Point queries against the atlas: which leaf passes through a point, and
//! with what normal.

use numerics_core::MonotoneCubic;
use serde::Serialize;
use shrinker_ode::{ShrinkerLeaf, B0};

use crate::atlas::{leaf_angle_at, leaf_radius_at, Foliation};
use crate::FoliationError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum LeafId {
    Cap { a: f64 },
    Cylinder,
    Trumpet { b: f64 },
}

/// The unit normal of the leaf through a point, identified by the angle φ
/// with tan φ = u_y; in the (y, r) half-plane ν = (−sin φ, cos φ).
///
/// Inside the cylinder −π/2 < φ ≤ 0; on the cylinder φ = 0; on the trumpet
/// side φ > 0.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NormalSample {
    pub point: [f64; 2],
    pub leaf: LeafId,
    pub phi: f64,
    pub nu: [f64; 2],
}

impl NormalSample {
    fn at(point: [f64; 2], leaf: LeafId, phi: f64) -> Self {
        NormalSample {
            point,
            leaf,
            phi,
            nu: [-phi.sin(), phi.cos()],
        }
    }
}

/// Identify the leaf through `point = (y, r)` and the normal angle there.
///
/// Bisection over the sorted family picks the bracketing pair of stored
/// leaves; the parameter and the angle are then interpolated monotonically
/// in the leaf radius at fixed height.  Points closer to the cylinder than
/// the innermost stored leaf on their side resolve to the cylinder itself,
/// the atlas's own resolution limit.
pub fn leaf_through(fol: &Foliation, point: [f64; 2]) -> Result<NormalSample, FoliationError> {
    let [y, r] = point;
    let outside = |reason: &'static str| FoliationError::OutsideRegion { y, r, reason };
    if !y.is_finite() || y < fol.y0 {
        return Err(outside("the atlas starts at the entry height y0"));
    }
    if !r.is_finite() || r <= 0.0 {
        return Err(outside("the axis is not part of the foliated wedge"));
    }
    if r >= B0 * y {
        return Err(outside("the foliated wedge ends at the cone r = b0·y"));
    }

    if r < fol.cylinder_radius {
        // Cap side.  Only caps with tips above y pass over the point; their
        // radii at height y increase with a.
        let first = fol.caps.partition_point(|leaf| leaf.kind.parameter() <= y);
        let caps = &fol.caps[first..];
        if caps.is_empty() {
            return Err(outside("no stored cap reaches above this height"));
        }
        let radius = |leaf: &ShrinkerLeaf| leaf_radius_at(leaf, y).unwrap_or(f64::INFINITY);
        if r > radius(caps.last().unwrap()) {
            return Ok(NormalSample::at(point, LeafId::Cylinder, 0.0));
        }
        let mut k = caps.partition_point(|leaf| radius(leaf) < r);
        if k == 0 {
            if radius(&caps[0]) > r {
                return Err(outside("no stored cap passes between the point and the axis"));
            }
            k = 1;
        }
        let (a, phi) = interpolate(caps, k, y, r);
        Ok(NormalSample::at(point, LeafId::Cap { a }, phi))
    } else {
        // Trumpet side.  Small slopes are solved farther out, so the leaves
        // reaching height y form a prefix of the family.
        let reach = fol
            .trumpets
            .partition_point(|leaf| *leaf.y.last().unwrap() >= y);
        let trumpets = &fol.trumpets[..reach];
        if trumpets.is_empty() {
            return Err(outside("no stored trumpet is solved out to this height"));
        }
        let radius = |leaf: &ShrinkerLeaf| leaf_radius_at(leaf, y).unwrap_or(f64::NEG_INFINITY);
        if r < radius(&trumpets[0]) {
            return Ok(NormalSample::at(point, LeafId::Cylinder, 0.0));
        }
        let k = trumpets.partition_point(|leaf| radius(leaf) < r).max(1);
        if k == trumpets.len() {
            return Err(outside("above the steepest stored trumpet"));
        }
        let (b, phi) = interpolate(trumpets, k, y, r);
        Ok(NormalSample::at(point, LeafId::Trumpet { b }, phi))
    }
}

/// Monotone cubic interpolation of (parameter, angle) in the leaf radius at
/// fixed height, over a window of up to six leaves around the bracketing
/// pair (k−1, k).
fn interpolate(leaves: &[ShrinkerLeaf], k: usize, y: f64, r: f64) -> (f64, f64) {
    let lo = k.saturating_sub(3);
    let hi = (k + 3).min(leaves.len());
    let mut radii = Vec::with_capacity(hi - lo);
    let mut params = Vec::with_capacity(hi - lo);
    let mut angles = Vec::with_capacity(hi - lo);
    for leaf in &leaves[lo..hi] {
        let (Some(rj), Some(tj)) = (leaf_radius_at(leaf, y), leaf_angle_at(leaf, y)) else {
            continue;
        };
        radii.push(rj);
        params.push(leaf.kind.parameter());
        angles.push(tj);
    }
    let fit = |values: &[f64]| {
        MonotoneCubic::new(&radii, values)
            .expect("build ordered the bracketing leaves")
            .eval(r)
            .expect("the query radius lies inside its bracket")
    };
    (fit(&params), fit(&angles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::build;
    use approx::assert_abs_diff_eq;
    use numerics_core::Dimension;
    use once_cell::sync::Lazy;

    fn dim2() -> Dimension {
        Dimension::new(2).unwrap()
    }

    static ATLAS: Lazy<Foliation> = Lazy::new(|| {
        let mut a_grid = vec![20.0];
        while *a_grid.last().unwrap() < 90.0 {
            a_grid.push(a_grid.last().unwrap() * 1.05);
        }
        let b_grid = [0.02, 0.05, 0.1, 0.25, 0.5, 1.0];
        build(dim2(), &a_grid, &b_grid, 5.0).unwrap()
    });

    #[test]
    fn cylinder_points_have_zero_angle() {
        let cyl = ATLAS.cylinder_radius;
        for point in [
            [8.0, cyl],
            [6.0, cyl - 0.001], // hairline above the outermost cap
            [6.0, cyl + 0.002], // hairline below the innermost trumpet
        ] {
            let sample = leaf_through(&ATLAS, point).unwrap();
            assert_eq!(sample.leaf, LeafId::Cylinder);
            assert_eq!(sample.phi, 0.0);
            assert_eq!(sample.nu, [0.0, 1.0]);
        }
    }

    #[test]
    fn stored_leaves_roundtrip_their_parameters() {
        let cap = &ATLAS.caps[10];
        let a = cap.kind.parameter();
        let i = cap.y.partition_point(|&t| t < 12.0);
        let sample = leaf_through(&ATLAS, [cap.y[i], cap.u[i]]).unwrap();
        match sample.leaf {
            LeafId::Cap { a: got } => assert_abs_diff_eq!(got, a, epsilon = 1e-9 * a),
            other => panic!("expected the stored cap, got {other:?}"),
        }
        assert_abs_diff_eq!(sample.phi, cap.u_y[i].atan(), epsilon = 1e-12);

        let trumpet = &ATLAS.trumpets[3];
        let b = trumpet.kind.parameter();
        let i = trumpet.y.partition_point(|&t| t < 30.0);
        let sample = leaf_through(&ATLAS, [trumpet.y[i], trumpet.u[i]]).unwrap();
        match sample.leaf {
            LeafId::Trumpet { b: got } => assert_abs_diff_eq!(got, b, epsilon = 1e-9),
            other => panic!("expected the stored trumpet, got {other:?}"),
        }
        assert_abs_diff_eq!(sample.phi, trumpet.u_y[i].atan(), epsilon = 1e-12);
    }

    #[test]
    fn the_angle_flips_sign_across_the_cylinder() {
        let inside = leaf_through(&ATLAS, [10.0, 1.3]).unwrap();
        assert!(matches!(inside.leaf, LeafId::Cap { .. }));
        assert!(
            inside.phi > -std::f64::consts::FRAC_PI_2 && inside.phi < 0.0,
            "phi = {}",
            inside.phi
        );

        let outside = leaf_through(&ATLAS, [10.0, 1.6]).unwrap();
        assert!(matches!(outside.leaf, LeafId::Trumpet { .. }));
        assert!(outside.phi > 0.0, "phi = {}", outside.phi);

        for sample in [inside, outside] {
            let norm = sample.nu[0] * sample.nu[0] + sample.nu[1] * sample.nu[1];
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn near_cylinder_angles_obey_the_squeeze() {
        // tan φ = (w/2ry)(r² − 2(n−1)) near the cylinder, with
        // 2 ≤ w ≤ 2 + K/y².  The probe points sit between stored leaves, so
        // the implied w also exercises the parameter interpolation.
        let cyl = ATLAS.cylinder_radius;
        let k = crate::atlas::squeeze_constant(ATLAS.n);
        let tol = 0.05;
        let probes = [
            (6.0, -0.005),
            (8.0, -0.008),
            (10.0, -0.012),
            (12.0, -0.016),
            (6.0, 0.008),
            (8.0, 0.012),
            (10.0, 0.0165),
        ];
        for (y, d) in probes {
            let r = cyl + d;
            let sample = leaf_through(&ATLAS, [y, r]).unwrap();
            let w = sample.phi.tan() * 2.0 * r * y / (r * r - cyl * cyl);
            assert!(
                w >= 2.0 - tol && w <= 2.0 + k / (y * y) + tol,
                "implied w = {w} at (y, d) = ({y}, {d})"
            );
        }
    }

    #[test]
    fn points_off_the_wedge_are_rejected() {
        let err = |point| {
            assert!(matches!(
                leaf_through(&ATLAS, point),
                Err(FoliationError::OutsideRegion { .. })
            ), "point {point:?} should be outside");
        };
        err([4.0, 1.0]); // below the entry height
        err([10.0, 0.0]); // on the axis
        err([10.0, 12.0]); // beyond the cone r = b0·y
        err([10.0, 0.2]); // under the innermost cap that reaches y = 10
        err([450.0, 1.0]); // above every stored cap
        err([450.0, 2.0]); // beyond every trumpet's solved span
    }
}
