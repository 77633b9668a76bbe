//! The calibration defect of the atlas normal field.
//!
//! For a foliation by self-shrinkers the weighted normal field e^{−Φ}ν,
//! Φ = ‖X‖²/4, is divergence free: div(e^{−Φ}ν) = −e^{−Φ}(H + ½X·ν) and the
//! shrinker equation kills the bracket leaf by leaf.  Sampling φ through the
//! atlas and differencing the axisymmetric divergence
//!
//! ```text
//!     div = ∂_y(e^{−Φ}ν_y) + r^{1−n} ∂_r(r^{n−1} e^{−Φ}ν_r)
//! ```
//!
//! therefore measures nothing but discretization and atlas-interpolation
//! error; its decay under refinement is the check that the sampled families
//! really assemble into a calibrated foliation.

use serde::Serialize;

use crate::atlas::Foliation;
use crate::query::leaf_through;
use crate::FoliationError;

/// A rectangle [y₀, y₁] × [r₀, r₁] sampled on an ny × nr node grid.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Region {
    pub y: (f64, f64),
    pub r: (f64, f64),
    pub ny: usize,
    pub nr: usize,
}

impl Region {
    pub fn spacing(&self) -> (f64, f64) {
        (
            (self.y.1 - self.y.0) / (self.ny - 1) as f64,
            (self.r.1 - self.r.0) / (self.nr - 1) as f64,
        )
    }

    pub fn node(&self, iy: usize, ir: usize) -> (f64, f64) {
        let (hy, hr) = self.spacing();
        (self.y.0 + hy * iy as f64, self.r.0 + hr * ir as f64)
    }
}

/// φ and div(e^{−Φ}ν) over a region, row-major with index iy·nr + ir.
/// The divergence uses centered differences, so boundary nodes hold NaN.
#[derive(Clone, Debug, Serialize)]
pub struct CalibrationField {
    pub region: Region,
    pub phi: Vec<f64>,
    pub divergence: Vec<f64>,
    pub max_divergence: f64,
}

/// Sample the normal angle over `region` through the atlas and return the
/// finite-difference divergence of e^{−Φ}ν together with its interior sup.
///
/// The region must stay inside the foliated wedge, off the axis, and clear
/// of the cylinder by at least one grid cell — ν is only C¹ across the
/// cylinder, so a stencil straddling it would measure the kink instead of
/// the calibration defect.
pub fn calibration_divergence(
    fol: &Foliation,
    region: &Region,
) -> Result<CalibrationField, FoliationError> {
    if region.ny < 3 || region.nr < 3 {
        return Err(FoliationError::BadParameter {
            name: "region nodes",
            value: region.ny.min(region.nr) as f64,
            constraint: "at least 3 nodes per side",
        });
    }
    let ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo < hi;
    if !ok(region.y) || !ok(region.r) {
        return Err(FoliationError::BadParameter {
            name: "region bounds",
            value: f64::NAN,
            constraint: "finite with positive extent",
        });
    }
    let (_, hr) = region.spacing();
    if region.r.0 <= 0.0 {
        return Err(FoliationError::OutsideRegion {
            y: region.y.0,
            r: region.r.0,
            reason: "the region touches the axis",
        });
    }
    let cyl = fol.cylinder_radius;
    if region.r.0 - hr <= cyl && cyl <= region.r.1 + hr {
        return Err(FoliationError::BadParameter {
            name: "region radii",
            value: cyl,
            constraint: "clearing the cylinder by at least one grid cell",
        });
    }

    let mut phi = Vec::with_capacity(region.ny * region.nr);
    for iy in 0..region.ny {
        for ir in 0..region.nr {
            let (y, r) = region.node(iy, ir);
            phi.push(leaf_through(fol, [y, r])?.phi);
        }
    }
    let (divergence, max_divergence) = divergence_from_phi(&phi, region, fol.n.nf());
    Ok(CalibrationField {
        region: *region,
        phi,
        divergence,
        max_divergence,
    })
}

/// Centered-difference divergence of e^{−Φ}ν on the region grid, given the
/// angle samples.  Factored out of [`calibration_divergence`] so analytic
/// angle fields can be fed through the same stencil.
pub(crate) fn divergence_from_phi(phi: &[f64], region: &Region, nf: f64) -> (Vec<f64>, f64) {
    let (ny, nr) = (region.ny, region.nr);
    let (hy, hr) = region.spacing();
    let flux_y = |iy: usize, ir: usize| {
        let (y, r) = region.node(iy, ir);
        -(phi[iy * nr + ir].sin()) * (-(y * y + r * r) / 4.0).exp()
    };
    let flux_r = |iy: usize, ir: usize| {
        let (y, r) = region.node(iy, ir);
        r.powf(nf - 1.0) * phi[iy * nr + ir].cos() * (-(y * y + r * r) / 4.0).exp()
    };

    let mut divergence = vec![f64::NAN; ny * nr];
    let mut sup = 0.0f64;
    for iy in 1..ny - 1 {
        for ir in 1..nr - 1 {
            let (_, r) = region.node(iy, ir);
            let div = (flux_y(iy + 1, ir) - flux_y(iy - 1, ir)) / (2.0 * hy)
                + r.powf(1.0 - nf) * (flux_r(iy, ir + 1) - flux_r(iy, ir - 1)) / (2.0 * hr);
            divergence[iy * nr + ir] = div;
            sup = sup.max(div.abs());
        }
    }
    (divergence, sup)
}
