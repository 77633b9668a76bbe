//! The normal speed of the cap family and the Jacobi equation it solves.
//!
//! Differentiating the family a ↦ Σ_a in the leaf parameter gives a normal
//! vector field; its scalar magnitude V is approximated here by the normal
//! gap between Σ_a and Σ_{a+δa} divided by δa.  Positivity of V restates
//! that the caps foliate, V(tip) = 1 is the normalization forced by the tip
//! chart, and V must satisfy the Jacobi (linearized shrinker) equation
//!
//! ```text
//!     V_ss + ((n−1) r_s/r − Φ_s) V_s + (‖A‖² + ½) V = 0
//! ```
//!
//! in arclength s along the profile, which the residual sup reported here
//! verifies to discretization order.

use numerics_core::{d1_nonuniform, d2_nonuniform, lagrange_cubic};
use serde::Serialize;
use shrinker_ode::{shoot_leaf, ShrinkerLeaf};

use crate::atlas::{bracket, leaf_label, leaf_radius_at, leaf_slope_at, Foliation};
use crate::FoliationError;

/// Minimum arclength half-width of the Jacobi stencil.  The profile nodes
/// are ~1e−2 apart, and V carries interpolation noise of order 1e−8; a
/// second difference over a shorter baseline would amplify that noise past
/// the residual being measured.
const STENCIL_SPAN: f64 = 2e-2;
/// The residual stencil is confined to radii above half the cylinder, where
/// the profile stays uniformly graph-flat in a and the Jacobi coefficients
/// are O(1).  Below it the leaf bends on the tip scale ~1/a, which a fixed
/// arclength span cannot resolve; that collar is checked against the tip
/// chart instead (V(tip) = 1 and the bowl-slope comparison).
const NEWTON_CAP: usize = 30;

#[derive(Clone, Debug, Serialize)]
pub struct NormalVariation {
    pub a: f64,
    pub delta_a: f64,
    /// Heights of the retained profile nodes, ascending, entry height first
    /// and the tip y = a last.
    pub y: Vec<f64>,
    /// Normal gap to the neighbor leaf divided by δa at each node.
    pub v: Vec<f64>,
    /// Sup of the Jacobi residual of `v` over nodes with radius above half
    /// the cylinder (the collar below is verified against the tip chart).
    pub jacobi_residual: f64,
}

/// Difference the cap family at `a` with step `delta_a`, returning the
/// normal-speed samples on y ≥ fol.y0 and their Jacobi residual.
///
/// Both leaves are re-shot rather than read from the atlas so the step can
/// be refined independently of the stored grid; `fol` supplies the
/// dimension, the entry height, and (when its cap list is nonempty) the
/// admissible parameter range.  A nonpositive gap anywhere aborts with the
/// crossing pair, since it falsifies the foliation ordering.
pub fn normal_variation(
    fol: &Foliation,
    a: f64,
    delta_a: f64,
) -> Result<NormalVariation, FoliationError> {
    if !delta_a.is_finite() || delta_a <= 0.0 || delta_a > 1e-2 * a {
        return Err(FoliationError::BadParameter {
            name: "delta_a",
            value: delta_a,
            constraint: "0 < delta_a <= a/100",
        });
    }
    if let (Some(first), Some(last)) = (fol.caps.first(), fol.caps.last()) {
        if a < first.kind.parameter() || a + delta_a > last.kind.parameter() {
            return Err(FoliationError::BadParameter {
                name: "a",
                value: a,
                constraint: "a and a + delta_a within the stored cap range",
            });
        }
    }

    let base = shoot_leaf(a, fol.n, 0.0)?;
    let moved = shoot_leaf(a + delta_a, fol.n, 0.0)?;
    let inverse = InverseGraph::new(&moved);

    let start = base.y.partition_point(|&t| t < fol.y0);
    let mut v = Vec::with_capacity(base.y.len() - start);
    for i in start..base.y.len() {
        let gap = normal_gap(&base, i, &moved, &inverse)?;
        if gap <= 0.0 {
            return Err(FoliationError::LeavesCross {
                lower: leaf_label(&base),
                upper: leaf_label(&moved),
                y: base.y[i],
            });
        }
        v.push(gap / delta_a);
    }

    let jacobi_residual = residual_sup(&base, start, &v, fol.n.nf());
    Ok(NormalVariation {
        a,
        delta_a,
        y: base.y[start..].to_vec(),
        v,
        jacobi_residual,
    })
}

/// Signed distance from node `i` of `base` to `moved` along the unit normal
/// (−sin θ, cos θ), found by Newton iteration on the intersection equation.
/// Where the base profile is steep the roles of y and u flip and the moved
/// leaf is read as a graph y = g(u) instead, so the bracketing stays
/// well conditioned through the tip.
fn normal_gap(
    base: &ShrinkerLeaf,
    i: usize,
    moved: &ShrinkerLeaf,
    inverse: &InverseGraph,
) -> Result<f64, FoliationError> {
    let (y, u, u_y) = (base.y[i], base.u[i], base.u_y[i]);
    let theta = u_y.atan();
    let (nu_y, nu_r) = (-theta.sin(), theta.cos());
    let diverged = || FoliationError::GapDiverged { y };

    let mut t = 0.0f64;
    if u_y.abs() <= 1.0 {
        for _ in 0..NEWTON_CAP {
            let probe = y + t * nu_y;
            let (Some(mu), Some(mu_y)) = (
                leaf_radius_at(moved, probe),
                leaf_slope_at(moved, probe),
            ) else {
                return Err(diverged());
            };
            let dt = (mu - u - t * nu_r) / (mu_y * nu_y - nu_r);
            t -= dt;
            if dt.abs() <= 1e-13 * (1.0 + t.abs()) {
                return Ok(t);
            }
        }
    } else {
        for _ in 0..NEWTON_CAP {
            let probe = u + t * nu_r;
            let (Some(gy), Some(gp)) = (inverse.height(probe), inverse.slope(probe)) else {
                return Err(diverged());
            };
            let dt = (gy - y - t * nu_y) / (gp * nu_r - nu_y);
            t -= dt;
            if dt.abs() <= 1e-13 * (1.0 + t.abs()) {
                return Ok(t);
            }
        }
    }
    Err(diverged())
}

/// A cap profile reindexed as the graph y = g(u).  Radii ascend from the
/// tip value 0, so the slope 1/u_y is finite everywhere (−0.0 at the tip).
struct InverseGraph {
    u: Vec<f64>,
    y: Vec<f64>,
    slope: Vec<f64>,
}

impl InverseGraph {
    fn new(leaf: &ShrinkerLeaf) -> Self {
        let m = leaf.y.len();
        let mut u = Vec::with_capacity(m);
        let mut y = Vec::with_capacity(m);
        let mut slope = Vec::with_capacity(m);
        for j in (0..m).rev() {
            u.push(leaf.u[j]);
            y.push(leaf.y[j]);
            slope.push(1.0 / leaf.u_y[j]);
        }
        Self { u, y, slope }
    }

    fn height(&self, uu: f64) -> Option<f64> {
        bracket(&self.u, uu).map(|i| lagrange_cubic(&self.u, &self.y, i, uu))
    }

    fn slope(&self, uu: f64) -> Option<f64> {
        bracket(&self.u, uu).map(|i| lagrange_cubic(&self.u, &self.slope, i, uu))
    }
}

/// Sup of the Jacobi operator applied to the sampled V, using uneven
/// three-point stencils in arclength and the profile equation for u_yy.
fn residual_sup(leaf: &ShrinkerLeaf, start: usize, v: &[f64], nf: f64) -> f64 {
    let ys = &leaf.y[start..];
    let us = &leaf.u[start..];
    let uys = &leaf.u_y[start..];
    let floor = (2.0 * (nf - 1.0)).sqrt() / 2.0;
    let m = v.len();

    let mut s = vec![0.0f64; m];
    for i in 1..m {
        s[i] = s[i - 1] + (ys[i] - ys[i - 1]).hypot(us[i] - us[i - 1]);
    }

    let mut sup = 0.0f64;
    for i in 1..m - 1 {
        let (y, r, u_y) = (ys[i], us[i], uys[i]);
        if r < floor || !u_y.is_finite() {
            continue;
        }
        let mut j = i - 1;
        while s[i] - s[j] < STENCIL_SPAN && j > 0 {
            j -= 1;
        }
        let mut k = i + 1;
        while s[k] - s[i] < STENCIL_SPAN && k < m - 1 {
            k += 1;
        }
        if s[i] - s[j] < STENCIL_SPAN || s[k] - s[i] < STENCIL_SPAN {
            continue;
        }

        let sb = [s[j], s[i], s[k]];
        let vb = [v[j], v[i], v[k]];
        let v_s = d1_nonuniform(&sb, &vb);
        let v_ss = d2_nonuniform(&sb, &vb);

        let sec = 1.0 + u_y * u_y;
        let norm = sec.sqrt();
        let (y_s, r_s) = (1.0 / norm, u_y / norm);
        let u_yy = sec * (0.5 * y * u_y - 0.5 * r + (nf - 1.0) / r);
        let a2 = u_yy * u_yy / (sec * sec * sec) + (nf - 1.0) / (r * r * sec);
        let phi_s = 0.5 * (y * y_s + r * r_s);

        let res = v_ss + ((nf - 1.0) * r_s / r - phi_s) * v_s + (a2 + 0.5) * v[i];
        sup = sup.max(res.abs());
    }
    sup
}

/// Max of (n+1)/4 + ‖A‖² − ‖X‖²/16 over the stored profile nodes with
/// y0 ≤ y ≤ y_Ma.  A negative value certifies the coefficient inequality
/// that makes e^{‖X‖²/8} times a Gaussian a supersolution of the Jacobi
/// equation on the intermediate zone, which is what pins V > 0 between
/// consecutive leaves.
pub fn supersolution_margin(leaf: &ShrinkerLeaf, y0: f64) -> f64 {
    let nf = leaf.n.nf();
    let top = leaf.y_ma.unwrap_or_else(|| *leaf.y.last().unwrap());
    let mut sup = f64::NEG_INFINITY;
    for i in 0..leaf.y.len() {
        let (y, u, u_y) = (leaf.y[i], leaf.u[i], leaf.u_y[i]);
        if y < y0 || y > top || !u_y.is_finite() {
            continue;
        }
        let sec = 1.0 + u_y * u_y;
        let u_yy = sec * (0.5 * y * u_y - 0.5 * u + (nf - 1.0) / u);
        let a2 = u_yy * u_yy / (sec * sec * sec) + (nf - 1.0) / (u * u * sec);
        sup = sup.max((nf + 1.0) / 4.0 + a2 - (y * y + u * u) / 16.0);
    }
    sup
}
