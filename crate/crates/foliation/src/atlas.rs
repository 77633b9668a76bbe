//! Building and ordering the leaf atlas.

use std::thread;

use numerics_core::{lagrange_cubic, Dimension};
use serde::Serialize;
use shrinker_ode::{shoot_leaf, solve_trumpet, LeafKind, ShrinkerLeaf, ShrinkerError, B0};

use crate::FoliationError;

/// Ratio of the default geometric tip-height grid.
pub const DEFAULT_A_RATIO: f64 = 1.05;
/// Largest tip height in the default atlas.
pub const DEFAULT_A_MAX: f64 = 200.0;
/// Ratio of the default geometric slope grid.
const B_RATIO: f64 = 1.25;
/// Smallest trumpet slope in the default atlas.
const B_MIN: f64 = 1e-3;
/// Trumpets are solved at least this far out.
const TRUMPET_SPAN: f64 = 120.0;

/// Tip heights y0, y0·ratio, … capped with a_max itself.
pub fn default_a_grid(y0: f64, a_max: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut a = y0;
    while a < a_max * (1.0 - 1e-9) {
        grid.push(a);
        a *= DEFAULT_A_RATIO;
    }
    grid.push(a_max);
    grid
}

/// Slopes descending geometrically from b0 = 1 until 10⁻³, stored ascending.
pub fn default_b_grid() -> Vec<f64> {
    let mut grid = Vec::new();
    let mut b = B0;
    while b > B_MIN {
        grid.push(b);
        b /= B_RATIO;
    }
    grid.reverse();
    grid
}

/// The constant K in the squeeze 2 ≤ w ≤ 2 + K/y² near the cylinder:
/// 20(n−1) covers the caps, 16 the trumpets.
pub fn squeeze_constant(n: Dimension) -> f64 {
    (20.0 * (n.nf() - 1.0)).max(16.0)
}

/// A sampled foliation of the wedge 0 < r < b0·y, y ≥ y0: cap leaves below
/// the cylinder, trumpet leaves above, both sorted by their parameter.
///
/// [`build`] is the usual constructor; it solves the leaves and verifies
/// that adjacent ones stay strictly ordered above the entry height.
#[derive(Debug, Serialize)]
pub struct Foliation {
    pub n: Dimension,
    pub y0: f64,
    pub caps: Vec<ShrinkerLeaf>,
    pub trumpets: Vec<ShrinkerLeaf>,
    pub cylinder_radius: f64,
}

/// Solve the cap family over `a_grid` and the trumpet family over `b_grid`
/// and check leafwise disjointness for y ≥ y0.
///
/// Either grid may be empty.  Caps are solved down to the equator so the
/// atlas stores full half-profiles; trumpets are solved from far enough out
/// (at least y = 8(n−1)/b) that the cone seed is trustworthy.
pub fn build(
    n: Dimension,
    a_grid: &[f64],
    b_grid: &[f64],
    y0: f64,
) -> Result<Foliation, FoliationError> {
    if !y0.is_finite() || y0 <= 0.0 {
        return Err(FoliationError::BadParameter {
            name: "y0",
            value: y0,
            constraint: "a positive entry height",
        });
    }
    if !strictly_increasing(a_grid) || a_grid.first().is_some_and(|&a| a < y0) {
        return Err(FoliationError::BadGrid {
            name: "a",
            constraint: "strictly increasing with min ≥ y0",
        });
    }
    if !strictly_increasing(b_grid) || b_grid.iter().any(|&b| !(b > 0.0 && b <= B0)) {
        return Err(FoliationError::BadGrid {
            name: "b",
            constraint: "strictly increasing within (0, b0]",
        });
    }

    let caps = solve_family(a_grid, |a| shoot_leaf(a, n, 0.0))?;
    let trumpets = solve_family(b_grid, |b| {
        let span = (8.0 * (n.nf() - 1.0) / b).max(TRUMPET_SPAN);
        solve_trumpet(b, n, (0.0, span))
    })?;

    let foliation = Foliation {
        n,
        y0,
        caps,
        trumpets,
        cylinder_radius: n.cylinder_radius(),
    };
    foliation.check_disjoint()?;
    Ok(foliation)
}

impl Foliation {
    /// Largest measured (w − 2)·y² over stored samples with y ≥ y0 inside the
    /// band |r² − 2(n−1)| ≤ band, or None when no sample lands in the band.
    ///
    /// This is the observed squeeze constant; [`squeeze_constant`] is the
    /// bound it is expected to stay under.
    pub fn measured_squeeze(&self, band: f64) -> Option<f64> {
        let target = 2.0 * (self.n.nf() - 1.0);
        let mut sup: Option<f64> = None;
        for leaf in self.caps.iter().chain(&self.trumpets) {
            for i in 0..leaf.y.len() {
                let y = leaf.y[i];
                if y < self.y0 || (leaf.u[i] * leaf.u[i] - target).abs() > band {
                    continue;
                }
                let excess = (leaf.w[i] - 2.0) * y * y;
                sup = Some(sup.map_or(excess, |s: f64| s.max(excess)));
            }
        }
        sup
    }

    /// Every adjacent pair strictly ordered at the sampled heights y ≥ y0,
    /// with the cylinder separating the top cap from the bottom trumpet.
    fn check_disjoint(&self) -> Result<(), FoliationError> {
        for pair in self.caps.windows(2) {
            self.ordered_pair(&pair[0], &pair[1])?;
        }
        for pair in self.trumpets.windows(2) {
            self.ordered_pair(&pair[0], &pair[1])?;
        }
        if let Some(top) = self.caps.last() {
            for (i, &y) in top.y.iter().enumerate() {
                if y >= self.y0 && top.u[i] >= self.cylinder_radius {
                    return Err(crossing(top, None, y));
                }
            }
        }
        if let Some(bottom) = self.trumpets.first() {
            for (i, &y) in bottom.y.iter().enumerate() {
                if y >= self.y0 && bottom.u[i] <= self.cylinder_radius {
                    return Err(crossing(bottom, None, y));
                }
            }
        }
        Ok(())
    }

    /// `lower` stays strictly under `upper` at every stored height of `lower`
    /// that both leaves reach.
    fn ordered_pair(
        &self,
        lower: &ShrinkerLeaf,
        upper: &ShrinkerLeaf,
    ) -> Result<(), FoliationError> {
        for (i, &y) in lower.y.iter().enumerate() {
            if y < self.y0 {
                continue;
            }
            let Some(r_upper) = leaf_radius_at(upper, y) else {
                continue;
            };
            if lower.u[i] >= r_upper {
                return Err(crossing(lower, Some(upper), y));
            }
        }
        Ok(())
    }
}

fn crossing(lower: &ShrinkerLeaf, upper: Option<&ShrinkerLeaf>, y: f64) -> FoliationError {
    FoliationError::LeavesCross {
        lower: leaf_label(lower),
        upper: upper.map_or_else(|| "the cylinder".to_owned(), leaf_label),
        y,
    }
}

pub(crate) fn leaf_label(leaf: &ShrinkerLeaf) -> String {
    match leaf.kind {
        LeafKind::Cap { a } => format!("cap a = {a:.6}"),
        LeafKind::Trumpet { b } => format!("trumpet b = {b:.6}"),
    }
}

fn strictly_increasing(grid: &[f64]) -> bool {
    grid.iter().all(|v| v.is_finite()) && grid.windows(2).all(|p| p[0] < p[1])
}

fn solve_family<F>(params: &[f64], solve: F) -> Result<Vec<ShrinkerLeaf>, FoliationError>
where
    F: Fn(f64) -> Result<ShrinkerLeaf, ShrinkerError> + Sync,
{
    let workers = thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .clamp(1, 8)
        .min(params.len().max(1));
    solve_family_with(params, solve, workers)
}

/// Strided worker pool: thread w takes parameters w, w + workers, …, so the
/// expensive leaves (large a, small b, at the ends of their grids) spread
/// evenly instead of landing on one thread.
fn solve_family_with<F>(
    params: &[f64],
    solve: F,
    workers: usize,
) -> Result<Vec<ShrinkerLeaf>, FoliationError>
where
    F: Fn(f64) -> Result<ShrinkerLeaf, ShrinkerError> + Sync,
{
    if workers <= 1 || params.len() <= 1 {
        return params
            .iter()
            .map(|&p| solve(p).map_err(FoliationError::from))
            .collect();
    }

    let mut slots: Vec<Option<ShrinkerLeaf>> = (0..params.len()).map(|_| None).collect();
    thread::scope(|scope| -> Result<(), ShrinkerError> {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let solve = &solve;
                scope.spawn(move || -> Result<Vec<(usize, ShrinkerLeaf)>, ShrinkerError> {
                    params
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, &p)| solve(p).map(|leaf| (i, leaf)))
                        .collect()
                })
            })
            .collect();
        for handle in handles {
            for (i, leaf) in handle.join().expect("leaf solver thread panicked")? {
                slots[i] = Some(leaf);
            }
        }
        Ok(())
    })?;
    Ok(slots
        .into_iter()
        .map(|slot| slot.expect("strided solver filled every slot"))
        .collect())
}

/// Left index of the bracketing pair xs[i] ≤ x ≤ xs[i+1] in a sorted slice.
pub(crate) fn bracket(xs: &[f64], x: f64) -> Option<usize> {
    if xs.len() < 4 || x < xs[0] || x > *xs.last().unwrap() {
        return None;
    }
    Some(xs.partition_point(|&t| t <= x).saturating_sub(1))
}

/// Leaf radius at height y from the stored samples, cubic in y.
pub(crate) fn leaf_radius_at(leaf: &ShrinkerLeaf, y: f64) -> Option<f64> {
    let i = bracket(&leaf.y, y)?;
    Some(lagrange_cubic(&leaf.y, &leaf.u, i, y))
}

/// Leaf slope u_y at height y.  Unreliable near cap tips, where the stored
/// slopes blow up; steep queries should go through [`leaf_angle_at`].
pub(crate) fn leaf_slope_at(leaf: &ShrinkerLeaf, y: f64) -> Option<f64> {
    let i = bracket(&leaf.y, y)?;
    Some(lagrange_cubic(&leaf.y, &leaf.u_y, i, y))
}

/// Normal angle φ = atan(u_y) at height y, interpolated in angle space so
/// the tip value −π/2 stays finite.
pub(crate) fn leaf_angle_at(leaf: &ShrinkerLeaf, y: f64) -> Option<f64> {
    let i = bracket(&leaf.y, y)?;
    let lo = (i.saturating_sub(1)).min(leaf.y.len() - 4);
    let ys: &[f64] = &leaf.y[lo..lo + 4];
    let angles = [0, 1, 2, 3].map(|k| leaf.u_y[lo + k].atan());
    Some(lagrange_cubic(ys, &angles, i - lo, y))
}
