use serde::Serialize;

use crate::dimension::Dimension;
use crate::error::NumericsError;
use crate::grid::Grid;

/// Graph chart of a rotationally symmetric hypersurface: r = u(y) > 0 sampled
/// on a uniform grid. Valid wherever the surface is a graph over the axis —
/// away from tips, where [`crate::ArcCurve`] takes over.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    grid: Grid,
    u: Vec<f64>,
    n: Dimension,
}

impl RadialProfile {
    pub fn new(grid: Grid, u: Vec<f64>, n: Dimension) -> Result<Self, NumericsError> {
        if u.len() != grid.count() {
            return Err(NumericsError::LengthMismatch {
                expected: grid.count(),
                got: u.len(),
            });
        }
        for (i, &v) in u.iter().enumerate() {
            if !v.is_finite() {
                return Err(NumericsError::NotFinite("profile sample"));
            }
            if v <= 0.0 {
                return Err(NumericsError::NonPositiveProfile {
                    y: grid.node(i),
                    u: v,
                });
            }
        }
        Ok(RadialProfile { grid, u, n })
    }

    pub fn from_fn(grid: Grid, n: Dimension, f: impl Fn(f64) -> f64) -> Result<Self, NumericsError> {
        let u = grid.sample(f);
        RadialProfile::new(grid, u, n)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn n(&self) -> Dimension {
        self.n
    }

    /// Relative deviation from the cylinder: v with u = √(2(n−1)) (1 + v).
    pub fn deviation(&self) -> Vec<f64> {
        let c = self.n.cylinder_radius();
        self.u.iter().map(|&u| u / c - 1.0).collect()
    }

    /// Discrete concavity check on the second differences of u.
    ///
    /// A smooth concave profile sampled on a grid can still produce slightly
    /// positive second-difference quotients, of size O(h²) · scale; the
    /// tolerance 10 h² max|u| budgets for exactly that truncation noise, so
    /// genuinely convex spots get flagged while discretization wiggle does
    /// not.
    pub fn concavity_report(&self) -> ConcavityReport {
        let h = self.grid.spacing();
        let umax = self.u.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
        let tol = 10.0 * h * h * umax;
        let mut worst = f64::NEG_INFINITY;
        let mut worst_y = f64::NAN;
        for i in 1..self.u.len() - 1 {
            let q = (self.u[i + 1] - 2.0 * self.u[i] + self.u[i - 1]) / (h * h);
            if q > worst {
                worst = q;
                worst_y = self.grid.node(i);
            }
        }
        ConcavityReport {
            max_second_difference: worst,
            at_y: worst_y,
            tol,
            is_concave: worst <= tol,
        }
    }
}

/// Outcome of [`RadialProfile::concavity_report`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConcavityReport {
    /// Largest second-difference quotient (u_{i+1} − 2u_i + u_{i−1}) / h².
    pub max_second_difference: f64,
    /// Node where the maximum occurs.
    pub at_y: f64,
    /// Truncation-noise budget 10 h² max|u|.
    pub tol: f64,
    pub is_concave: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim2() -> Dimension {
        Dimension::new(2).unwrap()
    }

    #[test]
    fn sphere_cap_is_concave() {
        let grid = Grid::new(1.5, 301).unwrap();
        let p = RadialProfile::from_fn(grid, dim2(), |y| (4.0 - y * y).sqrt()).unwrap();
        let rep = p.concavity_report();
        assert!(rep.is_concave, "{rep:?}");
        assert!(rep.max_second_difference < 0.0);
    }

    #[test]
    fn cylinder_is_borderline_concave() {
        let grid = Grid::new(10.0, 501).unwrap();
        let p = RadialProfile::from_fn(grid, dim2(), |_| dim2().cylinder_radius()).unwrap();
        let rep = p.concavity_report();
        assert!(rep.is_concave);
        assert!(rep.max_second_difference.abs() < 1e-9);
    }

    #[test]
    fn parabola_opening_up_is_flagged() {
        let grid = Grid::new(1.0, 101).unwrap();
        let p = RadialProfile::from_fn(grid, dim2(), |y| 1.0 + y * y).unwrap();
        let rep = p.concavity_report();
        assert!(!rep.is_concave);
        assert!((rep.max_second_difference - 2.0).abs() < 1e-8);
    }

    #[test]
    fn positivity_is_enforced() {
        let grid = Grid::new(2.0, 11).unwrap();
        assert!(matches!(
            RadialProfile::from_fn(grid, dim2(), |y| 1.0 - y),
            Err(NumericsError::NonPositiveProfile { .. })
        ));
    }

    #[test]
    fn deviation_vanishes_on_the_cylinder() {
        let grid = Grid::new(5.0, 101).unwrap();
        let p = RadialProfile::from_fn(grid, dim2(), |_| dim2().cylinder_radius()).unwrap();
        assert!(p.deviation().iter().all(|&v| v.abs() < 1e-15));
    }
}
