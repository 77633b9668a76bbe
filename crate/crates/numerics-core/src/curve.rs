//! Arclength chart of a rotationally symmetric hypersurface.
//!
//! The graph chart r = u(y) degenerates where the surface caps off (u_y → ∞
//! at a tip on the axis), so everything that must stay regular through the
//! tips — curve flows, shrinker caps, Huisken integrals — works on a sampled
//! profile curve s ↦ (y(s), r(s)) instead. Orientation runs from the left
//! tip toward the right tip; θ is the tangent angle measured from the +y
//! axis, so y_s = cos θ, r_s = sin θ, and an axis-to-axis oval has θ = +π/2
//! at its left tip and −π/2 at its right tip.

use serde::{Deserialize, Serialize};

use crate::dimension::Dimension;
use crate::error::NumericsError;
use crate::grid::Grid;
use crate::interp::{lagrange_cubic, MonotoneCubic};
use crate::profile::RadialProfile;

/// How the sampled curve terminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ends {
    /// Both endpoints on the rotation axis (closed oval). Tangents there are
    /// exactly radial by symmetry.
    Axis,
    /// Endpoints held off-axis (truncated cylinder, leaf segment): boundary
    /// samples are data, not axis points.
    Clamped,
}

#[derive(Debug, Clone)]
pub struct ArcCurve {
    y: Vec<f64>,
    r: Vec<f64>,
    theta: Vec<f64>,
    n: Dimension,
    ends: Ends,
    symmetric: bool,
}

impl ArcCurve {
    /// Build from position samples; tangent angles are derived from centered
    /// chords (tips pinned to ±π/2 for axis ends).
    pub fn from_positions(
        y: Vec<f64>,
        r: Vec<f64>,
        n: Dimension,
        ends: Ends,
        symmetric: bool,
    ) -> Result<Self, NumericsError> {
        let m = y.len();
        if m < 5 {
            return Err(NumericsError::CurveTooShort { min: 5, got: m });
        }
        if r.len() != m {
            return Err(NumericsError::LengthMismatch {
                expected: m,
                got: r.len(),
            });
        }
        for i in 0..m {
            if !(y[i].is_finite() && r[i].is_finite()) {
                return Err(NumericsError::NotFinite("curve sample"));
            }
        }
        let mut r = r;
        let scale = y
            .iter()
            .chain(r.iter())
            .fold(0.0_f64, |a, &v| a.max(v.abs()));
        match ends {
            Ends::Axis => {
                for &idx in &[0, m - 1] {
                    if r[idx].abs() > 1e-9 * scale.max(1.0) {
                        return Err(NumericsError::EndpointOffAxis {
                            index: idx,
                            r: r[idx],
                        });
                    }
                    r[idx] = 0.0;
                }
            }
            Ends::Clamped => {
                if r[0] <= 0.0 {
                    return Err(NumericsError::NegativeRadius { index: 0, r: r[0] });
                }
                if r[m - 1] <= 0.0 {
                    return Err(NumericsError::NegativeRadius {
                        index: m - 1,
                        r: r[m - 1],
                    });
                }
            }
        }
        if let Some(i) = (1..m - 1).find(|&i| r[i] <= 0.0) {
            return Err(NumericsError::NegativeRadius { index: i, r: r[i] });
        }
        for i in 0..m - 1 {
            let dy = y[i + 1] - y[i];
            let dr = r[i + 1] - r[i];
            if dy * dy + dr * dr == 0.0 {
                return Err(NumericsError::DegenerateSegment(i, i + 1));
            }
        }

        let mut theta = vec![0.0; m];
        for i in 1..m - 1 {
            theta[i] = (r[i + 1] - r[i - 1]).atan2(y[i + 1] - y[i - 1]);
        }
        match ends {
            Ends::Axis => {
                theta[0] = std::f64::consts::FRAC_PI_2;
                theta[m - 1] = -std::f64::consts::FRAC_PI_2;
            }
            Ends::Clamped => {
                theta[0] = (r[1] - r[0]).atan2(y[1] - y[0]);
                theta[m - 1] = (r[m - 1] - r[m - 2]).atan2(y[m - 1] - y[m - 2]);
            }
        }

        Ok(ArcCurve {
            y,
            r,
            theta,
            n,
            ends,
            symmetric,
        })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn n(&self) -> Dimension {
        self.n
    }

    pub fn ends(&self) -> Ends {
        self.ends
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn point(&self, i: usize) -> (f64, f64) {
        (self.y[i], self.r[i])
    }

    /// (left tip y, right tip y).
    pub fn tips(&self) -> (f64, f64) {
        (self.y[0], self.y[self.y.len() - 1])
    }

    pub fn chord_lengths(&self) -> Vec<f64> {
        (0..self.len() - 1)
            .map(|i| {
                let dy = self.y[i + 1] - self.y[i];
                let dr = self.r[i + 1] - self.r[i];
                (dy * dy + dr * dr).sqrt()
            })
            .collect()
    }

    pub fn cumulative_arclength(&self) -> Vec<f64> {
        let mut s = Vec::with_capacity(self.len());
        s.push(0.0);
        let mut acc = 0.0;
        for c in self.chord_lengths() {
            acc += c;
            s.push(acc);
        }
        s
    }

    pub fn arclength(&self) -> f64 {
        self.chord_lengths().iter().sum()
    }

    /// Resample to `count` nodes at uniform chord-arclength via four-point
    /// Lagrange cubics. Endpoints are preserved exactly.
    pub fn resample(&self, count: usize) -> Result<ArcCurve, NumericsError> {
        if count < 5 {
            return Err(NumericsError::CurveTooShort { min: 5, got: count });
        }
        let s = self.cumulative_arclength();
        let total = *s.last().unwrap();
        let m = self.len();
        let mut ny = Vec::with_capacity(count);
        let mut nr = Vec::with_capacity(count);
        ny.push(self.y[0]);
        nr.push(self.r[0]);
        let mut seg = 0usize;
        for j in 1..count - 1 {
            let t = total * j as f64 / (count - 1) as f64;
            while seg + 2 < m && s[seg + 1] <= t {
                seg += 1;
            }
            ny.push(lagrange_cubic(&s, &self.y, seg, t));
            let mut rv = lagrange_cubic(&s, &self.r, seg, t);
            // A one-sided cubic can undershoot zero within the first segment
            // of an axis tip, where r(s) has a genuine corner in its even
            // extension. Fall back to the chord there.
            if rv <= 0.0 {
                let w = (t - s[seg]) / (s[seg + 1] - s[seg]);
                rv = self.r[seg] * (1.0 - w) + self.r[seg + 1] * w;
            }
            nr.push(rv);
        }
        ny.push(self.y[m - 1]);
        nr.push(self.r[m - 1]);
        ArcCurve::from_positions(ny, nr, self.n, self.ends, self.symmetric)
    }

    /// Average the curve with its mirror image across the y = 0 plane.
    /// Resamples first so that node j and node N−1−j sit at mirrored
    /// arclength fractions.
    pub fn symmetrized(&self) -> Result<ArcCurve, NumericsError> {
        let c = self.resample(self.len())?;
        let m = c.len();
        let mut y = vec![0.0; m];
        let mut r = vec![0.0; m];
        for j in 0..m {
            let k = m - 1 - j;
            y[j] = 0.5 * (c.y[j] - c.y[k]);
            r[j] = 0.5 * (c.r[j] + c.r[k]);
        }
        ArcCurve::from_positions(y, r, self.n, self.ends, self.symmetric)
    }

    /// Resample the curve as a graph r = u(y) on the given grid. Requires y
    /// to be strictly increasing along the sample range that covers the grid
    /// (true for convex ovals) and the grid to sit strictly between the tips.
    pub fn graph_profile(&self, grid: Grid) -> Result<RadialProfile, NumericsError> {
        let lo = grid.node(0);
        let hi = grid.node(grid.count() - 1);
        if lo <= self.y[0] || hi >= self.y[self.len() - 1] {
            return Err(NumericsError::OutOfRange(if lo <= self.y[0] { lo } else { hi }));
        }
        let interp = MonotoneCubic::new(&self.y, &self.r)?;
        let u = grid.sample(|yq| interp.eval(yq).unwrap_or(f64::NAN));
        RadialProfile::new(grid, u, self.n)
    }

    /// Slope u_y at a graph point, from the stored tangent angle.
    pub fn slope_at(&self, i: usize) -> f64 {
        self.theta[i].tan()
    }
}

/// Sample a centered sphere of the given radius as an axis-to-axis curve.
/// Uniform in polar angle, which is also uniform in arclength.
pub fn sphere_curve(radius: f64, count: usize, n: Dimension) -> ArcCurve {
    let mut y = Vec::with_capacity(count);
    let mut r = Vec::with_capacity(count);
    for i in 0..count {
        let phi = std::f64::consts::PI * (1.0 - i as f64 / (count - 1) as f64);
        y.push(radius * phi.cos());
        r.push(radius * phi.sin());
    }
    ArcCurve::from_positions(y, r, n, Ends::Axis, true).expect("sphere samples are valid")
}

/// Sample the straight cylinder r = √(2(n−1)) on |y| ≤ half_length as a
/// clamped curve.
pub fn cylinder_curve(half_length: f64, count: usize, n: Dimension) -> ArcCurve {
    let c = n.cylinder_radius();
    let y: Vec<f64> = (0..count)
        .map(|i| -half_length + 2.0 * half_length * i as f64 / (count - 1) as f64)
        .collect();
    let r = vec![c; count];
    ArcCurve::from_positions(y, r, n, Ends::Clamped, true).expect("cylinder samples are valid")
}
