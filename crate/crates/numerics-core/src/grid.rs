use serde::{Deserialize, Serialize};

use crate::error::NumericsError;

/// Uniform grid on the symmetric interval [−half_length, +half_length].
///
/// The node count is kept odd so y = 0 is always a node and composite Simpson
/// weights apply to the whole grid without a trailing correction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "GridRepr")]
pub struct Grid {
    half_length: f64,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    half_length: f64,
    count: usize,
}

impl Grid {
    pub fn new(half_length: f64, count: usize) -> Result<Self, NumericsError> {
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(NumericsError::BadGridLength(half_length));
        }
        if count < 3 || count % 2 == 0 {
            return Err(NumericsError::BadGridCount(count));
        }
        Ok(Grid { half_length, count })
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / (self.count - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.count);
        -self.half_length + self.spacing() * i as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.node(i)).collect()
    }

    /// Index of the node nearest to `y`, if `y` lies on the grid to within a
    /// tenth of the spacing. Used to snap quadrature windows onto nodes.
    pub fn index_of(&self, y: f64) -> Option<usize> {
        let t = (y + self.half_length) / self.spacing();
        let i = t.round();
        if i < 0.0 || i as usize >= self.count || (t - i).abs() > 0.1 {
            return None;
        }
        Some(i as usize)
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..self.count).map(|i| f(self.node(i))).collect()
    }

    /// Grid with the same half-length and spacing halved (count 2k+1 → 4k+1).
    pub fn refined(&self) -> Grid {
        Grid {
            half_length: self.half_length,
            count: 2 * self.count - 1,
        }
    }
}

impl TryFrom<GridRepr> for Grid {
    type Error = NumericsError;

    fn try_from(repr: GridRepr) -> Result<Self, Self::Error> {
        Grid::new(repr.half_length, repr.count)
    }
}

impl From<Grid> for GridRepr {
    fn from(g: Grid) -> GridRepr {
        GridRepr {
            half_length: g.half_length,
            count: g.count,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_layout_is_symmetric() {
        let g = Grid::new(20.0, 4001).unwrap();
        assert_eq!(g.spacing(), 0.01);
        assert_eq!(g.node(0), -20.0);
        assert_eq!(g.node(2000), 0.0);
        assert_eq!(g.node(4000), 20.0);
    }

    #[test]
    fn rejects_even_counts_and_bad_lengths() {
        assert!(Grid::new(1.0, 4).is_err());
        assert!(Grid::new(1.0, 1).is_err());
        assert!(Grid::new(0.0, 11).is_err());
        assert!(Grid::new(f64::NAN, 11).is_err());
    }

    #[test]
    fn index_of_snaps_to_nodes() {
        let g = Grid::new(2.0, 41).unwrap();
        assert_eq!(g.index_of(0.0), Some(20));
        assert_eq!(g.index_of(-2.0), Some(0));
        assert_eq!(g.index_of(0.1), Some(21));
        assert_eq!(g.index_of(0.15), None); // between nodes
        assert_eq!(g.index_of(2.3), None);
    }

    #[test]
    fn refinement_keeps_nodes() {
        let g = Grid::new(5.0, 51).unwrap();
        let f = g.refined();
        assert_eq!(f.count(), 101);
        assert_eq!(f.spacing(), g.spacing() / 2.0);
        for i in 0..g.count() {
            assert_eq!(f.node(2 * i), g.node(i));
        }
    }

    #[test]
    fn json_shape_is_stable() {
        let g = Grid::new(20.0, 4001).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"half_length":20.0,"count":4001}"#);
        let back: Grid = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Grid>(r#"{"half_length":20.0,"count":4000}"#).is_err());
    }
}
