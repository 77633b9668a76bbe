use serde::{Deserialize, Serialize};

use crate::error::NumericsError;

/// Rotational symmetry class O(1) × O(n) acting on R^{n+1}.
///
/// `n` counts the dimensions of the rotating sphere factor, so the
/// hypersurface itself is n-dimensional. The two model radii recur in every
/// formula in the workspace: the self-shrinking cylinder has radius
/// √(2(n−1)) and the self-shrinking sphere √(2n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self, NumericsError> {
        if n < 2 {
            return Err(NumericsError::DimensionTooSmall(n));
        }
        Ok(Dimension(n))
    }

    pub fn n(self) -> u32 {
        self.0
    }

    pub fn nf(self) -> f64 {
        f64::from(self.0)
    }

    /// Radius √(2(n−1)) of the stationary cylinder under rescaled flow.
    pub fn cylinder_radius(self) -> f64 {
        (2.0 * (self.nf() - 1.0)).sqrt()
    }

    /// Radius √(2n) of the stationary sphere under rescaled flow.
    pub fn sphere_radius(self) -> f64 {
        (2.0 * self.nf()).sqrt()
    }
}

impl TryFrom<u32> for Dimension {
    type Error = NumericsError;

    fn try_from(n: u32) -> Result<Self, Self::Error> {
        Dimension::new(n)
    }
}

impl From<Dimension> for u32 {
    fn from(d: Dimension) -> u32 {
        d.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_dimensions() {
        assert!(Dimension::new(0).is_err());
        assert!(Dimension::new(1).is_err());
        assert!(Dimension::new(2).is_ok());
    }

    #[test]
    fn model_radii() {
        let d = Dimension::new(2).unwrap();
        assert_eq!(d.cylinder_radius(), 2.0_f64.sqrt());
        assert_eq!(d.sphere_radius(), 2.0);

        let d = Dimension::new(5).unwrap();
        assert_eq!(d.cylinder_radius(), 8.0_f64.sqrt());
        assert_eq!(d.sphere_radius(), 10.0_f64.sqrt());
    }

    #[test]
    fn serde_round_trip() {
        let d = Dimension::new(3).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, "3");
        let back: Dimension = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<Dimension>("1").is_err());
    }
}
