//! Finite-difference monotonicity of the functional along a recorded run.

use serde::Serialize;

use crate::HuiskenError;

/// dℋ/dτ samples of a run, with an optional cross-check against recorded
/// dissipation values.
#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    /// (τ, dℋ/dτ) per record; centered differences inside, one-sided at the
    /// ends.
    pub samples: Vec<(f64, f64)>,
    pub max_dhdtau: f64,
    /// |dℋ/dτ + dissipation| per record.  Along the rescaled flow
    /// dℋ/dτ = −∫ (H̄ + ½X·N)² dμ̄ exactly, so the defect measures time
    /// discretization plus quadrature error.
    pub defect: Option<Vec<f64>>,
    pub max_defect: Option<f64>,
}

/// Differentiate a recorded ℋ series and, when the run carries dissipation
/// integrals, report the defect between the two sides of the monotonicity
/// identity.
pub fn monotonicity_series(
    taus: &[f64],
    values: &[f64],
    dissipation: Option<&[f64]>,
) -> Result<MonotonicityReport, HuiskenError> {
    let m = taus.len();
    if m < 3 {
        return Err(HuiskenError::TooFewRecords { min: 3, got: m });
    }
    if values.len() != m {
        return Err(HuiskenError::LengthMismatch {
            expected: m,
            got: values.len(),
        });
    }
    if let Some(d) = dissipation {
        if d.len() != m {
            return Err(HuiskenError::LengthMismatch {
                expected: m,
                got: d.len(),
            });
        }
    }

    let deriv_at = |i: usize| -> f64 {
        if i == 0 {
            (values[1] - values[0]) / (taus[1] - taus[0])
        } else if i == m - 1 {
            (values[m - 1] - values[m - 2]) / (taus[m - 1] - taus[m - 2])
        } else {
            (values[i + 1] - values[i - 1]) / (taus[i + 1] - taus[i - 1])
        }
    };
    let samples: Vec<(f64, f64)> = (0..m).map(|i| (taus[i], deriv_at(i))).collect();
    let max_dhdtau = samples.iter().map(|&(_, d)| d).fold(f64::MIN, f64::max);

    let defect = dissipation.map(|d| {
        samples
            .iter()
            .zip(d)
            .map(|(&(_, dh), &diss)| (dh + diss).abs())
            .collect::<Vec<f64>>()
    });
    let max_defect = defect
        .as_ref()
        .map(|d| d.iter().copied().fold(0.0, f64::max));

    Ok(MonotonicityReport {
        samples,
        max_dhdtau,
        defect,
        max_defect,
    })
}
