//! Which spectral part drives a deviation series.
//!
//! Along a rescaled flow the unstable share grows like e^τ, the neutral
//! share drifts algebraically, and the stable share decays. Classification
//! therefore looks at the trailing half of the series: medians decide which
//! share dominates, and for a putative unstable run the logarithmic slope of
//! V₊ is checked against its eigenvalue 1.

use serde::Serialize;

use crate::project::SpectralSplit;
use crate::SpectralError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModeDominance {
    /// ψ₀ share dominates and grows at its eigenvalue rate.
    Plus,
    /// Neutral ψ₂ share dominates.
    Zero,
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominanceReport {
    pub dominance: ModeDominance,
    /// median V₀ / (V₊ + V₋) over the trailing window.
    pub zero_ratio: f64,
    /// median V₊ / (V₀ + V₋) over the trailing window.
    pub plus_ratio: f64,
    /// Least-squares slope of ln V₊ against τ (NaN when V₊ hits zero).
    pub plus_log_slope: f64,
    /// Records in the trailing window.
    pub window: usize,
}

const MIN_RECORDS: usize = 10;
const DOMINANCE_FACTOR: f64 = 3.0;

pub fn classify_modes(series: &[(f64, SpectralSplit)]) -> Result<DominanceReport, SpectralError> {
    if series.len() < MIN_RECORDS {
        return Err(SpectralError::TooFewRecords {
            min: MIN_RECORDS,
            got: series.len(),
        });
    }
    let tail = &series[series.len() / 2..];
    let zero_ratio = median(tail.iter().map(|(_, s)| {
        s.v_zero / (s.v_plus + s.v_minus).max(f64::MIN_POSITIVE)
    }));
    let plus_ratio = median(tail.iter().map(|(_, s)| {
        s.v_plus / (s.v_zero + s.v_minus).max(f64::MIN_POSITIVE)
    }));
    let plus_log_slope = log_slope(tail);

    let dominance = if zero_ratio >= DOMINANCE_FACTOR {
        ModeDominance::Zero
    } else if plus_ratio >= DOMINANCE_FACTOR && (plus_log_slope - 1.0).abs() <= 0.2 {
        ModeDominance::Plus
    } else {
        ModeDominance::Undetermined
    };

    Ok(DominanceReport {
        dominance,
        zero_ratio,
        plus_ratio,
        plus_log_slope,
        window: tail.len(),
    })
}

fn median(values: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if v.is_empty() {
        return f64::NAN;
    }
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

fn log_slope(tail: &[(f64, SpectralSplit)]) -> f64 {
    let pts: Vec<(f64, f64)> = tail
        .iter()
        .filter(|(_, s)| s.v_plus > 0.0)
        .map(|(t, s)| (*t, s.v_plus.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let (st, sl): (f64, f64) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (tm, lm) = (st / n, sl / n);
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, l) in &pts {
        num += (t - tm) * (l - lm);
        den += (t - tm) * (t - tm);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(v_plus: f64, v_zero: f64, v_minus: f64) -> SpectralSplit {
        SpectralSplit {
            alpha: v_zero / 4.0,
            v_plus,
            v_zero,
            v_minus,
            norm: (v_plus * v_plus + v_zero * v_zero + v_minus * v_minus).sqrt(),
        }
    }

    #[test]
    fn neutral_dominated_series() {
        let series: Vec<(f64, SpectralSplit)> = (0..40)
            .map(|k| {
                let tau = -50.0 + k as f64;
                (tau, split(1e-6, 1.0 / (4.0 * tau.abs()), 1e-5))
            })
            .collect();
        let rep = classify_modes(&series).unwrap();
        assert_eq!(rep.dominance, ModeDominance::Zero);
        assert!(rep.zero_ratio > 100.0);
    }

    #[test]
    fn unstable_series_needs_the_right_growth_rate() {
        let grow: Vec<(f64, SpectralSplit)> = (0..40)
            .map(|k| {
                let tau = -20.0 + 0.25 * k as f64;
                (tau, split(tau.exp(), 1e-12, 1e-12))
            })
            .collect();
        let rep = classify_modes(&grow).unwrap();
        assert_eq!(rep.dominance, ModeDominance::Plus);
        assert!((rep.plus_log_slope - 1.0).abs() < 1e-6);

        // Same dominance pattern but the wrong clock: not classified Plus.
        let slow: Vec<(f64, SpectralSplit)> = (0..40)
            .map(|k| {
                let tau = -20.0 + 0.25 * k as f64;
                (tau, split((0.3 * tau).exp(), 1e-12, 1e-12))
            })
            .collect();
        let rep = classify_modes(&slow).unwrap();
        assert_eq!(rep.dominance, ModeDominance::Undetermined);
    }

    #[test]
    fn short_series_is_refused() {
        let series: Vec<(f64, SpectralSplit)> =
            (0..5).map(|k| (k as f64, split(1.0, 1.0, 1.0))).collect();
        assert!(matches!(
            classify_modes(&series),
            Err(SpectralError::TooFewRecords { .. })
        ));
    }
}
