//! Fits of the neutral-mode amplitude against its predicted ancient dynamics.
//!
//! The neutral coefficient of an ancient oval obeys α′ = −4α² + o(α²) with
//! α ≈ 1/(4τ), in the sign convention of the raw projection onto ψ₂ = y² − 2.
//! The orientation of ψ₂ is a basis choice, so the fits work with the
//! oriented amplitude a = −α > 0 (flipping the whole series if needed), for
//! which a′ = 4a² + o(a²) and a ≈ −1/(4τ) = 1/(4|τ|). Both fit statistics
//! are medians, so a few noisy records at the ends cannot skew them.

use serde::Serialize;

use crate::SpectralError;

#[derive(Debug, Clone, Serialize)]
pub struct AlphaTrack {
    /// median a′/a² over interior records; the dynamics predict 4.
    pub slope_check: f64,
    /// median 4|τ|·a; the ancient asymptote predicts 1.
    pub alpha_fit: f64,
    /// Whether the raw α series was negated to make the amplitude positive.
    pub flipped: bool,
    /// Oriented amplitudes used by the fits.
    pub amplitudes: Vec<f64>,
}

const MIN_RECORDS: usize = 5;

pub fn track_alpha(taus: &[f64], alphas: &[f64]) -> Result<AlphaTrack, SpectralError> {
    if taus.len() != alphas.len() || taus.len() < MIN_RECORDS {
        return Err(SpectralError::TooFewRecords {
            min: MIN_RECORDS,
            got: taus.len().min(alphas.len()),
        });
    }
    for (i, &a) in alphas.iter().enumerate() {
        if a == 0.0 {
            return Err(SpectralError::AlphaVanishes { tau: taus[i] });
        }
    }
    let flipped = {
        let mut sorted: Vec<f64> = alphas.to_vec();
        sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        sorted[sorted.len() / 2] < 0.0
    };
    let sign = if flipped { -1.0 } else { 1.0 };
    let amplitudes: Vec<f64> = alphas.iter().map(|&a| sign * a).collect();
    if let Some(i) = amplitudes.iter().position(|&a| a < 0.0) {
        return Err(SpectralError::AlphaSignChange { tau: taus[i] });
    }

    let mut slopes = Vec::with_capacity(amplitudes.len() - 2);
    for i in 1..amplitudes.len() - 1 {
        let da = (amplitudes[i + 1] - amplitudes[i - 1]) / (taus[i + 1] - taus[i - 1]);
        slopes.push(da / (amplitudes[i] * amplitudes[i]));
    }
    let slope_check = median(&mut slopes);

    let mut fits: Vec<f64> = taus
        .iter()
        .zip(&amplitudes)
        .map(|(&t, &a)| 4.0 * t.abs() * a)
        .collect();
    let alpha_fit = median(&mut fits);

    Ok(AlphaTrack {
        slope_check,
        alpha_fit,
        flipped,
        amplitudes,
    })
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}
