//! Even Hermite-type eigenfunctions of ℒf = f_yy − (y/2) f_y + f.
//!
//! With the normalization that the leading coefficient is one,
//! ψ_{2m}(y) = y^{2m} + c_{m−1} y^{2m−2} + … satisfies ℒψ_{2m} = (1 − m)ψ_{2m};
//! the coefficients follow from matching powers in the eigenvalue equation:
//!
//! ```text
//! c_{k−1} = − 2k(2k−1) / (m − k + 1) · c_k,   c_m = 1.
//! ```
//!
//! Everything about the basis is available in closed form: the Gaussian
//! moments ∫ y^{2k} e^{-y²/4} dy = (2k−1)!! 2^k · 2√π give exact norms and
//! inner products, which the quadrature layer is tested against.

use numerics_core::{weighted_inner, Grid, NumericsError};

pub const TWO_SQRT_PI: f64 = 3.544_907_701_811_032;

/// One eigenfunction ψ_{2m}, stored as dense power-of-y coefficients.
#[derive(Debug, Clone)]
pub struct HermiteMode {
    /// 2m, the polynomial degree.
    pub degree: u32,
    /// coeffs[j] multiplies y^j; odd entries are zero.
    pub coeffs: Vec<f64>,
    /// Eigenvalue 1 − m of ℒ.
    pub eigenvalue: f64,
    /// ‖ψ_{2m}‖² in L²(e^{-y²/4} dy), from the moment formula.
    pub norm_sq: f64,
}

impl HermiteMode {
    pub fn eval(&self, y: f64) -> f64 {
        poly_eval(&self.coeffs, y)
    }

    pub fn sample(&self, grid: &Grid) -> Vec<f64> {
        grid.sample(|y| self.eval(y))
    }
}

/// The even modes ψ₀, ψ₂, …, ψ_{2 max_m}.
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    modes: Vec<HermiteMode>,
}

impl HermiteBasis {
    pub fn new(max_m: u32) -> Self {
        let modes = (0..=max_m)
            .map(|m| {
                let mut c = vec![0.0; m as usize + 1];
                c[m as usize] = 1.0;
                for k in (1..=m as usize).rev() {
                    c[k - 1] =
                        -(2.0 * k as f64) * (2.0 * k as f64 - 1.0) / (m as f64 - k as f64 + 1.0)
                            * c[k];
                }
                let mut coeffs = vec![0.0; 2 * m as usize + 1];
                for (k, &v) in c.iter().enumerate() {
                    coeffs[2 * k] = v;
                }
                let norm_sq = weighted_poly_inner(&coeffs, &coeffs);
                HermiteMode {
                    degree: 2 * m,
                    coeffs,
                    eigenvalue: 1.0 - m as f64,
                    norm_sq,
                }
            })
            .collect();
        HermiteBasis { modes }
    }

    /// Mode ψ_{2m} by half-index m.
    pub fn mode(&self, m: usize) -> &HermiteMode {
        &self.modes[m]
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[HermiteMode] {
        &self.modes
    }

    /// Largest relative off-diagonal Gram entry under quadrature on `grid` —
    /// the orthogonality defect the acceptance gate bounds.
    pub fn orthogonality_defect(&self, grid: &Grid) -> Result<f64, NumericsError> {
        let sampled: Vec<Vec<f64>> = self.modes.iter().map(|m| m.sample(grid)).collect();
        let mut worst = 0.0_f64;
        for i in 0..sampled.len() {
            for j in 0..i {
                let g = weighted_inner(&sampled[i], &sampled[j], grid)?;
                let scale = (self.modes[i].norm_sq * self.modes[j].norm_sq).sqrt();
                worst = worst.max(g.abs() / scale);
            }
        }
        Ok(worst)
    }
}

/// ∫ y^{2k} e^{-y²/4} dy = (2k−1)!! · 2^k · 2√π.
pub fn gaussian_moment(k: u32) -> f64 {
    let mut acc = TWO_SQRT_PI * 2.0_f64.powi(k as i32);
    let mut j = 2 * k as i64 - 1;
    while j >= 3 {
        acc *= j as f64;
        j -= 2;
    }
    acc
}

/// Exact ⟨p, q⟩ in L²(e^{-y²/4}) for polynomials given by coefficients.
pub fn weighted_poly_inner(p: &[f64], q: &[f64]) -> f64 {
    let prod = poly_mul(p, q);
    let mut acc = 0.0;
    for (j, &c) in prod.iter().enumerate() {
        if c != 0.0 && j % 2 == 0 {
            acc += c * gaussian_moment(j as u32 / 2);
        }
    }
    acc
}

pub fn poly_eval(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c)
}

pub fn poly_mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// ℒp = p″ − (y/2) p′ + p in coefficient space (exact).
pub fn poly_apply_l(p: &[f64]) -> Vec<f64> {
    let n = p.len();
    let mut out = vec![0.0; n];
    for j in 0..n {
        let a = p[j];
        if a == 0.0 {
            continue;
        }
        // +p and −(y/2)p′ keep degree j; p″ drops to j−2.
        out[j] += a * (1.0 - j as f64 / 2.0);
        if j >= 2 {
            out[j - 2] += a * (j as f64) * (j as f64 - 1.0);
        }
    }
    out
}
