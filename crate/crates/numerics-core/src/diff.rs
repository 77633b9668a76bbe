//! Finite differences on uniform grids, second-order everywhere.
//!
//! Interior nodes use the usual central stencils. Boundary nodes use
//! one-sided stencils generated by Fornberg's recurrence, sized so the
//! formal order of accuracy stays at two right up to the edge — profiles
//! get differentiated on windows whose endpoints carry real data.

use crate::error::NumericsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOrder {
    First,
    Second,
    Third,
}

impl DiffOrder {
    pub fn order(self) -> usize {
        match self {
            DiffOrder::First => 1,
            DiffOrder::Second => 2,
            DiffOrder::Third => 3,
        }
    }
}

/// Centered first derivative at the middle of three unevenly spaced samples.
pub fn d1_nonuniform(x: &[f64; 3], f: &[f64; 3]) -> f64 {
    let h0 = x[1] - x[0];
    let h1 = x[2] - x[1];
    (f[2] * h0 * h0 - f[0] * h1 * h1 + f[1] * (h1 * h1 - h0 * h0)) / (h0 * h1 * (h0 + h1))
}

/// Centered second derivative at the middle of three unevenly spaced samples.
pub fn d2_nonuniform(x: &[f64; 3], f: &[f64; 3]) -> f64 {
    let h0 = x[1] - x[0];
    let h1 = x[2] - x[1];
    2.0 * (f[0] * h1 - f[1] * (h0 + h1) + f[2] * h0) / (h0 * h1 * (h0 + h1))
}

/// Weights w_k with f^{(m)}(x0) ≈ Σ_k w_k f(x_k) on arbitrary nodes
/// (Fornberg 1988). Only exercised near boundaries, so clarity over speed.
fn fornberg_weights(x0: f64, nodes: &[f64], m: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0_f64; m + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Differentiate uniformly spaced samples. Returns a vector of the same
/// length; accuracy is O(h²) at every node including the ends.
pub fn diff(values: &[f64], spacing: f64, order: DiffOrder) -> Result<Vec<f64>, NumericsError> {
    let m = order.order();
    // One-sided stencil width giving second-order accuracy for the m-th
    // derivative, and the number of nodes at each end that need it.
    let width = m + 3;
    let edge = match order {
        DiffOrder::First | DiffOrder::Second => 1,
        DiffOrder::Third => 2,
    };
    let n = values.len();
    if n < width {
        return Err(NumericsError::LengthMismatch {
            expected: width,
            got: n,
        });
    }
    let h = spacing;
    let mut out = vec![0.0; n];

    for i in edge..n - edge {
        out[i] = match order {
            DiffOrder::First => (values[i + 1] - values[i - 1]) / (2.0 * h),
            DiffOrder::Second => (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h),
            DiffOrder::Third => {
                (values[i + 2] - 2.0 * values[i + 1] + 2.0 * values[i - 1] - values[i - 2])
                    / (2.0 * h * h * h)
            }
        };
    }

    let offsets: Vec<f64> = (0..width).map(|k| k as f64 * h).collect();
    for e in 0..edge {
        let w_lo = fornberg_weights(e as f64 * h, &offsets, m);
        out[e] = w_lo.iter().zip(&values[..width]).map(|(w, v)| w * v).sum();
        // Mirror stencil for the right edge: flip offsets, flip the sign for
        // odd derivative orders.
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let i = n - 1 - e;
        out[i] = sign
            * w_lo
                .iter()
                .zip(values[n - width..].iter().rev())
                .map(|(w, v)| w * v)
                .sum::<f64>();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn samples(f: impl Fn(f64) -> f64, h: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| f(-1.0 + h * i as f64)).collect()
    }

    #[test]
    fn exact_on_low_degree_polynomials() {
        // Each stencil reproduces polynomials up to its exactness degree:
        // quadratics for the first derivative, cubics for the higher ones
        // (the central stencils gain a degree from symmetry, the one-sided
        // Fornberg stencils from their width).
        let h = 0.1;
        let n = 21;
        let q = samples(|y| 2.0 * y * y - y + 5.0, h, n);
        let d1 = diff(&q, h, DiffOrder::First).unwrap();
        let p = samples(|y| y.powi(3) + 2.0 * y * y - y + 5.0, h, n);
        let d2 = diff(&p, h, DiffOrder::Second).unwrap();
        let d3 = diff(&p, h, DiffOrder::Third).unwrap();
        for i in 0..n {
            let y = -1.0 + h * i as f64;
            assert_relative_eq!(d1[i], 4.0 * y - 1.0, epsilon = 1e-10);
            assert_relative_eq!(d2[i], 6.0 * y + 4.0, epsilon = 1e-9);
            assert_relative_eq!(d3[i], 6.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn richardson_ratio_is_four_on_sin() {
        // Halving h must shrink the worst-case error by ≈ 4 for a scheme of
        // order exactly two, boundaries included.
        for order in [DiffOrder::First, DiffOrder::Second, DiffOrder::Third] {
            let exact = |y: f64| match order {
                DiffOrder::First => y.cos(),
                DiffOrder::Second => -y.sin(),
                DiffOrder::Third => -y.cos(),
            };
            let err = |h: f64| -> f64 {
                let n = (2.0 / h).round() as usize + 1;
                let f = samples(|y| y.sin(), h, n);
                let d = diff(&f, h, order).unwrap();
                (0..n)
                    .map(|i| (d[i] - exact(-1.0 + h * i as f64)).abs())
                    .fold(0.0, f64::max)
            };
            let ratio = err(0.02) / err(0.01);
            assert!(
                (3.3..4.7).contains(&ratio),
                "{order:?}: error ratio {ratio}"
            );
        }
    }

    #[test]
    fn too_few_samples_is_an_error() {
        assert!(diff(&[1.0, 2.0, 3.0], 0.1, DiffOrder::First).is_err());
        assert!(diff(&[1.0; 5], 0.1, DiffOrder::Third).is_err());
    }

    #[test]
    fn uneven_stencils_are_exact_on_quadratics() {
        let x = [0.3, 0.45, 0.7];
        let q = |t: f64| 1.5 * t * t - 2.0 * t + 0.25;
        let f = [q(x[0]), q(x[1]), q(x[2])];
        assert_relative_eq!(d1_nonuniform(&x, &f), 3.0 * x[1] - 2.0, epsilon = 1e-14);
        assert_relative_eq!(d2_nonuniform(&x, &f), 3.0, epsilon = 1e-13);
    }
}
