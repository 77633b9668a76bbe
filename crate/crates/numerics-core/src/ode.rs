//! Fixed-step classical Runge–Kutta. The shrinker and translator ODEs are
//! smooth away from their singular endpoints (which the callers handle with
//! series seeds), so plain RK4 with a small fixed step is both simple and
//! effectively exact (O(h⁴) with h = 1e−3 puts truncation near roundoff).

/// One RK4 step for y' = f(t, y) with state dimension K.
pub fn rk4_step<const K: usize>(
    f: &impl Fn(f64, &[f64; K]) -> [f64; K],
    t: f64,
    y: &[f64; K],
    h: f64,
) -> [f64; K] {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &add_scaled(y, &k1, 0.5 * h));
    let k3 = f(t + 0.5 * h, &add_scaled(y, &k2, 0.5 * h));
    let k4 = f(t + h, &add_scaled(y, &k3, h));
    let mut out = *y;
    for i in 0..K {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn add_scaled<const K: usize>(y: &[f64; K], dy: &[f64; K], s: f64) -> [f64; K] {
    let mut out = *y;
    for i in 0..K {
        out[i] += s * dy[i];
    }
    out
}
