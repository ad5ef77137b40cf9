//! Lagrange interpolation on uniform grids.

use num_complex::Complex64 as C64;

/// Weights of the `N`-point Lagrange stencil at local coordinate `xi`
/// (measured in grid units from the first stencil node).
pub fn lagrange_weights<const N: usize>(xi: f64) -> [f64; N] {
    let mut w = [0.0; N];
    for i in 0..N {
        let mut num = 1.0;
        let mut den = 1.0;
        for j in 0..N {
            if j != i {
                num *= xi - j as f64;
                den *= i as f64 - j as f64;
            }
        }
        w[i] = num / den;
    }
    w
}

/// Stencil start index and local coordinate for a query at fractional grid
/// position `t` on a clamped axis of length `n`.
pub fn stencil_clamped<const N: usize>(t: f64, n: usize) -> (usize, f64) {
    debug_assert!(n >= N);
    let centered = t.floor() as isize - (N as isize / 2 - 1);
    let j0 = centered.clamp(0, n as isize - N as isize) as usize;
    (j0, t - j0 as f64)
}

/// Interpolate a complex lane at fractional position `t` (grid units);
/// queries outside the grid by more than one cell return zero.
pub fn interp_lane_clamped<const N: usize>(lane: &[C64], stride: usize, t: f64) -> C64 {
    let n = lane.len() / stride;
    if t < -1.0 || t > n as f64 {
        return C64::new(0.0, 0.0);
    }
    let (j0, xi) = stencil_clamped::<N>(t, n);
    let w = lagrange_weights::<N>(xi);
    let mut acc = C64::new(0.0, 0.0);
    for (i, &wi) in w.iter().enumerate() {
        acc += lane[(j0 + i) * stride] * wi;
    }
    acc
}

/// Separable 2-D interpolation on a row-major `n0 × n1` array.
pub fn interp2<const N: usize>(values: &[C64], n0: usize, n1: usize, t0: f64, t1: f64) -> C64 {
    if t0 < -1.0 || t0 > n0 as f64 || t1 < -1.0 || t1 > n1 as f64 {
        return C64::new(0.0, 0.0);
    }
    let (j0, xi0) = stencil_clamped::<N>(t0, n0);
    let (j1, xi1) = stencil_clamped::<N>(t1, n1);
    let w0 = lagrange_weights::<N>(xi0);
    let w1 = lagrange_weights::<N>(xi1);
    let mut acc = C64::new(0.0, 0.0);
    for (i, &wi) in w0.iter().enumerate() {
        let row = (j0 + i) * n1 + j1;
        let mut racc = C64::new(0.0, 0.0);
        for (j, &wj) in w1.iter().enumerate() {
            racc += values[row + j] * wj;
        }
        acc += racc * wi;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_reproduce_nodes() {
        let w = lagrange_weights::<6>(2.0);
        for (i, &wi) in w.iter().enumerate() {
            let expect = if i == 2 { 1.0 } else { 0.0 };
            assert!((wi - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn interpolates_smooth_function_to_high_order() {
        let n = 64;
        let h = 0.25;
        let lane: Vec<C64> =
            (0..n).map(|i| C64::new(((i as f64 - 32.0) * h).sin(), 0.0)).collect();
        for &x in &[1.3, -2.77, 5.21] {
            let t = x / h + 32.0;
            let got = interp_lane_clamped::<6>(&lane, 1, t);
            assert!((got.re - x.sin()).abs() < 3e-6, "{x}");
        }
    }
}
