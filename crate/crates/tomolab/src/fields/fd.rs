//! Finite-difference weights on arbitrary node sets (Fornberg's recursion).

/// Weights for the m-th derivative at `z` from samples at `x`.
///
/// Returns `w` such that f^(m)(z) ≈ Σ_i w[i] f(x[i]). Exact for polynomials of
/// degree ≤ x.len() − 1.
pub fn fornberg_weights(z: f64, x: &[f64], m: usize) -> Vec<f64> {
    let n = x.len();
    assert!(n > m, "need more than {m} nodes for derivative order {m}");
    // c[k][i] = weight of node i for derivative order k
    let mut c = vec![vec![0.0; n]; m + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c.pop().expect("row m exists")
}

/// Centered stencil offsets −half..=half.
pub fn centered_offsets(half: usize) -> Vec<f64> {
    (-(half as isize)..=half as isize).map(|o| o as f64).collect()
}
