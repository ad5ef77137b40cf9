//! Classical Gaussian phase-space distributions, normalized with the same
//! ∫ f dq dp / (2π) = 1 convention as the Wigner function.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::axis::Axis;
use crate::fields::field::Field;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    pub mean_q: f64,
    pub mean_p: f64,
    /// 2×2 covariance [[σ_qq, σ_qp], [σ_pq, σ_pp]], symmetric positive
    /// definite.
    pub cov: [[f64; 2]; 2],
}

impl GaussianSpec {
    pub fn validate(&self) -> Result<()> {
        let c = &self.cov;
        if (c[0][1] - c[1][0]).abs() > 1e-12 {
            return Err(Error::domain("covariance must be symmetric"));
        }
        let det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
        if !(c[0][0] > 0.0) || !(det > 0.0) {
            return Err(Error::domain("covariance must be positive definite"));
        }
        Ok(())
    }

    pub fn det(&self) -> f64 {
        self.cov[0][0] * self.cov[1][1] - self.cov[0][1] * self.cov[1][0]
    }

    /// Ground-state-matching Gaussian (cov = I/2): identical to the vacuum
    /// Wigner function.
    pub fn vacuum_like() -> Self {
        GaussianSpec { mean_q: 0.0, mean_p: 0.0, cov: [[0.5, 0.0], [0.0, 0.5]] }
    }
}

/// Sample the normalized Gaussian f(q,p) on the grid.
pub fn classical_gaussian(spec: &GaussianSpec, q_axis: &Axis, p_axis: &Axis) -> Result<Field> {
    spec.validate()?;
    let det = spec.det();
    let inv = [
        [spec.cov[1][1] / det, -spec.cov[0][1] / det],
        [-spec.cov[1][0] / det, spec.cov[0][0] / det],
    ];
    let pref = 1.0 / det.sqrt();
    let mut f = Field::zeros(vec![q_axis.clone(), p_axis.clone()])?;
    let np = p_axis.count;
    for i in 0..q_axis.count {
        let dq = q_axis.at(i) - spec.mean_q;
        for j in 0..np {
            let dp = p_axis.at(j) - spec.mean_p;
            let quad = inv[0][0] * dq * dq + 2.0 * inv[0][1] * dq * dp + inv[1][1] * dp * dp;
            f.values_mut()[i * np + j] = C64::new(pref * (-0.5 * quad).exp(), 0.0);
        }
    }
    f.metadata.insert("state".to_string(), "classical-gaussian".to_string());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::axis::{default_p_axis, default_q_axis};
    use std::f64::consts::PI;

    #[test]
    fn vacuum_like_equals_vacuum_wigner() {
        let f = classical_gaussian(&GaussianSpec::vacuum_like(), &default_q_axis(), &default_p_axis())
            .unwrap();
        let expect = Field::from_fn(f.axes().to_vec(), |c| {
            C64::new(2.0 * (-c[0] * c[0] - c[1] * c[1]).exp(), 0.0)
        })
        .unwrap();
        assert!(f.sup_distance(&expect).unwrap() <= 1e-14);
    }

    #[test]
    fn displaced_gaussian_peaks_at_mean() {
        let spec = GaussianSpec { mean_q: 1.0, mean_p: 0.0, cov: [[0.5, 0.0], [0.0, 0.5]] };
        let f = classical_gaussian(&spec, &default_q_axis(), &default_p_axis()).unwrap();
        let max_idx = f
            .values()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.re.total_cmp(&b.1.re))
            .unwrap()
            .0;
        let (iq, ip) = (max_idx / 256, max_idx % 256);
        assert_eq!(default_q_axis().at(iq), 1.0);
        assert_eq!(default_p_axis().at(ip), 0.0);
    }

    #[test]
    fn normalization() {
        let spec = GaussianSpec { mean_q: -0.5, mean_p: 0.7, cov: [[0.8, 0.2], [0.2, 0.6]] };
        let f = classical_gaussian(&spec, &default_q_axis(), &default_p_axis()).unwrap();
        let dqdp = f.axes()[0].step * f.axes()[1].step;
        let tot: C64 = f.values().iter().sum();
        assert!(((tot * dqdp).re / (2.0 * PI) - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn non_spd_rejected() {
        let bad = GaussianSpec { mean_q: 0.0, mean_p: 0.0, cov: [[0.5, 0.9], [0.9, 0.5]] };
        assert!(classical_gaussian(&bad, &default_q_axis(), &default_p_axis()).is_err());
    }
}
