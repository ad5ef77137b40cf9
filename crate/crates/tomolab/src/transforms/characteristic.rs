//! Characteristic functions of tomograms: χ_w(η,θ) = ∫ w(X,θ) e^{iηX} dX and
//! its symplectic analog χ_M(z,μ,ν).

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::{Axis, AxisLabel};
use crate::fields::fft::{ft_forward_lane, ft_inverse_lane};
use crate::fields::field::Field;

/// χ sampled on the monotone Fourier-dual grid of the X axis.
///
/// The first axis is labeled `Eta` (optical) or `Z` (symplectic) and marks
/// the dual of X; the source X axis is retained for inversion.
#[derive(Debug, Clone)]
pub struct CharacteristicFunction {
    pub field: Field,
    pub x_axis: Axis,
}

fn dual_axis(x_axis: &Axis, label: AxisLabel) -> Axis {
    let n = x_axis.count;
    let dk = 2.0 * std::f64::consts::PI / x_axis.length();
    Axis {
        label,
        mode: x_axis.mode,
        start: -((n / 2) as f64) * dk,
        step: dk,
        count: n,
        periodic: false,
    }
}

fn transform_x(w: &Field, dual_label: AxisLabel) -> Result<CharacteristicFunction> {
    let ix = w.axis_index(AxisLabel::X)?;
    if ix != 0 {
        return Err(Error::domain("X must be the leading axis"));
    }
    let x_axis = w.axes()[0].clone();
    let n = x_axis.count;
    let rest: usize = w.len() / n;
    let mut axes = w.axes().to_vec();
    axes[0] = dual_axis(&x_axis, dual_label);
    let mut out = Field::zeros(axes)?;
    let mut lane = vec![C64::new(0.0, 0.0); n];
    for s in 0..rest {
        for j in 0..n {
            lane[j] = w.values()[j * rest + s];
        }
        // χ(η) = ∫ w e^{+iηX} dX
        ft_forward_lane(&mut lane, &x_axis, -1.0);
        for m in 0..n {
            let monotone = (m + n / 2) % n; // FFT order → monotone η
            out.values_mut()[monotone * rest + s] = lane[m];
        }
    }
    out.metadata = w.metadata.clone();
    Ok(CharacteristicFunction { field: out, x_axis })
}

/// Optical characteristic function χ_w(η,θ).
pub fn characteristic_fn(w: &Field) -> Result<CharacteristicFunction> {
    transform_x(w, AxisLabel::Eta)
}

/// Symplectic characteristic function χ_M(z,μ,ν).
pub fn characteristic_fn_symplectic(m: &Field) -> Result<CharacteristicFunction> {
    transform_x(m, AxisLabel::Z)
}

impl CharacteristicFunction {
    pub fn dual_axis(&self) -> &Axis {
        &self.field.axes()[0]
    }

    /// Row index of η = 0.
    pub fn zero_index(&self) -> usize {
        self.dual_axis().count / 2
    }

    /// Largest deviation of χ(0,·) from 1.
    pub fn normalization_residual(&self) -> f64 {
        let n = self.dual_axis().count;
        let rest = self.field.len() / n;
        let base = self.zero_index() * rest;
        (0..rest)
            .map(|s| (self.field.values()[base + s] - 1.0).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from the reality condition χ(−η) = χ*(η).
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dual_axis().count;
        let rest = self.field.len() / n;
        let mut worst: f64 = 0.0;
        for m in 1..n {
            let r = n - m; // −η row (index 0 is the unpaired −Nyquist row)
            for s in 0..rest {
                let d =
                    (self.field.values()[m * rest + s].conj() - self.field.values()[r * rest + s])
                        .norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Invert back to the tomogram: w(X,θ) = (1/2π) ∫ χ e^{−iηX} dη.
    pub fn inverse(&self) -> Result<Field> {
        let n = self.x_axis.count;
        let rest = self.field.len() / n;
        let mut axes = self.field.axes().to_vec();
        axes[0] = self.x_axis.clone();
        let mut out = Field::zeros(axes)?;
        let mut lane = vec![C64::new(0.0, 0.0); n];
        for s in 0..rest {
            for monotone in 0..n {
                let m = (monotone + n / 2) % n;
                lane[m] = self.field.values()[monotone * rest + s];
            }
            ft_inverse_lane(&mut lane, &self.x_axis, -1.0);
            for j in 0..n {
                out.values_mut()[j * rest + s] = lane[j];
            }
        }
        out.metadata = self.field.metadata.clone();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::axis::{default_theta_axis, default_x_axis};
    use std::f64::consts::PI;

    fn vacuum_tomogram() -> Field {
        Field::from_fn(vec![default_x_axis(), default_theta_axis()], |c| {
            C64::new((-c[0] * c[0]).exp() / PI.sqrt(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn vacuum_characteristic_is_gaussian() {
        let chi = characteristic_fn(&vacuum_tomogram()).unwrap();
        let eta = chi.dual_axis().values();
        let nt = 64;
        for (m, &e) in eta.iter().enumerate() {
            let expect = (-e * e / 4.0).exp();
            for j in 0..nt {
                let got = chi.field.values()[m * nt + j];
                assert!(
                    (got - expect).norm() <= 1e-8,
                    "η={e}: {got:?} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn unit_at_zero_and_hermitian() {
        let chi = characteristic_fn(&vacuum_tomogram()).unwrap();
        assert!(chi.normalization_residual() <= 1e-12);
        assert!(chi.hermiticity_residual() <= 1e-12);
    }

    #[test]
    fn inverse_roundtrip() {
        let w = vacuum_tomogram();
        let chi = characteristic_fn(&w).unwrap();
        let back = chi.inverse().unwrap();
        assert!(back.sup_distance(&w).unwrap() <= 1e-12);
    }
}
