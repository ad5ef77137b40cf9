//! Homogeneity bridge between optical and symplectic tomograms:
//! M(X,μ,ν) = r⁻¹ w(X/r, φ) with r = √(μ²+ν²), φ = atan2(ν,μ) folded into
//! [0, 2π). Evaluation is Fourier-exact in θ (the tomogram is periodic) and
//! uses a 6-point Lagrange stencil in X.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::{Axis, AxisLabel};
use crate::fields::fft::dft;
use crate::fields::field::Field;
use crate::transforms::interp::{lagrange_weights, stencil_clamped};

/// θ-spectral representation of an optical tomogram, one coefficient row per
/// X node.
pub struct ThetaSpectrum {
    coeffs: Vec<C64>, // row-major (X, θ-mode)
    nx: usize,
    nt: usize,
    x_axis: Axis,
    theta_start: f64,
}

impl ThetaSpectrum {
    pub fn new(w: &Field) -> Result<Self> {
        let ix = w.axis_index(AxisLabel::X)?;
        let it = w.axis_index(AxisLabel::Theta)?;
        if w.rank() != 2 || ix != 0 || it != 1 {
            return Err(Error::domain("expected an (X, θ) optical tomogram"));
        }
        let (nx, nt) = (w.axes()[0].count, w.axes()[1].count);
        let mut coeffs = w.values().to_vec();
        for row in coeffs.chunks_exact_mut(nt) {
            dft(row);
            for c in row.iter_mut() {
                *c /= nt as f64;
            }
        }
        Ok(ThetaSpectrum {
            coeffs,
            nx,
            nt,
            x_axis: w.axes()[0].clone(),
            theta_start: w.axes()[1].start,
        })
    }

    /// w(x, θ) at arbitrary θ (Fourier-exact) and off-grid x (Lagrange-6);
    /// |x| beyond the grid returns 0 (tomograms decay).
    pub fn eval(&self, x: f64, theta: f64) -> C64 {
        let t = (x - self.x_axis.start) / self.x_axis.step;
        if t < -1.0 || t > self.nx as f64 {
            return C64::new(0.0, 0.0);
        }
        let (j0, xi) = stencil_clamped::<6>(t, self.nx);
        let wx = lagrange_weights::<6>(xi);
        // Fourier evaluation per stencil row
        let nt = self.nt;
        let half = nt / 2;
        let dtheta = theta - self.theta_start;
        let base = C64::from_polar(1.0, dtheta);
        let mut acc = C64::new(0.0, 0.0);
        for (i, &wi) in wx.iter().enumerate() {
            let row = &self.coeffs[(j0 + i) * nt..(j0 + i + 1) * nt];
            // modes m = 0..nt in FFT order, integer wavenumbers
            let mut val = row[0];
            let mut ph = C64::new(1.0, 0.0);
            for m in 1..half {
                ph *= base;
                val += row[m] * ph + row[nt - m] * ph.conj();
            }
            // Nyquist mode: cos(half·θ) convention keeps real fields real
            ph *= base;
            val += row[half] * ph.re;
            acc += val * wi;
        }
        acc
    }
}

/// Point evaluation M(X,μ,ν) from an optical tomogram.
pub fn optical_to_symplectic(w: &Field, x: f64, mu: f64, nu: f64) -> Result<f64> {
    let spec = ThetaSpectrum::new(w)?;
    Ok(bridge_point(&spec, x, mu, nu)?.re)
}

fn bridge_point(spec: &ThetaSpectrum, x: f64, mu: f64, nu: f64) -> Result<C64> {
    let r2 = mu * mu + nu * nu;
    if r2 == 0.0 {
        return Err(Error::domain("symplectic tomogram undefined at μ = ν = 0"));
    }
    let r = r2.sqrt();
    let mut phi = nu.atan2(mu);
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    Ok(spec.eval(x / r, phi) / r)
}

/// M on a full (X, μ, ν) grid from an optical tomogram.
pub fn optical_to_symplectic_field(
    w: &Field,
    x_axis: &Axis,
    mu_axis: &Axis,
    nu_axis: &Axis,
) -> Result<Field> {
    let spec = ThetaSpectrum::new(w)?;
    let mut out = Field::zeros(vec![x_axis.clone(), mu_axis.clone(), nu_axis.clone()])?;
    let (nm, nn) = (mu_axis.count, nu_axis.count);
    for j in 0..nm {
        let mu = mu_axis.at(j);
        for k in 0..nn {
            let nu = nu_axis.at(k);
            let r2 = mu * mu + nu * nu;
            if r2 == 0.0 {
                return Err(Error::domain(
                    "symplectic grid contains the undefined node μ = ν = 0",
                ));
            }
            let r = r2.sqrt();
            let mut phi = nu.atan2(mu);
            if phi < 0.0 {
                phi += 2.0 * PI;
            }
            for i in 0..x_axis.count {
                let x = x_axis.at(i);
                out.values_mut()[(i * nm + j) * nn + k] = spec.eval(x / r, phi) / r;
            }
        }
    }
    out.metadata = w.metadata.clone();
    Ok(out)
}
