//! Differential, antiderivative and quadrature operators on sampled fields.
//!
//! X-type axes use spectral (FFT) derivatives; μ and ν axes use 4th-order
//! finite differences (their domains are neither periodic nor decaying).

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::AxisLabel;
use crate::fields::fd::{centered_offsets, fornberg_weights};
use crate::fields::fft::spectral_multiplier;
use crate::fields::field::Field;

fn spectral_axis_checked(f: &Field, label: AxisLabel, mode: u8) -> Result<usize> {
    let d = f.axis_index_mode(label, mode)?;
    if f.axes()[d].periodic {
        return Err(Error::contract(format!(
            "axis {} is periodic; use spectral_dtheta for periodic axes",
            label.name()
        )));
    }
    Ok(d)
}

/// Spectral derivative along a non-periodic axis (mode 0).
pub fn spectral_dx(f: &Field, label: AxisLabel) -> Result<Field> {
    spectral_dx_mode(f, label, 0)
}

pub fn spectral_dx_mode(f: &Field, label: AxisLabel, mode: u8) -> Result<Field> {
    let d = spectral_axis_checked(f, label, mode)?;
    let mut out = f.clone();
    let mult: Vec<C64> = f.axes()[d].wavenumbers().iter().map(|&k| C64::new(0.0, k)).collect();
    spectral_multiplier(out.values_mut(), &f.shape(), d, &mult);
    Ok(out)
}

/// Spectral antiderivative along a non-periodic axis: mode k ≠ 0 divided by
/// ik, the k = 0 mode set to zero.
pub fn spectral_inv_dx(f: &Field, label: AxisLabel) -> Result<Field> {
    spectral_inv_dx_mode(f, label, 0)
}

pub fn spectral_inv_dx_mode(f: &Field, label: AxisLabel, mode: u8) -> Result<Field> {
    let d = spectral_axis_checked(f, label, mode)?;
    let mut out = f.clone();
    let mult: Vec<C64> = f.axes()[d]
        .wavenumbers()
        .iter()
        .map(|&k| if k == 0.0 { C64::new(0.0, 0.0) } else { C64::new(0.0, k).inv() })
        .collect();
    spectral_multiplier(out.values_mut(), &f.shape(), d, &mult);
    Ok(out)
}

/// Spectral derivative along the periodic θ axis (mode 0).
pub fn spectral_dtheta(f: &Field) -> Result<Field> {
    spectral_dtheta_mode(f, 0)
}

pub fn spectral_dtheta_mode(f: &Field, mode: u8) -> Result<Field> {
    let d = f
        .axes()
        .iter()
        .position(|a| a.periodic && a.mode == mode)
        .ok_or_else(|| Error::domain(format!("field has no periodic axis for mode {mode}")))?;
    let mut out = f.clone();
    let mult: Vec<C64> = f.axes()[d].wavenumbers().iter().map(|&k| C64::new(0.0, k)).collect();
    spectral_multiplier(out.values_mut(), &f.shape(), d, &mult);
    Ok(out)
}

/// n-th derivative along a μ/ν-type axis with 4th-order finite differences
/// (centered in the interior, one-sided at the boundary).
pub fn fd_derivative(f: &Field, label: AxisLabel, mode: u8, order: usize) -> Result<Field> {
    let d = f.axis_index_mode(label, mode)?;
    let ax = &f.axes()[d];
    let n = ax.count;
    let accuracy = 4;
    let width = order + accuracy; // nodes per stencil
    if n < width {
        return Err(Error::domain(format!(
            "axis {} too short ({n}) for order-{order} FD of accuracy {accuracy}",
            label.name()
        )));
    }
    let half = width / 2;
    // Precompute weights for every output index (cheap: counts are small).
    let h = ax.step;
    let hm = h.powi(order as i32);
    let mut stencils: Vec<(usize, Vec<f64>)> = Vec::with_capacity(n);
    let central = fornberg_weights(0.0, &centered_offsets(half), order);
    for i in 0..n {
        if i >= half && i + half < n {
            // centered stencil of width 2*half+1
            stencils.push((i - half, central.clone()));
        } else {
            let start = if i < half { 0 } else { n - width };
            let nodes: Vec<f64> = (0..width).map(|j| (start + j) as f64 - i as f64).collect();
            stencils.push((start, fornberg_weights(0.0, &nodes, order)));
        }
    }
    let mut out = f.clone();
    let stride = f.stride(d);
    let outer: usize = f.shape()[..d].iter().product();
    let values = f.values();
    let out_values = out.values_mut();
    let mut lane = vec![C64::new(0.0, 0.0); n];
    for o in 0..outer {
        for s in 0..stride {
            let base = o * n * stride + s;
            for j in 0..n {
                lane[j] = values[base + j * stride];
            }
            for (i, (start, w)) in stencils.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (j, &wj) in w.iter().enumerate() {
                    acc += lane[start + j] * wj;
                }
                out_values[base + i * stride] = acc / hm;
            }
        }
    }
    Ok(out)
}

/// Quadrature along one axis (uniform-weight Riemann/trapezoid sum for
/// periodic or decayed data); the axis is dropped from the result.
pub fn integrate_axis(f: &Field, label: AxisLabel, mode: u8) -> Result<Field> {
    let d = f.axis_index_mode(label, mode)?;
    let ax = f.axes()[d].clone();
    let stride = f.stride(d);
    let n = ax.count;
    let outer: usize = f.shape()[..d].iter().product();
    let mut axes = f.axes().to_vec();
    axes.remove(d);
    let mut values = vec![C64::new(0.0, 0.0); f.len() / n];
    for o in 0..outer {
        for s in 0..stride {
            let base = o * n * stride + s;
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n {
                acc += f.values()[base + j * stride];
            }
            values[o * stride + s] = acc * ax.step;
        }
    }
    let mut out = Field::new(axes, values)?;
    out.metadata = f.metadata.clone();
    Ok(out)
}

/// ∫ f dX along the mode-0 X axis.
pub fn integrate_x(f: &Field) -> Result<Field> {
    integrate_axis(f, AxisLabel::X, 0)
}

/// Multiply by a real scalar function of the grid coordinates.
pub fn pointwise_mul<F: FnMut(&[f64]) -> f64>(f: &Field, mut g: F) -> Field {
    let rank = f.rank();
    let mut out = f.clone();
    let mut idx = vec![0usize; rank];
    let mut coords = vec![0.0; rank];
    for flat in 0..f.len() {
        f.unravel(flat, &mut idx);
        for (d, &i) in idx.iter().enumerate() {
            coords[d] = f.axes()[d].at(i);
        }
        out.values_mut()[flat] *= g(&coords);
    }
    out
}

/// Mean along the X axis per remaining-grid node (used by the zero-mode
/// identity `inv_dx(dx(f)) = f − mean_X f`).
pub fn mean_x(f: &Field) -> Result<Field> {
    let d = f.axis_index(AxisLabel::X)?;
    let length = f.axes()[d].length();
    let mut m = integrate_x(f)?;
    for v in m.values_mut() {
        *v /= length;
    }
    Ok(m)
}
