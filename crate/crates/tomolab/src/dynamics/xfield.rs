//! Operator substrate for the tomographic generators.
//!
//! The evolution and energy-level equations compose (∂/∂X)⁻¹ with
//! X-multiplication and θ/μ derivatives. On the infinite line those
//! compositions produce well-defined non-decaying intermediates (erf-like
//! plateaus, polynomially growing ramps) whose contributions cancel in the
//! assembled equations. A plain periodic FFT antiderivative destroys the
//! growing parts (its zero mode carries no ramp) and the cancellation fails
//! by O(1/L) — far above the tolerances the operator identities must meet.
//!
//! `ExtField` therefore represents intermediates as
//!
//!     f(X, rest) = grid(X, rest) + Σ_j p_j(rest) X^j + Σ_j s_j(rest) S(X) X^j
//!
//! with S = erf and a grid part that stays edge-decayed (hence FFT-safe).
//! The antiderivative of a grid part g is fixed to the principal-value
//! convention (the odd-kernel primitive): its non-decaying content is
//! (∫g/2)·S(X) plus the ramp (∫g/L)·X recovered from the grid mean, and the
//! integration constant is −M₁(g)/L − ḡ·mean(X) so that discrete and line
//! conventions agree. Tail terms integrate in closed form.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::Axis;
use crate::fields::fd::{centered_offsets, fornberg_weights};
use crate::fields::fft::spectral_multiplier;
use crate::fields::field::Field;

/// Precomputed per-axis data for inverse-X operator chains.
pub(crate) struct XCtx {
    /// Index of the X axis in the full field layout.
    pub axis: usize,
    pub shape: Vec<usize>,
    pub n: usize,
    pub stride: usize,
    pub outer: usize,
    pub dx: f64,
    pub length: f64,
    pub x: Vec<f64>,
    pub s: Vec<f64>,     // erf(x)
    pub gauss: Vec<f64>, // e^{−x²}
    pub x_mean: f64,
    inv_mult: Vec<C64>,
    dx_mult: Vec<C64>,
}

impl XCtx {
    pub fn new(shape: &[usize], axis: usize, x_axis: &Axis) -> XCtx {
        let n = x_axis.count;
        debug_assert_eq!(shape[axis], n);
        let stride: usize = shape[axis + 1..].iter().product();
        let outer: usize = shape[..axis].iter().product();
        let x = x_axis.values();
        let s: Vec<f64> = x.iter().map(|&v| libm::erf(v)).collect();
        let gauss: Vec<f64> = x.iter().map(|&v| (-v * v).exp()).collect();
        let x_mean = x.iter().sum::<f64>() / n as f64;
        let inv_mult: Vec<C64> = x_axis
            .wavenumbers()
            .iter()
            .map(|&k| if k == 0.0 { C64::new(0.0, 0.0) } else { C64::new(0.0, k).inv() })
            .collect();
        let dx_mult: Vec<C64> = x_axis.wavenumbers().iter().map(|&k| C64::new(0.0, k)).collect();
        XCtx {
            axis,
            shape: shape.to_vec(),
            n,
            stride,
            outer,
            dx: x_axis.step,
            length: x_axis.length(),
            x,
            s,
            gauss,
            x_mean,
            inv_mult,
            dx_mult,
        }
    }

    /// Number of X lanes = size of the reduced (coefficient) grid.
    pub fn lanes(&self) -> usize {
        self.outer * self.stride
    }

    #[inline]
    pub fn lane_base(&self, lane: usize) -> (usize, usize) {
        let o = lane / self.stride;
        let s = lane % self.stride;
        (o * self.n * self.stride + s, self.stride)
    }
}

/// Primitive of x^k e^{−x²} under the PV convention, expressed as
/// c_S · erf(x) + (polynomial) · e^{−x²}.
fn gauss_primitive(k: usize) -> (f64, Vec<f64>) {
    if k == 0 {
        return (std::f64::consts::PI.sqrt() / 2.0, vec![]);
    }
    if k == 1 {
        return (0.0, vec![-0.5]);
    }
    let (s_lower, poly_lower) = gauss_primitive(k - 2);
    let factor = (k - 1) as f64 / 2.0;
    let mut poly = vec![0.0; k];
    poly[k - 1] = -0.5;
    for (j, c) in poly_lower.iter().enumerate() {
        poly[j] += factor * c;
    }
    (factor * s_lower, poly)
}

/// Field augmented with exactly tracked polynomial and erf·polynomial tails.
pub(crate) struct ExtField {
    pub grid: Vec<C64>,
    /// poly[j][lane] multiplies X^j.
    pub poly: Vec<Vec<C64>>,
    /// spoly[j][lane] multiplies erf(X)·X^j.
    pub spoly: Vec<Vec<C64>>,
}

impl ExtField {
    pub fn from_grid(grid: Vec<C64>) -> ExtField {
        ExtField { grid, poly: Vec::new(), spoly: Vec::new() }
    }

    pub fn zeros_like(&self) -> ExtField {
        ExtField::from_grid(vec![C64::new(0.0, 0.0); self.grid.len()])
    }

    fn poly_coeff(&mut self, j: usize, lanes: usize) -> &mut Vec<C64> {
        while self.poly.len() <= j {
            self.poly.push(vec![C64::new(0.0, 0.0); lanes]);
        }
        &mut self.poly[j]
    }

    fn spoly_coeff(&mut self, j: usize, lanes: usize) -> &mut Vec<C64> {
        while self.spoly.len() <= j {
            self.spoly.push(vec![C64::new(0.0, 0.0); lanes]);
        }
        &mut self.spoly[j]
    }

    pub fn add_assign(&mut self, other: &ExtField) {
        for (a, b) in self.grid.iter_mut().zip(other.grid.iter()) {
            *a += *b;
        }
        let lanes = other.poly.first().or(other.spoly.first()).map_or(0, Vec::len);
        for (j, c) in other.poly.iter().enumerate() {
            let dst = self.poly_coeff(j, lanes.max(c.len()));
            for (a, b) in dst.iter_mut().zip(c.iter()) {
                *a += *b;
            }
        }
        for (j, c) in other.spoly.iter().enumerate() {
            let dst = self.spoly_coeff(j, lanes.max(c.len()));
            for (a, b) in dst.iter_mut().zip(c.iter()) {
                *a += *b;
            }
        }
    }

    pub fn scale(&mut self, s: f64) {
        for v in self.grid.iter_mut() {
            *v *= s;
        }
        for c in self.poly.iter_mut().chain(self.spoly.iter_mut()) {
            for v in c.iter_mut() {
                *v *= s;
            }
        }
    }

    /// Evaluate the tails onto the grid and return plain values.
    pub fn fold(mut self, ctx: &XCtx) -> Vec<C64> {
        for (j, coeff) in self.poly.iter().enumerate() {
            for lane in 0..ctx.lanes() {
                let c = coeff[lane];
                if c == C64::new(0.0, 0.0) {
                    continue;
                }
                let (base, stride) = ctx.lane_base(lane);
                for (i, &xv) in ctx.x.iter().enumerate() {
                    self.grid[base + i * stride] += c * xv.powi(j as i32);
                }
            }
        }
        for (j, coeff) in self.spoly.iter().enumerate() {
            for lane in 0..ctx.lanes() {
                let c = coeff[lane];
                if c == C64::new(0.0, 0.0) {
                    continue;
                }
                let (base, stride) = ctx.lane_base(lane);
                for i in 0..ctx.n {
                    self.grid[base + i * stride] += c * ctx.s[i] * ctx.x[i].powi(j as i32);
                }
            }
        }
        self.grid
    }

    /// Multiplication by the X coordinate.
    pub fn mul_x(&mut self, ctx: &XCtx) {
        for lane in 0..ctx.lanes() {
            let (base, stride) = ctx.lane_base(lane);
            for (i, &xv) in ctx.x.iter().enumerate() {
                self.grid[base + i * stride] *= xv;
            }
        }
        if !self.poly.is_empty() {
            self.poly.insert(0, vec![C64::new(0.0, 0.0); ctx.lanes()]);
        }
        if !self.spoly.is_empty() {
            self.spoly.insert(0, vec![C64::new(0.0, 0.0); ctx.lanes()]);
        }
    }

    /// Multiplication by a function of the non-X coordinates (values on the
    /// reduced grid).
    pub fn mul_reduced(&mut self, ctx: &XCtx, coeff: &[f64]) {
        debug_assert_eq!(coeff.len(), ctx.lanes());
        for lane in 0..ctx.lanes() {
            let c = coeff[lane];
            let (base, stride) = ctx.lane_base(lane);
            for i in 0..ctx.n {
                self.grid[base + i * stride] *= c;
            }
        }
        for arr in self.poly.iter_mut().chain(self.spoly.iter_mut()) {
            for (v, &c) in arr.iter_mut().zip(coeff.iter()) {
                *v *= c;
            }
        }
    }

    /// Spectral ∂/∂X.
    pub fn dx(&mut self, ctx: &XCtx) {
        spectral_multiplier(&mut self.grid, &ctx.shape, ctx.axis, &ctx.dx_mult);
        let lanes = ctx.lanes();
        // d/dX (S x^j) = j S x^{j-1} + (2/√π) x^j e^{−x²}
        let two_over_sqrt_pi = 2.0 / std::f64::consts::PI.sqrt();
        for (j, coeff) in self.spoly.clone().iter().enumerate() {
            for lane in 0..lanes {
                let c = coeff[lane];
                if c == C64::new(0.0, 0.0) {
                    continue;
                }
                let (base, stride) = ctx.lane_base(lane);
                for i in 0..ctx.n {
                    self.grid[base + i * stride] +=
                        c * two_over_sqrt_pi * ctx.x[i].powi(j as i32) * ctx.gauss[i];
                }
            }
        }
        let old_poly = std::mem::take(&mut self.poly);
        for (j, coeff) in old_poly.into_iter().enumerate().skip(1) {
            let dst = self.poly_coeff(j - 1, lanes);
            for (a, b) in dst.iter_mut().zip(coeff.iter()) {
                *a += j as f64 * b;
            }
        }
        let old_spoly = std::mem::take(&mut self.spoly);
        for (j, coeff) in old_spoly.into_iter().enumerate().skip(1) {
            let dst = self.spoly_coeff(j - 1, lanes);
            for (a, b) in dst.iter_mut().zip(coeff.iter()) {
                *a += j as f64 * b;
            }
        }
    }

    /// Principal-value (∂/∂X)⁻¹: the unique antiderivative whose non-decaying
    /// content is pure sign-like (erf) and polynomial growth, matching the
    /// operator algebra of the evolution equations on the line.
    pub fn inv_dx(&mut self, ctx: &XCtx) {
        let lanes = ctx.lanes();
        // moments of the grid part (trapezoid quadrature, exact for the
        // edge-decayed grid parts this machinery maintains)
        let mut integral = vec![C64::new(0.0, 0.0); lanes];
        let mut moment1 = vec![C64::new(0.0, 0.0); lanes];
        for lane in 0..lanes {
            let (base, stride) = ctx.lane_base(lane);
            let mut i0 = C64::new(0.0, 0.0);
            let mut i1 = C64::new(0.0, 0.0);
            for i in 0..ctx.n {
                let v = self.grid[base + i * stride];
                i0 += v;
                i1 += v * ctx.x[i];
            }
            integral[lane] = i0 * ctx.dx;
            moment1[lane] = i1 * ctx.dx;
        }
        // zero-mean periodic antiderivative (k = 0 mode dropped)
        spectral_multiplier(&mut self.grid, &ctx.shape, ctx.axis, &ctx.inv_mult);
        // reassemble the PV primitive: grid + ḡX + κ − (I/2)S stays decayed,
        // the (I/2)S term goes to the erf tail
        for lane in 0..lanes {
            let i0 = integral[lane];
            let gbar = i0 / ctx.length;
            let kappa = -moment1[lane] / ctx.length - gbar * ctx.x_mean;
            let half_i = i0 * 0.5;
            let (base, stride) = ctx.lane_base(lane);
            for i in 0..ctx.n {
                self.grid[base + i * stride] += gbar * ctx.x[i] + kappa - half_i * ctx.s[i];
            }
        }
        // tails
        let old_poly = std::mem::take(&mut self.poly);
        let old_spoly = std::mem::take(&mut self.spoly);
        {
            let two_over_sqrt_pi = 2.0 / std::f64::consts::PI.sqrt();
            for lane in 0..lanes {
                if integral[lane] != C64::new(0.0, 0.0) {
                    let dst = self.spoly_coeff(0, lanes);
                    dst[lane] += integral[lane] * 0.5;
                }
            }
            for (j, coeff) in old_poly.into_iter().enumerate() {
                // ∫ X^j = X^{j+1}/(j+1)
                let dst = self.poly_coeff(j + 1, lanes);
                for (a, b) in dst.iter_mut().zip(coeff.iter()) {
                    *a += *b / (j + 1) as f64;
                }
            }
            for (j, coeff) in old_spoly.into_iter().enumerate() {
                // ∫ S X^j = S X^{j+1}/(j+1) − (2/√π)/(j+1) ∫ X^{j+1} e^{−X²}
                let inv = 1.0 / (j + 1) as f64;
                {
                    let dst = self.spoly_coeff(j + 1, lanes);
                    for (a, b) in dst.iter_mut().zip(coeff.iter()) {
                        *a += *b * inv;
                    }
                }
                let (s_part, gauss_poly) = gauss_primitive(j + 1);
                if s_part != 0.0 {
                    let dst = self.spoly_coeff(0, lanes);
                    for (a, b) in dst.iter_mut().zip(coeff.iter()) {
                        *a -= *b * inv * two_over_sqrt_pi * s_part;
                    }
                }
                if !gauss_poly.is_empty() {
                    for lane in 0..lanes {
                        let c = coeff[lane];
                        if c == C64::new(0.0, 0.0) {
                            continue;
                        }
                        let (base, stride) = ctx.lane_base(lane);
                        for i in 0..ctx.n {
                            let mut pv = 0.0;
                            for (m, &pm) in gauss_poly.iter().enumerate() {
                                pv += pm * ctx.x[i].powi(m as i32);
                            }
                            self.grid[base + i * stride] -=
                                c * inv * two_over_sqrt_pi * pv * ctx.gauss[i];
                        }
                    }
                }
            }
        }
    }

    /// Apply a linear operation along a non-X axis of the full layout to both
    /// the grid and (with the axis index shifted) every tail coefficient.
    pub fn apply_reduced_axis_op<F>(&mut self, ctx: &XCtx, full_axis: usize, mut op: F)
    where
        F: FnMut(&mut [C64], &[usize], usize),
    {
        debug_assert_ne!(full_axis, ctx.axis);
        op(&mut self.grid, &ctx.shape, full_axis);
        let mut reduced_shape = ctx.shape.clone();
        reduced_shape.remove(ctx.axis);
        let reduced_axis = if full_axis > ctx.axis { full_axis - 1 } else { full_axis };
        for arr in self.poly.iter_mut().chain(self.spoly.iter_mut()) {
            op(arr, &reduced_shape, reduced_axis);
        }
    }
}

/// 4th-order finite-difference derivative along one axis of a raw buffer
/// (centered stencils inside, one-sided at the edges).
pub(crate) fn fd_axis(values: &mut [C64], shape: &[usize], axis: usize, step: f64, order: usize) {
    let n = shape[axis];
    let accuracy = 4;
    let width = order + accuracy;
    assert!(n >= width, "axis too short for FD stencil");
    let half = width / 2;
    let hm = step.powi(order as i32);
    let central = fornberg_weights(0.0, &centered_offsets(half), order);
    let mut stencils: Vec<(usize, Vec<f64>)> = Vec::with_capacity(n);
    for i in 0..n {
        if i >= half && i + half < n {
            stencils.push((i - half, central.clone()));
        } else {
            let start = if i < half { 0 } else { n - width };
            let nodes: Vec<f64> = (0..width).map(|j| (start + j) as f64 - i as f64).collect();
            stencils.push((start, fornberg_weights(0.0, &nodes, order)));
        }
    }
    let stride: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
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
                values[base + i * stride] = acc / hm;
            }
        }
    }
}

/// Fold back into a `Field` on the original grid.
pub(crate) fn lower(ext: ExtField, ctx: &XCtx, like: &Field) -> Result<Field> {
    let values = ext.fold(ctx);
    let mut f = Field::new(like.axes().to_vec(), values)?;
    f.metadata = like.metadata.clone();
    Ok(f)
}

pub(crate) fn check_axis_is(
    field: &Field,
    axis: usize,
    label: crate::fields::axis::AxisLabel,
    mode: u8,
) -> Result<()> {
    let ax = field
        .axes()
        .get(axis)
        .ok_or_else(|| Error::domain(format!("field has no axis {axis}")))?;
    if ax.label != label || ax.mode != mode {
        return Err(Error::domain(format!(
            "axis {axis} is {} (mode {}), expected {} (mode {mode})",
            ax.label.name(),
            ax.mode,
            label.name()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::axis::{default_theta_axis, default_x_axis, AxisLabel};

    fn ctx_1d() -> (XCtx, Axis) {
        let x = default_x_axis();
        (XCtx::new(&[x.count], 0, &x), x)
    }

    #[test]
    fn pv_antiderivative_of_gaussian_is_erf() {
        let (ctx, x) = ctx_1d();
        use std::f64::consts::PI;
        let g: Vec<C64> =
            x.values().iter().map(|&v| C64::new((-v * v).exp() / PI.sqrt(), 0.0)).collect();
        let mut f = ExtField::from_grid(g);
        f.inv_dx(&ctx);
        let vals = f.fold(&ctx);
        for (i, &xv) in x.values().iter().enumerate() {
            let expect = libm::erf(xv) / 2.0;
            assert!((vals[i].re - expect).abs() < 1e-12, "x={xv}");
        }
    }

    #[test]
    fn pv_inverse_of_derivative_is_identity() {
        let (ctx, x) = ctx_1d();
        // f with nonzero mean: the moment correction must restore it exactly
        let f0: Vec<C64> = x
            .values()
            .iter()
            .map(|&v| C64::new((-(v - 0.7) * (v - 0.7)).exp(), 0.1 * (-v * v).exp()))
            .collect();
        let mut f = ExtField::from_grid(f0.clone());
        f.dx(&ctx);
        f.inv_dx(&ctx);
        let vals = f.fold(&ctx);
        let err = vals
            .iter()
            .zip(f0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        assert!(err < 1e-10, "D⁻¹D err {err:.3e}");
    }

    #[test]
    fn double_antiderivative_matches_line_convention() {
        // D⁻² of the unit Gaussian is X erf(X)/2 + e^{−X²}/(2√π), with no
        // spurious constant or ramp
        let (ctx, x) = ctx_1d();
        use std::f64::consts::PI;
        let g: Vec<C64> =
            x.values().iter().map(|&v| C64::new((-v * v).exp() / PI.sqrt(), 0.0)).collect();
        let mut f = ExtField::from_grid(g);
        f.inv_dx(&ctx);
        f.inv_dx(&ctx);
        let vals = f.fold(&ctx);
        for (i, &xv) in x.values().iter().enumerate() {
            let expect = xv * libm::erf(xv) / 2.0 + (-xv * xv).exp() / (2.0 * PI.sqrt());
            assert!((vals[i].re - expect).abs() < 1e-11, "x={xv}: {} vs {expect}", vals[i].re);
        }
    }

    #[test]
    fn x_times_inverse_combination() {
        // [X, D⁻¹] applied to a decaying zero-mean field reproduces D⁻²
        let (ctx, x) = ctx_1d();
        let g: Vec<C64> = x
            .values()
            .iter()
            .map(|&v| C64::new(v * (-v * v).exp(), 0.0))
            .collect();
        let mut a = ExtField::from_grid(g.clone());
        a.inv_dx(&ctx);
        a.mul_x(&ctx); // X D⁻¹ g
        let mut b = ExtField::from_grid(g.clone());
        b.mul_x(&ctx);
        b.inv_dx(&ctx); // D⁻¹ X g
        b.scale(-1.0);
        a.add_assign(&b);
        let mut c = ExtField::from_grid(g);
        c.inv_dx(&ctx);
        c.inv_dx(&ctx);
        c.scale(-1.0);
        a.add_assign(&c);
        let vals = a.fold(&ctx);
        let err = vals.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        assert!(err < 1e-11, "commutator err {err:.3e}");
    }

    #[test]
    fn reduced_axis_ops_touch_tails() {
        let x = default_x_axis();
        let th = default_theta_axis();
        let shape = [x.count, th.count];
        let ctx = XCtx::new(&shape, 0, &x);
        let field = Field::from_fn(vec![x.clone(), th.clone()], |c| {
            C64::new((-c[0] * c[0]).exp() * (1.0 + 0.5 * c[1].cos()), 0.0)
        })
        .unwrap();
        let mut ext = ExtField::from_grid(field.values().to_vec());
        ext.inv_dx(&ctx); // erf tails with θ-dependent coefficients
        assert!(!ext.spoly.is_empty());
        // ∂θ through both grid and tails, then fold and compare with the
        // direct computation on the θ-differentiated input
        let mult: Vec<C64> = th.wavenumbers().iter().map(|&k| C64::new(0.0, k)).collect();
        ext.apply_reduced_axis_op(&ctx, 1, |vals, shape, axis| {
            spectral_multiplier(vals, shape, axis, &mult);
        });
        let folded = ext.fold(&ctx);

        let dtheta = crate::fields::ops::spectral_dtheta(&field).unwrap();
        let mut direct = ExtField::from_grid(dtheta.values().to_vec());
        direct.inv_dx(&ctx);
        let direct_vals = direct.fold(&ctx);
        let err = folded
            .iter()
            .zip(direct_vals.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        assert!(err < 1e-10, "∂θ D⁻¹ vs D⁻¹ ∂θ err {err:.3e}");
    }

    #[test]
    fn check_axis_reports_mismatch() {
        let f = Field::zeros(vec![default_x_axis(), default_theta_axis()]).unwrap();
        assert!(check_axis_is(&f, 0, AxisLabel::X, 0).is_ok());
        assert!(check_axis_is(&f, 1, AxisLabel::Mu, 0).is_err());
    }
}
