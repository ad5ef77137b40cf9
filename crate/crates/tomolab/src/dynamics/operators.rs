//! Tomographic correspondence operators: the per-mode pairs (A, B) entering
//! U{A + iB}, the q/p multiplication rules, and the mode layout bookkeeping.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::{Axis, AxisLabel};
use crate::fields::fft::spectral_multiplier;
use crate::fields::field::Field;
use crate::states::pacs::ModeConstants;

use super::xfield::{check_axis_is, fd_axis, ExtField, XCtx};

/// Variable pairing of a tomographic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// (X_σ, θ_σ) per mode.
    Optical,
    /// (X_σ, μ_σ, ν_σ) per mode (single X for one mode in this artifact).
    Symplectic,
}

/// Per-mode axis indices and precomputed operator data.
pub(crate) struct ModeLayout {
    pub representation: Representation,
    pub constants: ModeConstants,
    pub x_ctx: XCtx,
    /// θ axis index (optical) in the full layout.
    pub theta_axis: usize,
    /// μ, ν axis indices (symplectic).
    pub mu_axis: usize,
    pub nu_axis: usize,
    theta_mult: Vec<C64>,
    /// sin θ / cos θ (optical) or ν (symplectic) on the reduced grid.
    sin_reduced: Vec<f64>,
    cos_reduced: Vec<f64>,
    nu_reduced: Vec<f64>,
    mu_step: f64,
    nu_step: f64,
}

fn reduced_coordinate(field: &Field, x_axis: usize, coord_axis: usize) -> Vec<f64> {
    // values of the coordinate on the reduced (X-dropped) grid
    let mut reduced_axes: Vec<&Axis> = field.axes().iter().collect();
    reduced_axes.remove(x_axis);
    let reduced_coord = if coord_axis > x_axis { coord_axis - 1 } else { coord_axis };
    let shape: Vec<usize> = reduced_axes.iter().map(|a| a.count).collect();
    let total: usize = shape.iter().product();
    let stride: usize = shape[reduced_coord + 1..].iter().product();
    let n = shape[reduced_coord];
    (0..total)
        .map(|flat| {
            let i = (flat / stride) % n;
            reduced_axes[reduced_coord].at(i)
        })
        .collect()
}

impl ModeLayout {
    pub fn optical(field: &Field, mode: u8, constants: ModeConstants) -> Result<ModeLayout> {
        let x_axis = field.axis_index_mode(AxisLabel::X, mode)?;
        let theta_axis = field.axis_index_mode(AxisLabel::Theta, mode)?;
        check_axis_is(field, x_axis, AxisLabel::X, mode)?;
        let shape = field.shape();
        let x_ctx = XCtx::new(&shape, x_axis, &field.axes()[x_axis]);
        let theta_mult: Vec<C64> = field.axes()[theta_axis]
            .wavenumbers()
            .iter()
            .map(|&k| C64::new(0.0, k))
            .collect();
        let sin_reduced = reduced_coordinate(field, x_axis, theta_axis)
            .iter()
            .map(|&t| t.sin())
            .collect();
        let cos_reduced = reduced_coordinate(field, x_axis, theta_axis)
            .iter()
            .map(|&t| t.cos())
            .collect();
        Ok(ModeLayout {
            representation: Representation::Optical,
            constants,
            x_ctx,
            theta_axis,
            mu_axis: usize::MAX,
            nu_axis: usize::MAX,
            theta_mult,
            sin_reduced,
            cos_reduced,
            nu_reduced: Vec::new(),
            mu_step: 0.0,
            nu_step: 0.0,
        })
    }

    pub fn symplectic(field: &Field, mode: u8, constants: ModeConstants) -> Result<ModeLayout> {
        let x_axis = field.axis_index_mode(AxisLabel::X, mode)?;
        let mu_axis = field.axis_index_mode(AxisLabel::Mu, mode)?;
        let nu_axis = field.axis_index_mode(AxisLabel::Nu, mode)?;
        let shape = field.shape();
        let x_ctx = XCtx::new(&shape, x_axis, &field.axes()[x_axis]);
        let nu_reduced = reduced_coordinate(field, x_axis, nu_axis);
        Ok(ModeLayout {
            representation: Representation::Symplectic,
            constants,
            x_ctx,
            theta_axis: usize::MAX,
            mu_axis,
            nu_axis,
            theta_mult: Vec::new(),
            sin_reduced: Vec::new(),
            cos_reduced: Vec::new(),
            nu_reduced,
            mu_step: field.axes()[mu_axis].step,
            nu_step: field.axes()[nu_axis].step,
        })
    }

    /// ∂θ on an extended field (grid and tails).
    fn dtheta_ext(&self, f: &mut ExtField) {
        let mult = &self.theta_mult;
        f.apply_reduced_axis_op(&self.x_ctx, self.theta_axis, |vals, shape, axis| {
            spectral_multiplier(vals, shape, axis, mult);
        });
    }

    /// ∂μ on an extended field (4th-order finite differences).
    fn dmu_ext(&self, f: &mut ExtField) {
        let h = self.mu_step;
        f.apply_reduced_axis_op(&self.x_ctx, self.mu_axis, |vals, shape, axis| {
            fd_axis(vals, shape, axis, h, 1);
        });
    }

    /// The q-multiplication operator A: optical sinθ ∂θ (∂X)⁻¹ + X cosθ,
    /// symplectic −(∂X)⁻¹ ∂μ.
    pub fn apply_a(&self, f: &ExtField) -> ExtField {
        match self.representation {
            Representation::Optical => {
                let mut t1 = f.clone_ext();
                t1.inv_dx(&self.x_ctx);
                self.dtheta_ext(&mut t1);
                t1.mul_reduced(&self.x_ctx, &self.sin_reduced);
                let mut t2 = f.clone_ext();
                t2.mul_x(&self.x_ctx);
                t2.mul_reduced(&self.x_ctx, &self.cos_reduced);
                t1.add_assign(&t2);
                t1
            }
            Representation::Symplectic => {
                let mut t = f.clone_ext();
                self.dmu_ext(&mut t);
                t.inv_dx(&self.x_ctx);
                t.scale(-1.0);
                t
            }
        }
    }

    /// The ħ-stripped B̃ on a plain grid: optical (sinθ/(2mω)) ∂X, symplectic
    /// (ν/2) ∂X. B̃ is always applied innermost, so a grid-level op suffices.
    pub fn apply_b_grid(&self, values: &mut [C64]) {
        let ctx = &self.x_ctx;
        let mut ext = ExtField::from_grid(values.to_vec());
        ext.dx(ctx);
        match self.representation {
            Representation::Optical => {
                let scale = 1.0 / (2.0 * self.constants.mass * self.constants.frequency);
                for lane in 0..ctx.lanes() {
                    let c = self.sin_reduced[lane] * scale;
                    let (base, stride) = ctx.lane_base(lane);
                    for i in 0..ctx.n {
                        ext.grid[base + i * stride] *= c;
                    }
                }
            }
            Representation::Symplectic => {
                for lane in 0..ctx.lanes() {
                    let c = self.nu_reduced[lane] * 0.5;
                    let (base, stride) = ctx.lane_base(lane);
                    for i in 0..ctx.n {
                        ext.grid[base + i * stride] *= c;
                    }
                }
            }
        }
        values.copy_from_slice(&ext.grid);
    }

    /// The p-multiplication operator (optical only):
    /// mω (−cosθ (∂X)⁻¹ ∂θ + X sinθ).
    pub fn apply_p_op(&self, f: &ExtField) -> Result<ExtField> {
        if self.representation != Representation::Optical {
            return Err(Error::domain("p operator implemented on optical fields"));
        }
        let mut t1 = f.clone_ext();
        t1.inv_dx(&self.x_ctx);
        self.dtheta_ext(&mut t1);
        t1.mul_reduced(&self.x_ctx, &self.cos_reduced);
        t1.scale(-1.0);
        let mut t2 = f.clone_ext();
        t2.mul_x(&self.x_ctx);
        t2.mul_reduced(&self.x_ctx, &self.sin_reduced);
        t1.add_assign(&t2);
        t1.scale(self.constants.mass * self.constants.frequency);
        Ok(t1)
    }
}

impl ExtField {
    pub(crate) fn clone_ext(&self) -> ExtField {
        ExtField {
            grid: self.grid.clone(),
            poly: self.poly.clone(),
            spoly: self.spoly.clone(),
        }
    }
}

/// q_σ·W correspondence on an optical tomogram:
/// (sin θ ∂θ (∂X)⁻¹ + X cos θ) w.
pub fn q_operator_optical(f: &Field, mode: u8) -> Result<Field> {
    let layout = ModeLayout::optical(f, mode, ModeConstants::default())?;
    let ext = ExtField::from_grid(f.values().to_vec());
    let out = layout.apply_a(&ext);
    super::xfield::lower(out, &layout.x_ctx, f)
}

/// p_σ·W correspondence on an optical tomogram:
/// (−cos θ (∂X)⁻¹ ∂θ + X sin θ) w.
pub fn p_operator_optical(f: &Field, mode: u8) -> Result<Field> {
    let layout = ModeLayout::optical(f, mode, ModeConstants::default())?;
    let ext = ExtField::from_grid(f.values().to_vec());
    let out = layout.apply_p_op(&ext)?;
    super::xfield::lower(out, &layout.x_ctx, f)
}

/// q_σ·W correspondence on a symplectic tomogram: −(∂X)⁻¹ ∂μ M.
pub fn q_operator_symplectic(f: &Field, mode: u8) -> Result<Field> {
    let layout = ModeLayout::symplectic(f, mode, ModeConstants::default())?;
    let ext = ExtField::from_grid(f.values().to_vec());
    let out = layout.apply_a(&ext);
    super::xfield::lower(out, &layout.x_ctx, f)
}

/// p_σ·W correspondence on a symplectic tomogram: −(∂X)⁻¹ ∂ν M.
pub fn p_operator_symplectic(f: &Field, mode: u8) -> Result<Field> {
    let layout = ModeLayout::symplectic(f, mode, ModeConstants::default())?;
    let mut t = ExtField::from_grid(f.values().to_vec());
    let h = layout.nu_step;
    t.apply_reduced_axis_op(&layout.x_ctx, layout.nu_axis, |vals, shape, axis| {
        fd_axis(vals, shape, axis, h, 1);
    });
    t.inv_dx(&layout.x_ctx);
    t.scale(-1.0);
    super::xfield::lower(t, &layout.x_ctx, f)
}
