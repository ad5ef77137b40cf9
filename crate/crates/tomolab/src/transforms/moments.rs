//! Quadrature moments ⟨Xⁿ⟩(θ) of optical tomograms, by direct quadrature and
//! through η-derivatives of the characteristic function.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::AxisLabel;
use crate::fields::fd::{centered_offsets, fornberg_weights};
use crate::fields::field::Field;
use crate::fields::ops::{integrate_x, pointwise_mul};
use crate::transforms::characteristic::CharacteristicFunction;

pub const MAX_MOMENT: usize = 8;

/// ⟨Xⁿ⟩(θ) = ∫ Xⁿ w(X,θ) dX; rank drops by one.
pub fn quadrature_moment(w: &Field, n: usize) -> Result<Field> {
    if n > MAX_MOMENT {
        return Err(Error::domain(format!("moment order {n} exceeds bound {MAX_MOMENT}")));
    }
    let ix = w.axis_index(AxisLabel::X)?;
    let weighted = pointwise_mul(w, |c| c[ix].powi(n as i32));
    integrate_x(&weighted)
}

/// ⟨Xⁿ⟩(θ) = i^{−n} ∂ⁿ_η χ_w |_{η=0}, with the derivative taken by
/// high-order centered finite differences on the η grid.
///
/// The χ samples are first refined 4× in η (the tomogram has compact support,
/// so χ at intermediate η values is obtained exactly by re-transforming the
/// zero-padded tomogram); the stencil then has headroom for oscillating χ.
pub fn moment_from_characteristic(chi: &CharacteristicFunction, n: usize) -> Result<Field> {
    if n > MAX_MOMENT {
        return Err(Error::domain(format!("moment order {n} exceeds bound {MAX_MOMENT}")));
    }
    let fine = refine_eta(chi, 4)?;
    let eta = fine.dual_axis();
    let rest = fine.field.len() / eta.count;
    let center = fine.zero_index();
    let half = (n + 5) / 2 + 1; // ≥ 6th-order accuracy
    if center < half || center + half >= eta.count {
        return Err(Error::domain("η grid too short for the moment stencil"));
    }
    let mut axes = fine.field.axes().to_vec();
    axes.remove(0);
    let mut out = Field::zeros(axes)?;
    if n == 0 {
        for s in 0..rest {
            out.values_mut()[s] = fine.field.values()[center * rest + s];
        }
        return Ok(out);
    }
    let w = fornberg_weights(0.0, &centered_offsets(half), n);
    let scale = eta.step.powi(n as i32);
    // i^{−n}
    let phase = C64::new(0.0, -1.0).powu(n as u32);
    for s in 0..rest {
        let mut acc = C64::new(0.0, 0.0);
        for (j, &wj) in w.iter().enumerate() {
            let row = center - half + j;
            acc += fine.field.values()[row * rest + s] * wj;
        }
        out.values_mut()[s] = acc / scale * phase;
    }
    Ok(out)
}

/// Exact η-refinement of a characteristic function: invert to the compactly
/// supported tomogram, zero-pad the X domain, transform again.
fn refine_eta(chi: &CharacteristicFunction, factor: usize) -> Result<CharacteristicFunction> {
    let w = chi.inverse()?;
    let x = &chi.x_axis;
    let n = x.count;
    let npad = factor * n;
    let off = (npad - n) / 2;
    let x_pad = crate::fields::axis::Axis {
        count: npad,
        start: x.start - off as f64 * x.step,
        ..x.clone()
    };
    let rest = w.len() / n;
    let mut axes = w.axes().to_vec();
    axes[0] = x_pad;
    let mut padded = Field::zeros(axes)?;
    for j in 0..n {
        let src = j * rest;
        let dst = (off + j) * rest;
        padded.values_mut()[dst..dst + rest].copy_from_slice(&w.values()[src..src + rest]);
    }
    match chi.dual_axis().label {
        AxisLabel::Z => crate::transforms::characteristic::characteristic_fn_symplectic(&padded),
        _ => crate::transforms::characteristic::characteristic_fn(&padded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::axis::{default_theta_axis, default_x_axis};
    use crate::transforms::characteristic::characteristic_fn;
    use std::f64::consts::PI;

    fn vacuum_tomogram() -> Field {
        Field::from_fn(vec![default_x_axis(), default_theta_axis()], |c| {
            C64::new((-c[0] * c[0]).exp() / PI.sqrt(), 0.0)
        })
        .unwrap()
    }

    fn coherent_tomogram() -> Field {
        Field::from_fn(vec![default_x_axis(), default_theta_axis()], |c| {
            let d = c[0] - 2.0f64.sqrt() * c[1].cos();
            C64::new((-d * d).exp() / PI.sqrt(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn zeroth_moment_is_one() {
        let m = quadrature_moment(&vacuum_tomogram(), 0).unwrap();
        for v in m.values() {
            assert!((v.re - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn vacuum_second_moment() {
        let m = quadrature_moment(&vacuum_tomogram(), 2).unwrap();
        for v in m.values() {
            assert!((v.re - 0.5).abs() <= 1e-8);
        }
    }

    #[test]
    fn coherent_first_moment_is_cosine() {
        let m = quadrature_moment(&coherent_tomogram(), 1).unwrap();
        let th = default_theta_axis();
        for (j, v) in m.values().iter().enumerate() {
            let expect = 2.0f64.sqrt() * th.at(j).cos();
            assert!((v.re - expect).abs() <= 1e-7, "θ={}", th.at(j));
        }
    }

    #[test]
    fn moment_bound_enforced() {
        assert!(quadrature_moment(&vacuum_tomogram(), 9).is_err());
    }

    #[test]
    fn characteristic_route_agrees_with_quadrature() {
        let w = coherent_tomogram();
        let chi = characteristic_fn(&w).unwrap();
        for n in 0..=4usize {
            let a = quadrature_moment(&w, n).unwrap();
            let b = moment_from_characteristic(&chi, n).unwrap();
            let err = a.sup_distance(&b).unwrap();
            assert!(err <= 1e-5, "n={n}: {err:.3e}");
        }
    }
}
