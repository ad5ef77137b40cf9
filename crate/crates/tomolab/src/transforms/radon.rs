//! Radon transforms between phase-space fields and tomograms.
//!
//! The forward transform uses the projection-slice construction: a zero-padded
//! 2-D Fourier transform of W, a central-slice sample at (η cos θ, η sin θ)
//! with 6-point Lagrange interpolation in the spectral plane, and an inverse
//! transform along η. The inverse transform is filtered back-projection with
//! the |η| ramp, Hann-tapered above 80% of the Nyquist mode.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::axis::{Axis, AxisLabel};
use crate::fields::fft::{dft, ft_forward_lane, ft_inverse_lane};
use crate::fields::field::Field;
use crate::transforms::bridge::optical_to_symplectic_field;
use crate::transforms::interp::{interp2, interp_lane_clamped};

/// Zero-padding factor for spectral interpolation grids.
pub const SPECTRAL_PAD: usize = 4;
/// Ramp-filter taper onset as a fraction of the Nyquist mode.
pub const TAPER_FRACTION: f64 = 0.8;
/// Eq.-14 symmetry tolerance checked before inversion.
pub const SYMMETRY_TOL: f64 = 1e-6;
/// Boundary amplitude above which a decay warning is recorded.
pub const DECAY_WARN: f64 = 1e-6;

/// Monotone spectral grid of a padded 2-D transform.
struct SpectralPlane {
    values: Vec<C64>, // row-major (a, b), both monotone
    na: usize,
    nb: usize,
    da: f64,
    db: f64,
    a_min: f64,
    b_min: f64,
}

impl SpectralPlane {
    fn sample(&self, a: f64, b: f64) -> C64 {
        let ta = (a - self.a_min) / self.da;
        let tb = (b - self.b_min) / self.db;
        interp2::<6>(&self.values, self.na, self.nb, ta, tb)
    }
}

/// Continuous 2-D Fourier transform Ŵ(a,b) = ∬ W e^{−i(aq+bp)} dq dp on a
/// zero-padded spectral grid, monotone in both wavenumbers.
fn padded_plane(w: &Field) -> Result<SpectralPlane> {
    if w.rank() != 2 {
        return Err(Error::domain("phase-space field must have rank 2"));
    }
    let qa = &w.axes()[0];
    let pa = &w.axes()[1];
    let (nq, np) = (qa.count, pa.count);
    let (na, nb) = (SPECTRAL_PAD * nq, SPECTRAL_PAD * np);
    let (offq, offp) = ((na - nq) / 2, (nb - np) / 2);
    let q0 = qa.start - offq as f64 * qa.step;
    let p0 = pa.start - offp as f64 * pa.step;

    let mut buf = vec![C64::new(0.0, 0.0); na * nb];
    for i in 0..nq {
        let src = i * np;
        let dst = (offq + i) * nb + offp;
        buf[dst..dst + np].copy_from_slice(&w.values()[src..src + np]);
    }
    // DFT along p (contiguous rows)
    for row in buf.chunks_exact_mut(nb) {
        dft(row);
    }
    // DFT along q (strided columns)
    let mut col = vec![C64::new(0.0, 0.0); na];
    for j in 0..nb {
        for i in 0..na {
            col[i] = buf[i * nb + j];
        }
        dft(&mut col);
        for i in 0..na {
            buf[i * nb + j] = col[i];
        }
    }
    // reorder to monotone wavenumbers and attach continuous phases
    let da = 2.0 * std::f64::consts::PI / (na as f64 * qa.step);
    let db = 2.0 * std::f64::consts::PI / (nb as f64 * pa.step);
    let a_min = -((na / 2) as f64) * da;
    let b_min = -((nb / 2) as f64) * db;
    let scale = qa.step * pa.step;
    let pha: Vec<C64> = (0..na)
        .map(|ia| C64::from_polar(1.0, -(a_min + ia as f64 * da) * q0))
        .collect();
    let phb: Vec<C64> = (0..nb)
        .map(|ib| C64::from_polar(1.0, -(b_min + ib as f64 * db) * p0))
        .collect();
    let mut values = vec![C64::new(0.0, 0.0); na * nb];
    for ia in 0..na {
        let m = (ia + na / 2) % na;
        for ib in 0..nb {
            let l = (ib + nb / 2) % nb;
            values[ia * nb + ib] = buf[m * nb + l] * pha[ia] * phb[ib] * scale;
        }
    }
    Ok(SpectralPlane { values, na, nb, da, db, a_min, b_min })
}

fn boundary_amplitude(w: &Field) -> f64 {
    let (nq, np) = (w.axes()[0].count, w.axes()[1].count);
    let mut edge: f64 = 0.0;
    for j in 0..np {
        edge = edge.max(w.values()[j].norm());
        edge = edge.max(w.values()[(nq - 1) * np + j].norm());
    }
    for i in 0..nq {
        edge = edge.max(w.values()[i * np].norm());
        edge = edge.max(w.values()[i * np + np - 1].norm());
    }
    edge
}

/// Optical tomogram of a phase-space field:
/// w(X,θ) = ∫ W(q,p) δ(X − q cos θ − p sin θ) dq dp / (2π).
pub fn radon_optical(w_field: &Field, x_axis: &Axis, theta_axis: &Axis) -> Result<Field> {
    let plane = padded_plane(w_field)?;
    let edge = boundary_amplitude(w_field);
    let nx = x_axis.count;
    let nt = theta_axis.count;
    let ks = x_axis.wavenumbers();

    let columns: Vec<Vec<C64>> = (0..nt)
        .into_par_iter()
        .map(|j| {
            let th = theta_axis.at(j);
            let (c, s) = (th.cos(), th.sin());
            let mut chi: Vec<C64> = ks.iter().map(|&k| plane.sample(k * c, k * s)).collect();
            ft_inverse_lane(&mut chi, x_axis, 1.0);
            for v in chi.iter_mut() {
                *v /= 2.0 * std::f64::consts::PI;
            }
            chi
        })
        .collect();

    let mut out = Field::zeros(vec![x_axis.clone(), theta_axis.clone()])?;
    for (j, col) in columns.iter().enumerate() {
        for i in 0..nx {
            out.values_mut()[i * nt + j] = col[i];
        }
    }
    out.metadata = w_field.metadata.clone();
    if edge > DECAY_WARN {
        out.metadata.insert("decay_warning".to_string(), format!("{edge:.3e}"));
    }
    Ok(out)
}

/// Symplectic tomogram of a phase-space field, evaluated through the
/// optical tomogram and the homogeneity bridge M(X,μ,ν) = r⁻¹ w(X/r, φ).
pub fn radon_symplectic(
    w_field: &Field,
    x_axis: &Axis,
    mu_axis: &Axis,
    nu_axis: &Axis,
) -> Result<Field> {
    let theta = Axis::new_periodic(AxisLabel::Theta, 0.0, 64)?;
    let w = radon_optical(w_field, x_axis, &theta)?;
    optical_to_symplectic_field(&w, x_axis, mu_axis, nu_axis)
}

/// Reconstruction diagnostics emitted next to the Wigner field.
#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionReport {
    pub symmetry_residual: f64,
    pub taper_fraction: f64,
    pub pad_factor: usize,
}

/// Residual of the reflection symmetry w(−X, θ+π) = w(X, θ).
pub fn symmetry_residual(w: &Field) -> Result<f64> {
    let ix = w.axis_index(AxisLabel::X)?;
    let it = w.axis_index(AxisLabel::Theta)?;
    if w.rank() != 2 || ix != 0 || it != 1 {
        return Err(Error::domain("expected an (X, θ) optical tomogram"));
    }
    let (nx, nt) = (w.axes()[0].count, w.axes()[1].count);
    let mut worst: f64 = 0.0;
    for i in 0..nx {
        let ri = (nx - i) % nx; // −X, identifying ±L/2 on the periodic extension
        for j in 0..nt {
            let rj = (j + nt / 2) % nt;
            let d = (w.values()[i * nt + j] - w.values()[ri * nt + rj]).norm();
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

/// Trigonometric (exact for band-limited data) upsampling along θ.
fn fourier_upsample_theta(w: &Field, factor: usize) -> Result<Field> {
    let it = w.axis_index(AxisLabel::Theta)?;
    if it != 1 || w.rank() != 2 {
        return Err(Error::domain("expected an (X, θ) optical tomogram"));
    }
    let nt = w.axes()[1].count;
    let ntf = nt * factor;
    let nx = w.axes()[0].count;
    let theta_fine = Axis::new_periodic(AxisLabel::Theta, w.axes()[1].start, ntf)?;
    let mut out = Field::zeros(vec![w.axes()[0].clone(), theta_fine])?;
    let mut row = vec![C64::new(0.0, 0.0); nt];
    let mut fine = vec![C64::new(0.0, 0.0); ntf];
    for i in 0..nx {
        row.copy_from_slice(&w.values()[i * nt..(i + 1) * nt]);
        dft(&mut row);
        for v in fine.iter_mut() {
            *v = C64::new(0.0, 0.0);
        }
        for m in 0..=nt / 2 {
            if m == nt / 2 {
                // split the Nyquist mode between ±nt/2
                fine[m] = row[m] * 0.5;
                fine[ntf - m] = row[m] * 0.5;
            } else if m == 0 {
                fine[0] = row[0];
            } else {
                fine[m] = row[m];
                fine[ntf - m] = row[nt - m];
            }
        }
        crate::fields::fft::idft_unnorm(&mut fine);
        for (j, v) in fine.iter().enumerate() {
            out.values_mut()[i * ntf + j] = v / nt as f64;
        }
    }
    out.metadata = w.metadata.clone();
    Ok(out)
}

/// Inverse Radon transform (filtered back-projection) of an optical
/// tomogram onto a phase-space grid.
pub fn inverse_radon(
    w: &Field,
    q_axis: &Axis,
    p_axis: &Axis,
) -> Result<(Field, ReconstructionReport)> {
    let sym = symmetry_residual(w)?;
    if sym > SYMMETRY_TOL {
        return Err(Error::contract(format!(
            "optical tomogram violates the reflection symmetry by {sym:.3e} > {SYMMETRY_TOL:.1e}"
        )));
    }
    // refine the back-projection angular quadrature; the θ integrand sweeps
    // faster than the tomogram's own angular band limit at large |q|,|p|
    let w = fourier_upsample_theta(w, 4)?;
    let x_axis = w.axis(AxisLabel::X)?.clone();
    let theta_axis = w.axis(AxisLabel::Theta)?.clone();
    let (nx, nt) = (x_axis.count, theta_axis.count);
    let half_t = nt / 2;

    // padded X axis for fine filtered projections
    let npad = SPECTRAL_PAD * nx;
    let off = (npad - nx) / 2;
    let x_pad = Axis {
        label: AxisLabel::X,
        mode: 0,
        start: x_axis.start - off as f64 * x_axis.step,
        step: x_axis.step,
        count: npad,
        periodic: false,
    };
    let eta_nyquist = std::f64::consts::PI / x_axis.step;
    let taper_start = TAPER_FRACTION * eta_nyquist;

    // filtered projections f_θ(s) = (1/2π) ∫ |η| χ(η) e^{−iηs} dη. The ramp
    // filter gives f the universal tail −χ(0)/(π s²); on the periodic s grid
    // the wrapped images of that tail are removed in closed form
    // (Σ_{k≠0} (s+kP)^{-2} = (π/P)² csc²(πs/P) − s^{-2}).
    let period = x_pad.length();
    let projections: Vec<Vec<C64>> = (0..half_t)
        .into_par_iter()
        .map(|j| {
            let mut lane = vec![C64::new(0.0, 0.0); npad];
            for i in 0..nx {
                lane[off + i] = w.values()[i * nt + j];
            }
            ft_forward_lane(&mut lane, &x_pad, -1.0);
            let chi0 = lane[0];
            for (m, &eta) in x_pad.wavenumbers().iter().enumerate() {
                let a = eta.abs();
                let filter = if a <= taper_start {
                    a
                } else {
                    let x = (a - taper_start) / (eta_nyquist - taper_start);
                    a * (0.5 * std::f64::consts::PI * x).cos().powi(2)
                };
                lane[m] *= filter;
            }
            ft_inverse_lane(&mut lane, &x_pad, -1.0);
            let pi = std::f64::consts::PI;
            for (i, v) in lane.iter_mut().enumerate() {
                let s = x_pad.at(i);
                let wrapped = if s.abs() < 1e-6 {
                    pi * pi / (3.0 * period * period)
                } else {
                    (pi / period).powi(2) / (pi * s / period).sin().powi(2) - 1.0 / (s * s)
                };
                *v += chi0 * (wrapped / pi);
            }
            lane
        })
        .collect();

    let dtheta = theta_axis.step;
    let np = p_axis.count;
    let values: Vec<C64> = (0..q_axis.count)
        .into_par_iter()
        .flat_map_iter(|iq| {
            let q = q_axis.at(iq);
            let mut row = Vec::with_capacity(np);
            for jp in 0..np {
                let p = p_axis.at(jp);
                let mut acc = 0.0;
                for (j, proj) in projections.iter().enumerate() {
                    let th = theta_axis.at(j);
                    let s = q * th.cos() + p * th.sin();
                    let t = (s - x_pad.start) / x_pad.step;
                    acc += interp_lane_clamped::<4>(proj, 1, t).re;
                }
                row.push(C64::new(acc * dtheta, 0.0));
            }
            row
        })
        .collect();

    let mut out = Field::new(
        vec![
            Axis { label: AxisLabel::Q, ..q_axis.clone() },
            Axis { label: AxisLabel::P, ..p_axis.clone() },
        ],
        values,
    )?;
    out.metadata = w.metadata.clone();
    let report = ReconstructionReport {
        symmetry_residual: sym,
        taper_fraction: TAPER_FRACTION,
        pad_factor: SPECTRAL_PAD,
    };
    out.metadata.insert("taper_fraction".to_string(), format!("{TAPER_FRACTION}"));
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::axis::{
        default_p_axis, default_q_axis, default_theta_axis, default_x_axis,
    };
    use crate::fields::ops::{integrate_x, mean_x};
    use std::f64::consts::PI;

    fn vacuum_wigner() -> Field {
        Field::from_fn(vec![default_q_axis(), default_p_axis()], |c| {
            C64::new(2.0 * (-c[0] * c[0] - c[1] * c[1]).exp(), 0.0)
        })
        .unwrap()
    }

    fn fock1_wigner() -> Field {
        Field::from_fn(vec![default_q_axis(), default_p_axis()], |c| {
            let r2 = c[0] * c[0] + c[1] * c[1];
            C64::new(-2.0 * (1.0 - 2.0 * r2) * (-r2).exp(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn vacuum_projection_is_gaussian_for_all_angles() {
        let w = radon_optical(&vacuum_wigner(), &default_x_axis(), &default_theta_axis()).unwrap();
        let expect = Field::from_fn(w.axes().to_vec(), |c| {
            C64::new((-c[0] * c[0]).exp() / PI.sqrt(), 0.0)
        })
        .unwrap();
        let err = w.sup_distance(&expect).unwrap();
        assert!(err <= 1e-6, "sup err {err:.3e}");
    }

    #[test]
    fn theta_zero_slice_is_position_marginal() {
        let wf = fock1_wigner();
        let w = radon_optical(&wf, &default_x_axis(), &default_theta_axis()).unwrap();
        // ∫ W dp / (2π) on the q grid
        let dp = wf.axes()[1].step;
        let nt = 64;
        for i in 0..256 {
            let marg: f64 =
                (0..256).map(|j| wf.values()[i * 256 + j].re).sum::<f64>() * dp / (2.0 * PI);
            let got = w.values()[i * nt].re;
            assert!((got - marg).abs() <= 1e-8, "i={i}: {got} vs {marg}");
        }
    }

    #[test]
    fn fock1_projection_matches_closed_form() {
        let w = radon_optical(&fock1_wigner(), &default_x_axis(), &default_theta_axis()).unwrap();
        let expect = Field::from_fn(w.axes().to_vec(), |c| {
            C64::new(2.0 * c[0] * c[0] * (-c[0] * c[0]).exp() / PI.sqrt(), 0.0)
        })
        .unwrap();
        let err = w.sup_distance(&expect).unwrap();
        assert!(err <= 1e-5, "sup err {err:.3e}");
    }

    #[test]
    fn radon_output_satisfies_reflection_symmetry() {
        // displaced state: W of coherent α = 1
        let wf = Field::from_fn(vec![default_q_axis(), default_p_axis()], |c| {
            let d = c[0] - 2.0f64.sqrt();
            C64::new(2.0 * (-d * d - c[1] * c[1]).exp(), 0.0)
        })
        .unwrap();
        let w = radon_optical(&wf, &default_x_axis(), &default_theta_axis()).unwrap();
        assert!(symmetry_residual(&w).unwrap() <= 1e-10);
        // marginal normalization survives the projection
        let marg = integrate_x(&w).unwrap();
        for v in marg.values() {
            assert!((v.re - 1.0).abs() <= 1e-7);
        }
    }

    #[test]
    fn roundtrip_vacuum() {
        let w0 = vacuum_wigner();
        let w = radon_optical(&w0, &default_x_axis(), &default_theta_axis()).unwrap();
        let (rec, report) = inverse_radon(&w, &default_q_axis(), &default_p_axis()).unwrap();
        assert!(report.symmetry_residual <= 1e-10);
        let err = rec.sup_distance(&w0).unwrap();
        assert!(err <= 1e-3, "roundtrip sup err {err:.3e}");
    }

    #[test]
    fn coherent_reconstruction_peaks_at_displacement() {
        let wf = Field::from_fn(vec![default_q_axis(), default_p_axis()], |c| {
            let d = c[0] - 2.0f64.sqrt();
            C64::new(2.0 * (-d * d - c[1] * c[1]).exp(), 0.0)
        })
        .unwrap();
        let w = radon_optical(&wf, &default_x_axis(), &default_theta_axis()).unwrap();
        let (rec, _) = inverse_radon(&w, &default_q_axis(), &default_p_axis()).unwrap();
        let max_idx = rec
            .values()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.re.total_cmp(&b.1.re))
            .unwrap()
            .0;
        let (iq, ip) = (max_idx / 256, max_idx % 256);
        let (q, p) = (default_q_axis().at(iq), default_p_axis().at(ip));
        assert!((q - 2.0f64.sqrt()).abs() <= default_q_axis().step + 1e-12);
        assert!(p.abs() <= default_p_axis().step + 1e-12);
    }

    #[test]
    fn fock1_negativity_survives_reconstruction() {
        let w = radon_optical(&fock1_wigner(), &default_x_axis(), &default_theta_axis()).unwrap();
        let (rec, _) = inverse_radon(&w, &default_q_axis(), &default_p_axis()).unwrap();
        let iq = default_q_axis().values().iter().position(|&q| q == 0.0).unwrap();
        let v = rec.values()[iq * 256 + iq].re;
        assert!((v + 2.0).abs() <= 0.02, "W(0,0) = {v}");
    }

    #[test]
    fn asymmetric_input_rejected() {
        let mut w =
            radon_optical(&vacuum_wigner(), &default_x_axis(), &default_theta_axis()).unwrap();
        let nt = 64;
        w.values_mut()[10 * nt + 3] += C64::new(1e-3, 0.0);
        assert!(inverse_radon(&w, &default_q_axis(), &default_p_axis()).is_err());
    }

    #[test]
    fn projection_mean_is_zero_mean_consistent() {
        let w = radon_optical(&vacuum_wigner(), &default_x_axis(), &default_theta_axis()).unwrap();
        let m = mean_x(&w).unwrap();
        for v in m.values() {
            assert!((v.re - 1.0 / 16.0).abs() < 1e-8);
        }
    }
}
