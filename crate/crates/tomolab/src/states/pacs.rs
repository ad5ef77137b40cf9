//! Photon-added coherent states of the parametric oscillator: wavefunctions
//! and closed-form tomograms. Fock(m) = PACS(0, m), Coherent(α) = PACS(α, 0).

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::axis::Axis;
use crate::fields::field::Field;
use crate::states::epsilon::EpsSample;
use crate::states::profile::FrequencyProfile;
use crate::states::special::{factorial, hermite, laguerre, MAX_PHOTONS};

/// Per-mode dimensional constants (ħ = m = ω = 1 by default).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeConstants {
    pub mass: f64,
    pub frequency: f64,
    pub hbar: f64,
}

impl Default for ModeConstants {
    fn default() -> Self {
        ModeConstants { mass: 1.0, frequency: 1.0, hbar: 1.0 }
    }
}

impl ModeConstants {
    pub fn validate(&self) -> Result<()> {
        if [self.mass, self.frequency, self.hbar].iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::domain("mode constants must be strictly positive"));
        }
        Ok(())
    }
}

/// Catalog bound on the coherent amplitude.
pub const MAX_ALPHA: f64 = 4.0;

/// Photon-added coherent state â†^m |α⟩ of the parametric oscillator.
#[derive(Debug, Clone, PartialEq)]
pub struct PacsSpec {
    pub alpha: C64,
    pub photons: u32,
    pub profile: FrequencyProfile,
}

impl PacsSpec {
    pub fn new(alpha: C64, photons: u32, profile: FrequencyProfile) -> Result<Self> {
        if photons > MAX_PHOTONS {
            return Err(Error::domain(format!(
                "photon number {photons} exceeds catalog bound {MAX_PHOTONS}"
            )));
        }
        if alpha.norm() > MAX_ALPHA {
            return Err(Error::domain(format!(
                "|α| = {:.3} exceeds catalog bound {MAX_ALPHA}",
                alpha.norm()
            )));
        }
        profile.validate_for_catalog()?;
        Ok(PacsSpec { alpha, photons, profile })
    }

    pub fn vacuum() -> Self {
        Self::fock(0)
    }

    pub fn fock(m: u32) -> Self {
        PacsSpec::new(C64::new(0.0, 0.0), m, FrequencyProfile::constant(1.0)).expect("in catalog")
    }

    pub fn coherent(alpha: C64) -> Result<Self> {
        PacsSpec::new(alpha, 0, FrequencyProfile::constant(1.0))
    }

    /// (m! L_m(−|α|²))^{-1/2}, the photon-added normalization.
    fn norm_constant(&self) -> Result<f64> {
        let l = laguerre(self.photons, -self.alpha.norm_sqr())?;
        if !(l > 0.0) {
            return Err(Error::domain("L_m(−|α|²) must be positive"));
        }
        Ok(1.0 / (factorial(self.photons) * l).sqrt())
    }

    pub fn id(&self) -> String {
        if self.alpha.norm() == 0.0 {
            format!("fock{}", self.photons)
        } else if self.photons == 0 {
            format!("coherent({:+.3}{:+.3}i)", self.alpha.re, self.alpha.im)
        } else {
            format!("pacs({:+.3}{:+.3}i,m={})", self.alpha.re, self.alpha.im, self.photons)
        }
    }
}

/// ⟨q|α,m,t⟩ on the given q grid.
///
/// Branches: with φ the unwrapped phase of ε, (ε*/2ε)^{m/2} = 2^{-m/2} e^{-imφ},
/// √(ε*/2ε) = 2^{-1/2} e^{-iφ} and ε^{-1/2} = |ε|^{-1/2} e^{-iφ/2}; continuity
/// in t is inherited from the trajectory's phase tracking.
pub fn pacs_wavefunction(spec: &PacsSpec, sample: &EpsSample, q_axis: &Axis) -> Result<Field> {
    sample.check_wronskian()?;
    let m = spec.photons;
    let alpha = spec.alpha;
    let eps = sample.eps;
    let eps_dot = sample.eps_dot;
    let phi = sample.phase;
    let abs_eps = eps.norm();

    let norm = spec.norm_constant()?;
    let sqrt_half_ratio = C64::from_polar(0.5f64.sqrt(), -phi); // √(ε*/2ε)
    let ratio_pow = C64::from_polar(0.5f64.powf(m as f64 / 2.0), -(m as f64) * phi);
    let inv_sqrt_eps = C64::from_polar(abs_eps.powf(-0.5), -phi / 2.0);
    let pref = norm * ratio_pow * PI.powf(-0.25) * inv_sqrt_eps;

    let quad = C64::new(0.0, 1.0) * eps_dot / (2.0 * eps);
    let lin = 2.0f64.sqrt() * alpha / eps;
    let constant = -alpha * alpha * eps.conj() / (2.0 * eps) - alpha.norm_sqr() / 2.0;

    let mut values = Vec::with_capacity(q_axis.count);
    for i in 0..q_axis.count {
        let q = q_axis.at(i);
        let h_arg = C64::new(q / abs_eps, 0.0) - sqrt_half_ratio * alpha;
        let h = hermite(m, h_arg)?;
        let expo = quad * q * q + lin * q + constant;
        values.push(pref * h * expo.exp());
    }
    let mut f = Field::new(vec![q_axis.clone()], values)?;
    f.metadata.insert("state".to_string(), spec.id());
    f.metadata.insert("time".to_string(), format!("{}", sample.t));
    Ok(f)
}

/// Closed-form symplectic tomogram M_{αm}(X, μ, ν, t) at one point.
///
/// Requires (μ,ν) ≠ (0,0); the Wronskian keeps |με + νε̇| bounded away from
/// zero everywhere else, so every sampled ray is finite.
pub fn pacs_symplectic_point(
    spec: &PacsSpec,
    sample: &EpsSample,
    x: f64,
    mu: f64,
    nu: f64,
) -> Result<f64> {
    if mu == 0.0 && nu == 0.0 {
        return Err(Error::domain("symplectic tomogram is singular on the ray μ = ν = 0"));
    }
    sample.check_wronskian()?;
    let m = spec.photons;
    let alpha = spec.alpha;
    let eps = sample.eps;
    let eps_dot = sample.eps_dot;
    let phi = sample.phase;
    let abs_eps = eps.norm();

    let d = eps * mu + eps_dot * nu;
    let abs_d = d.norm();

    let norm_sq = {
        let l = laguerre(m, -alpha.norm_sqr())?;
        1.0 / (factorial(m) * l)
    };
    let pref = norm_sq / (PI.sqrt() * 2.0f64.powi(m as i32) * abs_d);

    // Argument of H_m with the branch fixed by the unwrapped ε phase. The
    // scaling factor is the pure phase e^{i(arg d − φ)} (its sign is
    // irrelevant under |H_m|² parity).
    let scale = C64::from_polar(1.0, d.arg() - phi);
    let inner = (C64::new(x, 0.0) * eps + C64::new(0.0, 2.0f64.sqrt()) * alpha * nu)
        / (abs_eps * d)
        - C64::from_polar(0.5f64.sqrt(), -phi) * alpha;
    let h = hermite(m, inner * scale)?;

    let e_arg = -alpha.norm_sqr() / 2.0 - x * x / (2.0 * abs_d * abs_d)
        + 2.0f64.sqrt() * alpha * x / d
        - alpha * alpha * eps.conj() / (2.0 * eps)
        + C64::new(0.0, nu) * alpha * alpha / (eps * d);

    Ok(pref * h.norm_sqr() * (2.0 * e_arg.re).exp())
}

/// Closed-form symplectic tomogram sampled on an (X, μ, ν) grid.
pub fn pacs_symplectic_tomogram(
    spec: &PacsSpec,
    sample: &EpsSample,
    x_axis: &Axis,
    mu_axis: &Axis,
    nu_axis: &Axis,
) -> Result<Field> {
    let mut f = Field::zeros(vec![x_axis.clone(), mu_axis.clone(), nu_axis.clone()])?;
    let (nm, nn) = (mu_axis.count, nu_axis.count);
    for i in 0..x_axis.count {
        let x = x_axis.at(i);
        for j in 0..nm {
            let mu = mu_axis.at(j);
            for k in 0..nn {
                let nu = nu_axis.at(k);
                let v = pacs_symplectic_point(spec, sample, x, mu, nu)?;
                f.values_mut()[(i * nm + j) * nn + k] = C64::new(v, 0.0);
            }
        }
    }
    f.metadata.insert("state".to_string(), spec.id());
    f.metadata.insert("time".to_string(), format!("{}", sample.t));
    Ok(f)
}

/// Optical tomogram w(X, θ, t) = M(X, cos θ, sin θ, t), tagged `probability`.
pub fn pacs_optical_tomogram(
    spec: &PacsSpec,
    sample: &EpsSample,
    x_axis: &Axis,
    theta_axis: &Axis,
) -> Result<Field> {
    let mut f = Field::zeros(vec![x_axis.clone(), theta_axis.clone()])?;
    let nt = theta_axis.count;
    for i in 0..x_axis.count {
        let x = x_axis.at(i);
        for j in 0..nt {
            let th = theta_axis.at(j);
            let v = pacs_symplectic_point(spec, sample, x, th.cos(), th.sin())?;
            f.values_mut()[i * nt + j] = C64::new(v, 0.0);
        }
    }
    f.metadata.insert("state".to_string(), spec.id());
    f.metadata.insert("time".to_string(), format!("{}", sample.t));
    f.into_probability(1e-8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::axis::{default_theta_axis, default_x_axis};
    use crate::fields::ops::integrate_x;
    use crate::states::epsilon::epsilon_at;

    fn q_axis() -> Axis {
        default_x_axis()
    }

    #[test]
    fn vacuum_wavefunction_at_origin() {
        let psi = pacs_wavefunction(&PacsSpec::vacuum(), &EpsSample::initial(), &q_axis()).unwrap();
        let i0 = q_axis().values().iter().position(|&q| q == 0.0).unwrap();
        // ψ(0) = π^{-1/4}
        assert!((psi.values()[i0] - C64::new(0.7511255444649425, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn fock1_wavefunction_vanishes_at_origin() {
        for t in [0.0, 0.7] {
            let s = epsilon_at(&FrequencyProfile::constant(1.0), t).unwrap();
            let psi = pacs_wavefunction(&PacsSpec::fock(1), &s, &q_axis()).unwrap();
            let i0 = q_axis().values().iter().position(|&q| q == 0.0).unwrap();
            assert!(psi.values()[i0].norm() < 1e-14);
        }
    }

    #[test]
    fn wavefunctions_are_normalized() {
        let specs = [
            PacsSpec::vacuum(),
            PacsSpec::fock(2),
            PacsSpec::coherent(C64::new(1.0, 0.0)).unwrap(),
            PacsSpec::new(C64::new(1.0, 0.5), 1, FrequencyProfile::constant(1.0)).unwrap(),
            PacsSpec::new(C64::new(1.0, 0.0), 2, FrequencyProfile::jump(0.0, 2.0)).unwrap(),
        ];
        for spec in specs {
            for t in [0.0, 0.7] {
                let s = epsilon_at(&spec.profile, t).unwrap();
                let psi = pacs_wavefunction(&spec, &s, &q_axis()).unwrap();
                let norm: f64 =
                    psi.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * q_axis().step;
                assert!((norm - 1.0).abs() <= 1e-8, "{} t={t}: norm {norm}", spec.id());
            }
        }
    }

    #[test]
    fn vacuum_tomogram_is_gaussian_for_all_angles_and_times() {
        let spec = PacsSpec::vacuum();
        for t in [0.0, 0.4, 1.3] {
            let s = epsilon_at(&spec.profile, t).unwrap();
            for th in [0.0f64, 0.7, 2.0, 4.4] {
                for x in [-1.5, 0.0, 0.8] {
                    let m = pacs_symplectic_point(&spec, &s, x, th.cos(), th.sin()).unwrap();
                    let expect = (-x * x).exp() / PI.sqrt();
                    assert!((m - expect).abs() <= 1e-9, "t={t} th={th} x={x}");
                }
            }
        }
    }

    #[test]
    fn fock1_symplectic_tomogram_closed_form() {
        let spec = PacsSpec::fock(1);
        let s = EpsSample::initial();
        for x in [-2.0, -0.3, 0.0, 1.1, 2.4] {
            let m = pacs_symplectic_point(&spec, &s, x, 1.0, 0.0).unwrap();
            let expect = 2.0 * x * x * (-x * x).exp() / PI.sqrt();
            assert!((m - expect).abs() <= 1e-12, "x={x}: {m} vs {expect}");
        }
    }

    #[test]
    fn symplectic_homogeneity() {
        // M(λX, λμ, λν) = M(X,μ,ν)/|λ| at sampled points
        let spec = PacsSpec::new(C64::new(1.0, 0.5), 1, FrequencyProfile::constant(1.0)).unwrap();
        let s = epsilon_at(&spec.profile, 0.7).unwrap();
        for lambda in [2.0, -1.0, 0.35] {
            for (x, mu, nu) in [(0.7, 1.0, 0.2), (-1.3, 0.4, -0.8), (0.0, 0.3, 1.1)] {
                let m1 = pacs_symplectic_point(&spec, &s, x, mu, nu).unwrap();
                let m2 = pacs_symplectic_point(
                    &spec,
                    &s,
                    lambda * x,
                    lambda * mu,
                    lambda * nu,
                )
                .unwrap();
                let lam: f64 = lambda;
                assert!(
                    ((m2 - m1 / lam.abs()) / m1.max(1e-300)).abs() <= 1e-10,
                    "λ={lambda} ({x},{mu},{nu})"
                );
            }
        }
    }

    #[test]
    fn singular_ray_rejected() {
        let err =
            pacs_symplectic_point(&PacsSpec::vacuum(), &EpsSample::initial(), 0.0, 0.0, 0.0);
        assert!(err.is_err());
    }

    #[test]
    fn optical_tomograms_normalize_per_angle() {
        let specs = [
            PacsSpec::fock(1),
            PacsSpec::new(C64::new(1.0, 0.5), 1, FrequencyProfile::constant(1.0)).unwrap(),
        ];
        for spec in specs {
            let s = epsilon_at(&spec.profile, 0.7).unwrap();
            let w = pacs_optical_tomogram(&spec, &s, &default_x_axis(), &default_theta_axis())
                .unwrap();
            let marg = integrate_x(&w).unwrap();
            for v in marg.values() {
                assert!((v.re - 1.0).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn vacuum_optical_value() {
        let w = pacs_optical_tomogram(
            &PacsSpec::vacuum(),
            &EpsSample::initial(),
            &default_x_axis(),
            &default_theta_axis(),
        )
        .unwrap();
        let i0 = default_x_axis().values().iter().position(|&x| x == 0.0).unwrap();
        for j in 0..64 {
            // w(0,θ) = 1/√π
            assert!((w.values()[i0 * 64 + j].re - 0.5641895835477563).abs() < 1e-12);
        }
    }

    #[test]
    fn fock_tomograms_theta_and_time_independent() {
        let spec = PacsSpec::fock(2);
        let w0 = pacs_optical_tomogram(
            &spec,
            &EpsSample::initial(),
            &default_x_axis(),
            &default_theta_axis(),
        )
        .unwrap();
        let s = epsilon_at(&spec.profile, 0.9).unwrap();
        let w1 =
            pacs_optical_tomogram(&spec, &s, &default_x_axis(), &default_theta_axis()).unwrap();
        assert!(w0.sup_distance(&w1).unwrap() <= 1e-9);
        // θ-independence
        let nt = 64;
        for i in 0..256 {
            let row0 = w0.values()[i * nt].re;
            for j in 1..nt {
                assert!((w0.values()[i * nt + j].re - row0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn optical_symmetry_under_reflection() {
        // w(−X, θ+π) = w(X, θ)
        let spec = PacsSpec::new(C64::new(1.0, 0.5), 1, FrequencyProfile::constant(1.0)).unwrap();
        let s = epsilon_at(&spec.profile, 0.7).unwrap();
        for (x, th) in [(0.7, 0.3f64), (-1.1, 2.0), (2.2, 5.1)] {
            let a = pacs_symplectic_point(&spec, &s, x, th.cos(), th.sin()).unwrap();
            let b = pacs_symplectic_point(
                &spec,
                &s,
                -x,
                (th + PI).cos(),
                (th + PI).sin(),
            )
            .unwrap();
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
        }
    }

    #[test]
    fn catalog_bounds_enforced() {
        assert!(PacsSpec::new(C64::new(5.0, 0.0), 0, FrequencyProfile::constant(1.0)).is_err());
        assert!(PacsSpec::new(C64::new(0.0, 0.0), 31, FrequencyProfile::constant(1.0)).is_err());
    }
}
