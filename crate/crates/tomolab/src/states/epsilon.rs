//! Classical complex trajectory ε(t) of the parametric oscillator.
//!
//! ε̈ + Ω²(t) ε = 0 with ε(0) = 1, ε̇(0) = i. The Wronskian
//! ε ε̇* − ε* ε̇ = −2i is conserved and doubles as the integration accuracy
//! gauge. The trajectory also carries the unwrapped phase of ε, which fixes
//! the branch of every square root the photon-added catalog needs.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::{Axis, AxisLabel};
use crate::states::profile::FrequencyProfile;

pub const WRONSKIAN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct EpsSample {
    pub t: f64,
    pub eps: C64,
    pub eps_dot: C64,
    /// Unwrapped arg ε(t), continuous along the trajectory, phase(0) = 0.
    pub phase: f64,
}

impl EpsSample {
    pub fn initial() -> Self {
        EpsSample { t: 0.0, eps: C64::new(1.0, 0.0), eps_dot: C64::new(0.0, 1.0), phase: 0.0 }
    }

    pub fn wronskian_drift(&self) -> f64 {
        let w = self.eps * self.eps_dot.conj() - self.eps.conj() * self.eps_dot;
        (w + C64::new(0.0, 2.0)).norm()
    }

    pub fn check_wronskian(&self) -> Result<()> {
        let d = self.wronskian_drift();
        if d > WRONSKIAN_TOL {
            return Err(Error::contract(format!(
                "Wronskian drift {d:.3e} exceeds {WRONSKIAN_TOL:.1e} at t = {}",
                self.t
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct EpsilonTrajectory {
    samples: Vec<EpsSample>,
}

impl EpsilonTrajectory {
    pub fn samples(&self) -> &[EpsSample] {
        &self.samples
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    /// Largest Wronskian deviation over the trajectory.
    pub fn wronskian_drift(&self) -> f64 {
        self.samples.iter().map(|s| s.wronskian_drift()).fold(0.0, f64::max)
    }

    /// Sample at time `t` (must be one of the stored grid times).
    pub fn at_time(&self, t: f64) -> Result<EpsSample> {
        let tol = 1e-9;
        self.samples
            .iter()
            .find(|s| (s.t - t).abs() <= tol)
            .copied()
            .ok_or_else(|| Error::domain(format!("time {t} is not on the trajectory grid")))
    }
}

fn rk4_step(profile: &FrequencyProfile, t: f64, dt: f64, y: (C64, C64)) -> (C64, C64) {
    let f = |t: f64, y: (C64, C64)| {
        let om = profile.omega_at(t);
        (y.1, -(om * om) * y.0)
    };
    let k1 = f(t, y);
    let k2 = f(t + dt / 2.0, (y.0 + k1.0 * (dt / 2.0), y.1 + k1.1 * (dt / 2.0)));
    let k3 = f(t + dt / 2.0, (y.0 + k2.0 * (dt / 2.0), y.1 + k2.1 * (dt / 2.0)));
    let k4 = f(t + dt, (y.0 + k3.0 * dt, y.1 + k3.1 * dt));
    (
        y.0 + (k1.0 + 2.0 * (k2.0 + k3.0) + k4.0) * (dt / 6.0),
        y.1 + (k1.1 + 2.0 * (k2.1 + k3.1) + k4.1) * (dt / 6.0),
    )
}

fn integrate(profile: &FrequencyProfile, times: &[f64], dt_target: f64) -> EpsilonTrajectory {
    let mut samples = Vec::with_capacity(times.len());
    let mut cur = EpsSample::initial();
    if (times[0] - 0.0).abs() < 1e-15 {
        samples.push(cur);
    }
    let start = samples.len();
    for &t_next in &times[start..] {
        let span = t_next - cur.t;
        let n_sub = (span / dt_target).ceil().max(1.0) as usize;
        let dt = span / n_sub as f64;
        let mut y = (cur.eps, cur.eps_dot);
        let mut phase = cur.phase;
        let mut t = cur.t;
        for _ in 0..n_sub {
            let y_new = rk4_step(profile, t, dt, y);
            phase += (y_new.0 / y.0).arg();
            y = y_new;
            t += dt;
        }
        cur = EpsSample { t: t_next, eps: y.0, eps_dot: y.1, phase };
        samples.push(cur);
    }
    EpsilonTrajectory { samples }
}

/// Integrate ε over the given time axis (which must start at 0) with a
/// classical RK4 scheme. The step is halved until the Wronskian drift over
/// the horizon is below `WRONSKIAN_TOL`.
pub fn solve_epsilon(profile: &FrequencyProfile, t_axis: &Axis) -> Result<EpsilonTrajectory> {
    if t_axis.label != AxisLabel::Time {
        return Err(Error::domain("solve_epsilon expects a time axis"));
    }
    if t_axis.start.abs() > 1e-12 {
        return Err(Error::domain("time axis must start at t = 0"));
    }
    profile.validate()?;
    solve_epsilon_at(profile, &t_axis.values())
}

/// As [`solve_epsilon`] for an explicit, increasing list of sample times
/// starting at 0.
pub fn solve_epsilon_at(profile: &FrequencyProfile, times: &[f64]) -> Result<EpsilonTrajectory> {
    if times.is_empty() || times[0].abs() > 1e-12 {
        return Err(Error::domain("sample times must start at t = 0"));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("sample times must be strictly increasing"));
    }
    profile.validate()?;
    let mut dt = 1e-3;
    for _ in 0..8 {
        let traj = integrate(profile, times, dt);
        if traj.wronskian_drift() <= WRONSKIAN_TOL {
            return Ok(traj);
        }
        dt /= 2.0;
    }
    Err(Error::contract(format!(
        "Wronskian drift above {WRONSKIAN_TOL:.1e} even at dt = {dt:.2e}"
    )))
}

/// Single ε sample at time `t`.
pub fn epsilon_at(profile: &FrequencyProfile, t: f64) -> Result<EpsSample> {
    if t == 0.0 {
        return Ok(EpsSample::initial());
    }
    let traj = solve_epsilon_at(profile, &[0.0, t])?;
    traj.at_time(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn constant_unit_frequency_gives_complex_exponential() {
        // ε(t) = e^{it}; ε(π/2) = i
        let s = epsilon_at(&FrequencyProfile::constant(1.0), FRAC_PI_2).unwrap();
        assert!((s.eps - C64::new(0.0, 1.0)).norm() <= 1e-9);
        assert!((s.eps_dot - C64::new(-1.0, 0.0)).norm() <= 1e-9);
        assert!((s.phase - FRAC_PI_2).abs() <= 1e-9);
    }

    #[test]
    fn constant_omega_two() {
        // ε(t) = cos 2t + (i/2) sin 2t; at t = π/4: ε = i/2, ε̇ = −2
        let s = epsilon_at(&FrequencyProfile::constant(2.0), FRAC_PI_4).unwrap();
        assert!((s.eps - C64::new(0.0, 0.5)).norm() <= 1e-8);
        assert!((s.eps_dot - C64::new(-2.0, 0.0)).norm() <= 1e-8);
    }

    #[test]
    fn free_motion() {
        // Ω ≡ 0: ε(t) = 1 + it
        let s = epsilon_at(&FrequencyProfile::constant(0.0), 1.0).unwrap();
        assert!((s.eps - C64::new(1.0, 1.0)).norm() <= 1e-9);
    }

    #[test]
    fn wronskian_conserved_over_long_horizon() {
        let profiles = [
            FrequencyProfile::constant(1.0),
            FrequencyProfile::jump(0.0, 2.0),
            FrequencyProfile::Sinusoidal { omega0: 1.0, depth: 0.3, drive: 2.0 },
        ];
        let times: Vec<f64> = (0..=100).map(|i| i as f64 * 0.1).collect();
        for p in profiles {
            let traj = solve_epsilon_at(&p, &times).unwrap();
            assert!(traj.wronskian_drift() <= WRONSKIAN_TOL, "{p:?}");
        }
    }

    #[test]
    fn phase_unwraps_past_pi() {
        // ε = e^{it} crosses arg = π at t = π; unwrapped phase keeps growing.
        let s = epsilon_at(&FrequencyProfile::constant(1.0), 1.5 * PI).unwrap();
        assert!((s.phase - 1.5 * PI).abs() <= 1e-8);
    }

    #[test]
    fn epsilon_never_vanishes() {
        // |ε||ε̇| ≥ 1 by the Wronskian, so |με + νε̇| is bounded away
        // from zero on every sampled ray.
        let times: Vec<f64> = (0..=50).map(|i| i as f64 * 0.2).collect();
        let traj =
            solve_epsilon_at(&FrequencyProfile::jump(0.0, 2.0), &times).unwrap();
        for s in traj.samples() {
            assert!(s.eps.norm() * s.eps_dot.norm() >= 1.0 - 1e-9);
        }
    }
}
