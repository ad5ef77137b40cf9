use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oscillator frequency profile Ω(t) of the parametric Hamiltonian
/// p²/2 + Ω²(t) q²/2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FrequencyProfile {
    Constant { omega0: f64 },
    /// Ω(t) equals `initial` until the first switch; each switch (t_s, Ω_s)
    /// takes effect for t ≥ t_s (right-continuous, so integration from a
    /// switch instant uses the post-switch frequency).
    PiecewiseConstant { initial: f64, switches: Vec<(f64, f64)> },
    /// Ω(t) = omega0 (1 + depth · sin(drive · t)).
    Sinusoidal { omega0: f64, depth: f64, drive: f64 },
}

impl Default for FrequencyProfile {
    fn default() -> Self {
        FrequencyProfile::Constant { omega0: 1.0 }
    }
}

impl FrequencyProfile {
    pub fn constant(omega0: f64) -> Self {
        FrequencyProfile::Constant { omega0 }
    }

    /// Frequency 1 up to `t_jump`, `omega_after` from there on.
    pub fn jump(t_jump: f64, omega_after: f64) -> Self {
        FrequencyProfile::PiecewiseConstant { initial: 1.0, switches: vec![(t_jump, omega_after)] }
    }

    pub fn omega_at(&self, t: f64) -> f64 {
        match self {
            FrequencyProfile::Constant { omega0 } => *omega0,
            FrequencyProfile::PiecewiseConstant { initial, switches } => {
                let mut om = *initial;
                for &(ts, o) in switches {
                    if t >= ts {
                        om = o;
                    } else {
                        break;
                    }
                }
                om
            }
            FrequencyProfile::Sinusoidal { omega0, depth, drive } => {
                omega0 * (1.0 + depth * (drive * t).sin())
            }
        }
    }

    /// Nominal frequency defining the t = 0 state (the pre-switch value for
    /// piecewise profiles).
    pub fn omega_initial(&self) -> f64 {
        match self {
            FrequencyProfile::Constant { omega0 } => *omega0,
            FrequencyProfile::PiecewiseConstant { initial, .. } => *initial,
            FrequencyProfile::Sinusoidal { omega0, .. } => *omega0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FrequencyProfile::Constant { omega0 } => {
                if !omega0.is_finite() || *omega0 < 0.0 {
                    return Err(Error::domain("constant profile needs Ω₀ ≥ 0"));
                }
            }
            FrequencyProfile::PiecewiseConstant { initial, switches } => {
                if !initial.is_finite() {
                    return Err(Error::domain("piecewise profile needs finite initial Ω"));
                }
                let mut prev = f64::NEG_INFINITY;
                for &(ts, o) in switches {
                    if !(ts > prev) || !o.is_finite() {
                        return Err(Error::domain("piecewise switches must be ordered and finite"));
                    }
                    prev = ts;
                }
            }
            FrequencyProfile::Sinusoidal { omega0, depth, drive } => {
                if ![*omega0, *depth, *drive].iter().all(|v| v.is_finite()) {
                    return Err(Error::domain("sinusoidal profile parameters must be finite"));
                }
            }
        }
        Ok(())
    }

    /// The analytic photon-added catalog requires Ω(0) = 1.
    pub fn validate_for_catalog(&self) -> Result<()> {
        self.validate()?;
        let om0 = self.omega_initial();
        if (om0 - 1.0).abs() > 1e-12 {
            return Err(Error::contract(format!(
                "catalog states require Ω(0) = 1, profile has Ω(0) = {om0}"
            )));
        }
        Ok(())
    }
}
