use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Role of a grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisLabel {
    /// Homodyne quadrature.
    X,
    /// Local-oscillator phase (periodic).
    Theta,
    Mu,
    Nu,
    Q,
    P,
    Time,
    /// Fourier dual of X in optical characteristic functions.
    Eta,
    /// Fourier dual of X in symplectic characteristic functions.
    Z,
}

impl AxisLabel {
    pub fn code(self) -> u8 {
        match self {
            AxisLabel::X => b'X',
            AxisLabel::Theta => b't',
            AxisLabel::Mu => b'm',
            AxisLabel::Nu => b'n',
            AxisLabel::Q => b'q',
            AxisLabel::P => b'p',
            AxisLabel::Time => b'T',
            AxisLabel::Eta => b'e',
            AxisLabel::Z => b'z',
        }
    }

    pub fn from_code(c: u8) -> Result<Self> {
        Ok(match c {
            b'X' => AxisLabel::X,
            b't' => AxisLabel::Theta,
            b'm' => AxisLabel::Mu,
            b'n' => AxisLabel::Nu,
            b'q' => AxisLabel::Q,
            b'p' => AxisLabel::P,
            b'T' => AxisLabel::Time,
            b'e' => AxisLabel::Eta,
            b'z' => AxisLabel::Z,
            other => return Err(Error::Format(format!("unknown axis label byte {other:#x}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            AxisLabel::X => "X",
            AxisLabel::Theta => "theta",
            AxisLabel::Mu => "mu",
            AxisLabel::Nu => "nu",
            AxisLabel::Q => "q",
            AxisLabel::P => "p",
            AxisLabel::Time => "time",
            AxisLabel::Eta => "eta",
            AxisLabel::Z => "z",
        }
    }
}

/// A uniform sampling grid along one coordinate.
///
/// Periodic axes must span exactly one period (`step * count == 2π` for θ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub label: AxisLabel,
    /// Mode index for multimode fields; 0 for single-mode grids.
    pub mode: u8,
    pub start: f64,
    pub step: f64,
    pub count: usize,
    pub periodic: bool,
}

pub const PERIOD_TOL: f64 = 1e-9;

impl Axis {
    pub fn new(label: AxisLabel, start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() {
            return Err(Error::domain(format!(
                "axis {}: step must be positive and finite (got {step})",
                label.name()
            )));
        }
        if count < 4 {
            return Err(Error::domain(format!(
                "axis {}: need at least 4 samples (got {count})",
                label.name()
            )));
        }
        Ok(Axis { label, mode: 0, start, step, count, periodic: false })
    }

    /// Periodic axis covering one full period `[start, start + 2π)`.
    pub fn new_periodic(label: AxisLabel, start: f64, count: usize) -> Result<Self> {
        if count < 4 {
            return Err(Error::domain(format!(
                "axis {}: need at least 4 samples (got {count})",
                label.name()
            )));
        }
        let step = 2.0 * PI / count as f64;
        Ok(Axis { label, mode: 0, start, step, count, periodic: true })
    }

    pub fn with_mode(mut self, mode: u8) -> Self {
        self.mode = mode;
        self
    }

    /// Validate invariants after deserialization from a file.
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || self.count < 4 {
            return Err(Error::domain(format!(
                "axis {}: invalid step/count",
                self.label.name()
            )));
        }
        if self.periodic {
            let span = self.step * self.count as f64;
            if (span - 2.0 * PI).abs() > PERIOD_TOL {
                return Err(Error::domain(format!(
                    "periodic axis {} spans {span}, expected 2π",
                    self.label.name()
                )));
            }
        }
        Ok(())
    }

    pub fn is_power_of_two(&self) -> bool {
        self.count.is_power_of_two()
    }

    #[inline]
    pub fn at(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.at(i)).collect()
    }

    pub fn length(&self) -> f64 {
        self.step * self.count as f64
    }

    /// Spectral wavenumbers in FFT bin order (`k = 2π m / L`, m wrapped to
    /// `[-N/2, N/2)`).
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.count;
        let dk = 2.0 * PI / self.length();
        (0..n)
            .map(|m| {
                let m = if m <= (n - 1) / 2 { m as isize } else { m as isize - n as isize };
                m as f64 * dk
            })
            .collect()
    }
}

/// Default quadrature grid: X ∈ [−8, 8), 256 samples.
pub fn default_x_axis() -> Axis {
    Axis::new(AxisLabel::X, -8.0, 16.0 / 256.0, 256).expect("static axis")
}

/// Default phase grid: θ ∈ [0, 2π), 64 samples.
pub fn default_theta_axis() -> Axis {
    Axis::new_periodic(AxisLabel::Theta, 0.0, 64).expect("static axis")
}

/// Default phase-space grids: q, p ∈ [−8, 8), 256 samples each.
pub fn default_q_axis() -> Axis {
    Axis::new(AxisLabel::Q, -8.0, 16.0 / 256.0, 256).expect("static axis")
}

pub fn default_p_axis() -> Axis {
    Axis::new(AxisLabel::P, -8.0, 16.0 / 256.0, 256).expect("static axis")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_axes() {
        assert!(Axis::new(AxisLabel::X, 0.0, 0.1, 3).is_err());
        assert!(Axis::new(AxisLabel::X, 0.0, 0.0, 16).is_err());
        assert!(Axis::new(AxisLabel::X, 0.0, -1.0, 16).is_err());
    }

    #[test]
    fn periodic_axis_spans_one_period() {
        let th = Axis::new_periodic(AxisLabel::Theta, 0.0, 64).unwrap();
        assert!((th.step * 64.0 - 2.0 * PI).abs() < 1e-12);
        th.validate().unwrap();
    }

    #[test]
    fn wavenumbers_wrap() {
        let ax = Axis::new(AxisLabel::X, -8.0, 16.0 / 8.0, 8).unwrap();
        let k = ax.wavenumbers();
        let dk = 2.0 * PI / 16.0;
        assert!((k[0] - 0.0).abs() < 1e-15);
        assert!((k[1] - dk).abs() < 1e-15);
        assert!((k[4] - (-4.0 * dk)).abs() < 1e-12);
        assert!((k[7] - (-dk)).abs() < 1e-12);
    }
}
