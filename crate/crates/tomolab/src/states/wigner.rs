//! Wigner function of a pure state: W(q,p) = ∫ ψ(q+u/2) ψ*(q−u/2) e^{−ipu} du,
//! normalized so that ∫ W dq dp / (2π) = 1.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::{Axis, AxisLabel};
use crate::fields::field::Field;

/// Boundary amplitude above which the decay warning is recorded.
pub const DECAY_WARN: f64 = 1e-6;

pub fn wigner_of_wavefunction(psi: &Field, p_axis: &Axis) -> Result<Field> {
    if psi.rank() != 1 {
        return Err(Error::domain("wavefunction must be a rank-1 field"));
    }
    let q_axis = psi.axes()[0].clone();
    let n = q_axis.count;
    let dq = q_axis.step;
    let vals = psi.values();

    let edge = vals[0].norm().max(vals[n - 1].norm());
    let decay_warning = edge > DECAY_WARN;

    // u grid: u_l = −L + 2 dq l, so q ± u/2 stays on the ψ grid.
    let du = 2.0 * dq;
    let u0 = -q_axis.length();
    let np = p_axis.count;
    let mut w = Field::zeros(vec![
        Axis { label: AxisLabel::Q, ..q_axis.clone() },
        p_axis.clone(),
    ])?;

    let mut g = vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        // g_l = ψ(q_i + u_l/2) ψ*(q_i − u_l/2); off-grid arguments are in the
        // decayed tail and contribute zero.
        for (l, gl) in g.iter_mut().enumerate() {
            let plus = i as isize + l as isize - (n / 2) as isize;
            let minus = i as isize - l as isize + (n / 2) as isize;
            *gl = if plus >= 0 && (plus as usize) < n && minus >= 0 && (minus as usize) < n {
                vals[plus as usize] * vals[minus as usize].conj()
            } else {
                C64::new(0.0, 0.0)
            };
        }
        for j in 0..np {
            let p = p_axis.at(j);
            // Σ_l g_l e^{−ip u_l} du via phase recurrence
            let step = C64::from_polar(1.0, -p * du);
            let mut ph = C64::from_polar(1.0, -p * u0);
            let mut acc = C64::new(0.0, 0.0);
            for &gl in &g {
                acc += gl * ph;
                ph *= step;
            }
            w.values_mut()[i * np + j] = acc * du;
        }
    }
    w.metadata = psi.metadata.clone();
    if decay_warning {
        w.metadata.insert("decay_warning".to_string(), format!("{edge:.3e}"));
    }
    Ok(w)
}
