//! Hermite and Laguerre polynomials by three-term recurrence.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest photon number the analytic catalog supports; keeps the Hermite
/// recurrence well-conditioned in double precision.
pub const MAX_PHOTONS: u32 = 30;

/// Physicists' Hermite polynomial H_m at a complex argument.
pub fn hermite(m: u32, z: C64) -> Result<C64> {
    if m > MAX_PHOTONS {
        return Err(Error::domain(format!("Hermite order {m} exceeds catalog bound {MAX_PHOTONS}")));
    }
    let mut h_prev = C64::new(1.0, 0.0);
    if m == 0 {
        return Ok(h_prev);
    }
    let mut h = 2.0 * z;
    for k in 1..m {
        let next = 2.0 * z * h - 2.0 * k as f64 * h_prev;
        h_prev = h;
        h = next;
    }
    Ok(h)
}

/// Laguerre polynomial L_m = L_m^{(0)}.
pub fn laguerre(m: u32, x: f64) -> Result<f64> {
    if m > MAX_PHOTONS {
        return Err(Error::domain(format!(
            "Laguerre order {m} exceeds catalog bound {MAX_PHOTONS}"
        )));
    }
    let mut l_prev = 1.0;
    if m == 0 {
        return Ok(l_prev);
    }
    let mut l = 1.0 - x;
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * l - kf * l_prev) / (kf + 1.0);
        l_prev = l;
        l = next;
    }
    Ok(l)
}

pub fn factorial(m: u32) -> f64 {
    (1..=m as u64).map(|k| k as f64).product()
}
