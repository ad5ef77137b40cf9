use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use crate::fields::axis::Axis;

type PlanKey = (usize, bool);

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<PlanKey, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("fft plan cache poisoned");
    guard
        .entry((len, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(len)
            } else {
                planner.plan_fft_forward(len)
            }
        })
        .clone()
}

/// Unnormalized DFT (kernel e^{-2πi jk/N}) of a contiguous buffer.
pub fn dft(buf: &mut [C64]) {
    plan(buf.len(), false).process(buf);
}

/// Unnormalized inverse DFT (kernel e^{+2πi jk/N}).
pub fn idft_unnorm(buf: &mut [C64]) {
    plan(buf.len(), true).process(buf);
}

/// Normalized inverse DFT.
pub fn idft(buf: &mut [C64]) {
    let n = buf.len() as f64;
    idft_unnorm(buf);
    for v in buf.iter_mut() {
        *v /= n;
    }
}

/// Apply a spectral multiplier along one axis of a row-major array:
/// lane -> IDFT( mult[m] * DFT(lane) ).
pub fn spectral_multiplier(values: &mut [C64], shape: &[usize], axis: usize, mult: &[C64]) {
    let n = shape[axis];
    assert_eq!(mult.len(), n);
    let stride: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let mut lane = vec![C64::new(0.0, 0.0); n];
    let inv_n = 1.0 / n as f64;
    for o in 0..outer {
        for i in 0..stride {
            let base = o * n * stride + i;
            for j in 0..n {
                lane[j] = values[base + j * stride];
            }
            dft(&mut lane);
            for (l, m) in lane.iter_mut().zip(mult.iter()) {
                *l *= m;
            }
            idft_unnorm(&mut lane);
            for j in 0..n {
                values[base + j * stride] = lane[j] * inv_n;
            }
        }
    }
}

/// Continuous Fourier transform of one lane, in place.
///
/// With `sign = +1.0`: g_j -> ĝ_m = dx Σ_j g_j e^{-i k_m x_j} (FFT bin order).
/// With `sign = -1.0` the kernel is e^{+i k_m x_j}.
pub fn ft_forward_lane(buf: &mut [C64], axis: &Axis, sign: f64) {
    let n = axis.count;
    assert_eq!(buf.len(), n);
    if sign > 0.0 {
        dft(buf);
    } else {
        idft_unnorm(buf);
    }
    let dx = axis.step;
    for (m, k) in axis.wavenumbers().iter().enumerate() {
        let phase = C64::from_polar(dx, -sign * k * axis.start);
        buf[m] *= phase;
    }
}

/// Inverse of [`ft_forward_lane`] with the same `sign`:
/// ĝ_m -> g_j = (dk/2π) Σ_m ĝ_m e^{+i sign k_m x_j}.
pub fn ft_inverse_lane(buf: &mut [C64], axis: &Axis, sign: f64) {
    let n = axis.count;
    assert_eq!(buf.len(), n);
    for (m, k) in axis.wavenumbers().iter().enumerate() {
        buf[m] *= C64::from_polar(1.0, sign * k * axis.start);
    }
    if sign > 0.0 {
        idft_unnorm(buf);
    } else {
        dft(buf);
    }
    let scale = 1.0 / (n as f64 * axis.step);
    for v in buf.iter_mut() {
        *v *= scale;
    }
}
