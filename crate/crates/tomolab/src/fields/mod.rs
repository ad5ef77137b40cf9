//! Uniform-grid sampled fields over tomographic and phase-space domains,
//! spectral/finite-difference operators and quadrature.

pub mod axis;
pub mod fd;
pub mod fft;
pub mod field;
pub mod io;
pub mod ops;

pub use axis::{
    default_p_axis, default_q_axis, default_theta_axis, default_x_axis, Axis, AxisLabel,
};
pub use field::Field;
pub use ops::{
    fd_derivative, integrate_axis, integrate_x, mean_x, pointwise_mul, spectral_dtheta,
    spectral_dtheta_mode, spectral_dx, spectral_dx_mode, spectral_inv_dx, spectral_inv_dx_mode,
};
