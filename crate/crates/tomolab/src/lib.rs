//! tomolab: a numerical engine for the probability (tomographic)
//! representation of quantum states.
//!
//! The crate computes optical tomograms w(X,θ) and symplectic tomograms
//! M(X,μ,ν) of analytic quantum states, evolves tomograms in time under the
//! tomographic evolution equations, checks energy-level and stationarity
//! residuals, and cross-validates everything against Wigner-function (Moyal)
//! reference dynamics and a classical Liouville analog.

pub mod error;
pub mod fields;
pub mod states;
pub mod transforms;

pub use error::{Error, Result};
