//! Radon transforms between phase-space fields and tomograms, filtered
//! back-projection, the optical↔symplectic bridge, characteristic functions
//! and quadrature moments.

pub mod bridge;
pub mod characteristic;
pub mod interp;
pub mod moments;
pub mod radon;

pub use bridge::{optical_to_symplectic, optical_to_symplectic_field, ThetaSpectrum};
pub use characteristic::{characteristic_fn, characteristic_fn_symplectic, CharacteristicFunction};
pub use moments::{moment_from_characteristic, quadrature_moment, MAX_MOMENT};
pub use radon::{
    inverse_radon, radon_optical, radon_symplectic, symmetry_residual, ReconstructionReport,
    SPECTRAL_PAD, SYMMETRY_TOL, TAPER_FRACTION,
};
