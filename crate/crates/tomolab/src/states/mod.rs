//! Analytic state catalog: photon-added coherent states of the parametric
//! oscillator (Fock and coherent states as special cases), their closed-form
//! tomograms and Wigner functions, the classical ε(t) trajectory solver and
//! classical Gaussian phase-space distributions.

pub mod classical;
pub mod epsilon;
pub mod pacs;
pub mod profile;
pub mod special;
pub mod wigner;

use num_complex::Complex64 as C64;

pub use classical::{classical_gaussian, GaussianSpec};
pub use epsilon::{epsilon_at, solve_epsilon, solve_epsilon_at, EpsSample, EpsilonTrajectory};
pub use pacs::{
    pacs_optical_tomogram, pacs_symplectic_point, pacs_symplectic_tomogram, pacs_wavefunction,
    ModeConstants, PacsSpec,
};
pub use profile::FrequencyProfile;
pub use special::{factorial, hermite, laguerre, MAX_PHOTONS};
pub use wigner::wigner_of_wavefunction;

/// A state from the analytic catalog.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Pacs(PacsSpec),
    ClassicalGaussian(GaussianSpec),
}

impl StateSpec {
    pub fn vacuum() -> Self {
        StateSpec::Pacs(PacsSpec::vacuum())
    }

    pub fn fock(m: u32) -> Self {
        StateSpec::Pacs(PacsSpec::fock(m))
    }

    pub fn coherent(alpha: C64) -> crate::Result<Self> {
        Ok(StateSpec::Pacs(PacsSpec::coherent(alpha)?))
    }

    pub fn id(&self) -> String {
        match self {
            StateSpec::Pacs(p) => p.id(),
            StateSpec::ClassicalGaussian(_) => "classical-gaussian".to_string(),
        }
    }
}
