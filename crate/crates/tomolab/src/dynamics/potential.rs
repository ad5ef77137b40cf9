use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::pacs::ModeConstants;

pub const MAX_DEGREE: u32 = 4;

/// One monomial c · Π_σ q_σ^{d_σ} of the potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coefficient: f64,
}

/// Polynomial potential U(q⃗) with per-mode dimensional constants. Total
/// degree is capped at 4; U is time-independent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialPotential {
    pub modes: usize,
    pub monomials: Vec<Monomial>,
    pub constants: Vec<ModeConstants>,
}

impl PolynomialPotential {
    pub fn new(modes: usize, monomials: Vec<Monomial>) -> Result<Self> {
        let p = PolynomialPotential {
            modes,
            monomials,
            constants: vec![ModeConstants::default(); modes],
        };
        p.validate()?;
        Ok(p)
    }

    /// Single-mode potential from (exponent, coefficient) pairs.
    pub fn single_mode(terms: &[(u32, f64)]) -> Result<Self> {
        Self::new(
            1,
            terms
                .iter()
                .map(|&(d, c)| Monomial { exponents: vec![d], coefficient: c })
                .collect(),
        )
    }

    /// U = 0.
    pub fn free(modes: usize) -> Self {
        PolynomialPotential {
            modes,
            monomials: Vec::new(),
            constants: vec![ModeConstants::default(); modes],
        }
    }

    /// U = q²/2, the unit harmonic oscillator.
    pub fn harmonic() -> Self {
        Self::single_mode(&[(2, 0.5)]).expect("static potential")
    }

    pub fn with_constants(mut self, constants: Vec<ModeConstants>) -> Result<Self> {
        if constants.len() != self.modes {
            return Err(Error::domain("one ModeConstants entry per mode required"));
        }
        for c in &constants {
            c.validate()?;
        }
        self.constants = constants;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.modes == 0 {
            return Err(Error::domain("potential needs at least one mode"));
        }
        for m in &self.monomials {
            if m.exponents.len() != self.modes {
                return Err(Error::domain(format!(
                    "monomial exponent vector has length {}, expected {}",
                    m.exponents.len(),
                    self.modes
                )));
            }
            let degree: u32 = m.exponents.iter().sum();
            if degree > MAX_DEGREE {
                return Err(Error::unsupported(format!(
                    "potential degree {degree} exceeds supported maximum {MAX_DEGREE}"
                )));
            }
            if !m.coefficient.is_finite() {
                return Err(Error::domain("monomial coefficient must be finite"));
            }
        }
        for c in &self.constants {
            c.validate()?;
        }
        Ok(())
    }

    pub fn max_degree(&self) -> u32 {
        self.monomials.iter().map(|m| m.exponents.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.iter().all(|m| m.coefficient == 0.0)
    }

    /// Mixed partial derivative ∂^{orders} U (orders per mode).
    pub fn derivative(&self, orders: &[u32]) -> PolynomialPotential {
        let mut monomials = Vec::new();
        'outer: for m in &self.monomials {
            let mut coeff = m.coefficient;
            let mut exps = m.exponents.clone();
            for (sigma, &k) in orders.iter().enumerate() {
                for _ in 0..k {
                    if exps[sigma] == 0 {
                        continue 'outer;
                    }
                    coeff *= exps[sigma] as f64;
                    exps[sigma] -= 1;
                }
            }
            if coeff != 0.0 {
                monomials.push(Monomial { exponents: exps, coefficient: coeff });
            }
        }
        PolynomialPotential { modes: self.modes, monomials, constants: self.constants.clone() }
    }

    pub fn eval(&self, q: &[f64]) -> f64 {
        self.monomials
            .iter()
            .map(|m| {
                m.coefficient
                    * m.exponents
                        .iter()
                        .zip(q.iter())
                        .map(|(&d, &qi)| qi.powi(d as i32))
                        .product::<f64>()
            })
            .sum()
    }
}

/// Which evolution equation a generator realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    OpticalQuantum,
    SymplecticQuantum,
    OpticalClassical,
    SymplecticClassical,
    CharacteristicOptical,
    CharacteristicSymplectic,
}

#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub potential: PolynomialPotential,
}
