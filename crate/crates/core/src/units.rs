//! Physical constants and the reduction to dimensionless variables.
//!
//! Energies are in eV, lengths in nm and decay constants in nm⁻¹. Masses are
//! multiples of the electron mass. Everything else in the crate works with
//! `z = k·dx` and `ε = E / (ħ²/(2m·dx²))` and converts at the edges through
//! [`PhysicalContext`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// ħ²/(2mₑ) in eV·nm², from the CODATA 2018 values of ħ, mₑ and e.
pub const HBAR2_OVER_2ME_EV_NM2: f64 = 0.038_099_821_114_859_61;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnitsError {
    #[error("mass must be a positive finite multiple of the electron mass, got {0}")]
    InvalidMass(f64),
    #[error("energy {0} eV is not negative: not a bound state")]
    NotBound(f64),
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
}

/// Particle mass together with the derived energy·length² scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalContext {
    mass: f64,
    hbar2_over_2m: f64,
}

impl PhysicalContext {
    pub fn new(mass_me: f64) -> Result<Self, UnitsError> {
        if !(mass_me.is_finite() && mass_me > 0.0) {
            return Err(UnitsError::InvalidMass(mass_me));
        }
        Ok(Self {
            mass: mass_me,
            hbar2_over_2m: HBAR2_OVER_2ME_EV_NM2 / mass_me,
        })
    }

    pub fn electron() -> Self {
        Self {
            mass: 1.0,
            hbar2_over_2m: HBAR2_OVER_2ME_EV_NM2,
        }
    }

    /// Mass in electron masses.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// ħ²/(2m) in eV·nm².
    pub fn hbar2_over_2m(&self) -> f64 {
        self.hbar2_over_2m
    }

    /// Natural energy unit ħ²/(2m·dx²) of a region of width `dx`, in eV.
    pub fn energy_scale(&self, dx: f64) -> Result<f64, UnitsError> {
        positive("dx", dx)?;
        Ok(self.hbar2_over_2m / (dx * dx))
    }

    /// Tail decay constant k = √(−2mE)/ħ for a bound energy `energy` (eV).
    pub fn k_from_energy(&self, energy: f64) -> Result<f64, UnitsError> {
        if !(energy.is_finite() && energy < 0.0) {
            return Err(UnitsError::NotBound(energy));
        }
        Ok((-energy / self.hbar2_over_2m).sqrt())
    }

    /// Binding energy |E| = ħ²k²/(2m) in eV for a decay constant `k` (nm⁻¹).
    pub fn energy_from_k(&self, k: f64) -> Result<f64, UnitsError> {
        positive("k", k)?;
        Ok(self.hbar2_over_2m * k * k)
    }

    /// Binding energy |E| = ħ²z²/(2m·dx²) in eV for `z = k·dx`.
    pub fn energy_from_z(&self, z: f64, dx: f64) -> Result<f64, UnitsError> {
        positive("z", z)?;
        positive("dx", dx)?;
        Ok(self.hbar2_over_2m * z * z / (dx * dx))
    }

    pub fn to_dimensionless_energy(&self, energy: f64, dx: f64) -> Result<f64, UnitsError> {
        Ok(energy / self.energy_scale(dx)?)
    }

    pub fn from_dimensionless_energy(&self, epsilon: f64, dx: f64) -> Result<f64, UnitsError> {
        Ok(epsilon * self.energy_scale(dx)?)
    }
}

impl Default for PhysicalContext {
    fn default() -> Self {
        Self::electron()
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, UnitsError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(UnitsError::NonPositive { name, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn electron_scale_matches_codata() {
        let ctx = PhysicalContext::electron();
        assert_relative_eq!(ctx.hbar2_over_2m(), 0.0380998, max_relative = 1e-6);
        let heavy = PhysicalContext::new(4.0).unwrap();
        assert_relative_eq!(heavy.hbar2_over_2m() * 4.0, ctx.hbar2_over_2m());
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(PhysicalContext::new(0.0).is_err());
        assert!(PhysicalContext::new(-1.0).is_err());
        assert!(PhysicalContext::new(f64::NAN).is_err());
    }

    #[test]
    fn k_from_energy_examples() {
        let ctx = PhysicalContext::electron();
        assert_relative_eq!(
            ctx.k_from_energy(-0.0380998).unwrap(),
            1.0,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            ctx.k_from_energy(-4.0 * 0.0380998).unwrap(),
            2.0,
            max_relative = 1e-6
        );
        let heavy = PhysicalContext::new(4.0).unwrap();
        assert_relative_eq!(
            heavy.k_from_energy(-0.0380998).unwrap(),
            2.0,
            max_relative = 1e-6
        );
        assert_eq!(ctx.k_from_energy(0.0), Err(UnitsError::NotBound(0.0)));
        assert!(ctx.k_from_energy(0.1).is_err());
    }

    #[test]
    fn energy_from_z_examples() {
        let ctx = PhysicalContext::electron();
        assert_relative_eq!(
            ctx.energy_from_z(1.0, 1.0).unwrap(),
            0.0380998,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            ctx.energy_from_z(1.0, 5.0).unwrap() * 1e3,
            1.52399,
            max_relative = 1e-5
        );
        assert!(ctx.energy_from_z(0.0, 1.0).is_err());
        assert!(ctx.energy_from_z(1.0, -1.0).is_err());
    }

    #[test]
    fn dimensionless_energy() {
        let ctx = PhysicalContext::electron();
        assert_eq!(ctx.to_dimensionless_energy(0.0, 5.0).unwrap(), 0.0);
        assert_relative_eq!(
            ctx.to_dimensionless_energy(-1.52399e-3, 5.0).unwrap(),
            -1.0,
            max_relative = 1e-5
        );
        let z = 0.37;
        let e = -ctx.energy_from_z(z, 2.5).unwrap();
        assert_relative_eq!(
            ctx.to_dimensionless_energy(e, 2.5).unwrap(),
            -z * z,
            max_relative = 1e-14
        );
        assert!(ctx.to_dimensionless_energy(1.0, 0.0).is_err());
    }
}
