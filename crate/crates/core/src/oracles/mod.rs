//! Exact reference solvers: the delta well, the finite square well and a
//! transfer-matrix bound-state finder for any staircase potential.

mod delta;
mod square_well;
mod transfer_matrix;
pub mod wavefunction;

pub use delta::{delta_well, DeltaWellState};
pub use square_well::{square_well_state_count, square_well_states};
pub use transfer_matrix::{
    matching_function, states_below, transfer_matrix_states, ScanConfig, TmSpectrum, TmWarning,
};
pub use wavefunction::{simpson, PiecewiseWavefunction, WaveFunction};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::units::UnitsError;

/// States with `|E|` below this (eV) are marked as sitting at threshold.
pub const THRESHOLD_ENERGY_EV: f64 = 1e-12;

/// Largest accepted deviation of `∫ψ²` from one.
pub const NORMALIZATION_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("no bound state found")]
    NoBoundState,
    #[error("wavefunction is not normalized: norm = {0}")]
    Unnormalized(f64),
    #[error("wavefunction overflowed while integrating at E = {0} eV")]
    Overflow(f64),
    #[error(transparent)]
    Units(#[from] UnitsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    SquareWell,
    TransferMatrix,
}

/// One exact bound state of a potential supported on `[0, dx]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleState {
    /// eV, negative.
    pub energy: f64,
    /// `k·dx`.
    pub z: f64,
    /// `∫₀^dx ψ²`.
    pub p_inside: f64,
    pub parity: Parity,
    pub method: OracleMethod,
    pub threshold: bool,
    pub wavefunction: PiecewiseWavefunction,
}

impl OracleState {
    /// `ψ(0)²·dx`.
    pub fn probability_weight(&self) -> f64 {
        self.wavefunction.psi_at_origin().powi(2) * self.wavefunction.dx()
    }
}

/// `∫ψ²` over `[a, b]` for a normalized wavefunction.
pub fn interior_probability<W: WaveFunction + ?Sized>(
    wavefunction: &W,
    a: f64,
    b: f64,
) -> Result<f64, OracleError> {
    let norm = wavefunction.norm_sq();
    if !((norm - 1.0).abs() <= NORMALIZATION_TOL) {
        return Err(OracleError::Unnormalized(norm));
    }
    Ok(wavefunction.integral_sq(a, b))
}
