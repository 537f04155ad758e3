//! Approximate bound-state method for ultra-short potentials.
//!
//! A potential supported on `[0, dx]` is matched to decaying exponential tails
//! on both sides, the interior probability is expanded to second order in the
//! width, and normalization then reduces to a quadratic in `z = k·dx`:
//!
//! ```text
//! 7·P·z² + (4·P − 2)·z + 2·P = 0,   P = ψ₁(0)²·dx
//! ```
//!
//! Real roots exist only while `1 − 4P − 10P² ≥ 0`, which caps `P` at
//! `(√14 − 2)/10` independently of the potential profile. The binding energy
//! bound follows from the root at that cap.
//!
//! Two energy-bound constants are exposed side by side and never merged:
//! [`printed_bound_constant`] `(√14−1)/(7−√14)` and
//! [`recomputed_bound_constant`] `2/7`, the latter being `z²` of the lower
//! root evaluated at the probability cap.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::units::{self, PhysicalContext, UnitsError};

/// Tolerance on `ψ₁(0)` when gluing sampled interior values to the tails.
pub const INTERIOR_MATCH_TOL: f64 = 1e-9;

/// Discriminants within `DISCRIMINANT_SLACK` of zero are clamped to zero so the
/// double root at the probability cap survives rounding.
const DISCRIMINANT_SLACK: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MethodError {
    #[error("node at origin: ansatz inapplicable (psi1(0) = 0)")]
    NodeAtOrigin,
    #[error("no decaying left tail: matched k = {0} is not positive")]
    NoDecayingTail(f64),
    #[error("P = {p} exceeds the maximum probability {p_max}: no real z")]
    Infeasible { p: f64, p_max: f64 },
    #[error("interior samples start at {got}, expected psi1(0) = {expected}")]
    InteriorMismatch { expected: f64, got: f64 },
    #[error("interior needs at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error(transparent)]
    Units(#[from] UnitsError),
}

/// `(√14 − 2)/10`, the largest `P` for which the quadratic has real roots.
pub fn max_probability() -> f64 {
    (14f64.sqrt() - 2.0) / 10.0
}

/// Energy-bound constant `(√14 − 1)/(7 − √14)` in the form it is usually quoted.
pub fn printed_bound_constant() -> f64 {
    let s = 14f64.sqrt();
    (s - 1.0) / (7.0 - s)
}

/// Energy-bound constant obtained by putting `P = p_max` into the lower root:
/// `z = √14/7`, so `z² = 2/7`.
pub fn recomputed_bound_constant() -> f64 {
    2.0 / 7.0
}

/// `k = ψ₁′(0)/ψ₁(0)` from continuity of ψ and ψ′ with the left tail.
pub fn decay_constant_from_match(psi0: f64, dpsi0: f64) -> Result<f64, MethodError> {
    if psi0 == 0.0 {
        return Err(MethodError::NodeAtOrigin);
    }
    let k = dpsi0 / psi0;
    if !(k > 0.0) {
        return Err(MethodError::NoDecayingTail(k));
    }
    Ok(k)
}

/// First-order prediction `ψ₁′(dx) ≈ −k·ψ₁(0)·(1 + k·dx)`.
pub fn right_boundary_derivative(psi0: f64, k: f64, dx: f64) -> f64 {
    -k * psi0 * (1.0 + k * dx)
}

/// Boundary data of the interior solution at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaperAnsatz {
    pub psi0: f64,
    pub dpsi0: f64,
    pub dx: f64,
    pub k: f64,
}

impl PaperAnsatz {
    pub fn new(psi0: f64, dpsi0: f64, dx: f64) -> Result<Self, MethodError> {
        units::positive("dx", dx)?;
        let k = decay_constant_from_match(psi0, dpsi0)?;
        Ok(Self { psi0, dpsi0, dx, k })
    }

    /// Tail amplitude `B = ψ₁(0)·e^{k·dx}·(1 + k·dx)` of `B·e^{−kx}` for `x > dx`.
    pub fn right_amplitude(&self) -> f64 {
        self.psi0 * (self.k * self.dx).exp() * (1.0 + self.k * self.dx)
    }

    pub fn right_boundary_consistency(&self) -> f64 {
        right_boundary_derivative(self.psi0, self.k, self.dx)
    }

    /// Dimensionless `P = ψ₁(0)²·dx`.
    pub fn probability_weight(&self) -> f64 {
        self.psi0 * self.psi0 * self.dx
    }

    pub fn z(&self) -> f64 {
        self.k * self.dx
    }
}

/// Piecewise wavefunction: exponential tails glued to uniformly sampled
/// interior values (linear interpolation between samples).
#[derive(Debug, Clone, PartialEq)]
pub struct AssembledWavefunction {
    ansatz: PaperAnsatz,
    interior: Vec<f64>,
}

impl AssembledWavefunction {
    pub fn eval(&self, x: f64) -> f64 {
        let PaperAnsatz { psi0, dx, k, .. } = self.ansatz;
        if x < 0.0 {
            psi0 * (k * x).exp()
        } else if x <= dx {
            let last = self.interior.len() - 1;
            let t = x / dx * last as f64;
            let i = (t.floor() as usize).min(last - 1);
            let frac = t - i as f64;
            self.interior[i] * (1.0 - frac) + self.interior[i + 1] * frac
        } else {
            psi0 * (1.0 + k * dx) * (-k * (x - dx)).exp()
        }
    }

    /// Right-tail value at `dx⁺` minus the sampled interior value at `dx`.
    /// Of order `(k·dx)²` for a genuine interior solution.
    pub fn continuity_mismatch_at_dx(&self) -> f64 {
        let PaperAnsatz { psi0, dx, k, .. } = self.ansatz;
        psi0 * (1.0 + k * dx) - self.interior[self.interior.len() - 1]
    }

    pub fn ansatz(&self) -> &PaperAnsatz {
        &self.ansatz
    }
}

/// Glue uniformly spaced interior samples of ψ₁ on `[0, dx]` to the tails.
pub fn assemble_wavefunction(
    ansatz: PaperAnsatz,
    interior: &[f64],
) -> Result<AssembledWavefunction, MethodError> {
    if interior.len() < 2 {
        return Err(MethodError::TooFewSamples(interior.len()));
    }
    let first = interior[0];
    if (first - ansatz.psi0).abs() > INTERIOR_MATCH_TOL * ansatz.psi0.abs().max(1.0) {
        return Err(MethodError::InteriorMismatch {
            expected: ansatz.psi0,
            got: first,
        });
    }
    Ok(AssembledWavefunction {
        ansatz,
        interior: interior.to_vec(),
    })
}

/// Interior probability by one integration by parts:
/// `dx·ψ₁(dx)² − dx²·ψ₁(dx)·ψ₁′(dx)`.
pub fn interior_probability_ibp(psi_dx: f64, dpsi_dx: f64, dx: f64) -> f64 {
    dx * psi_dx * psi_dx - dx * dx * psi_dx * dpsi_dx
}

/// Second-order interior probability `dx·ψ₁(0)²·(1 + 3k·dx)`.
pub fn interior_probability_approx(psi0_sq: f64, k: f64, dx: f64) -> f64 {
    dx * psi0_sq * (1.0 + 3.0 * k * dx)
}

/// `N(P, z) − 1` with `N = (P/(2z))·(2 + 2z + z²) + P·(1 + 3z)`.
pub fn normalization_residual(p: f64, z: f64) -> Result<f64, MethodError> {
    units::positive("z", z)?;
    Ok(p / (2.0 * z) * (2.0 + 2.0 * z + z * z) + p * (1.0 + 3.0 * z) - 1.0)
}

pub fn discriminant(p: f64) -> f64 {
    1.0 - 4.0 * p - 10.0 * p * p
}

/// Roots of the normalization quadratic for one value of `P`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaperSolution {
    pub p: f64,
    pub discriminant: f64,
    /// `(z_minus, z_plus)`; absent when the discriminant is negative.
    pub roots: Option<(f64, f64)>,
}

impl PaperSolution {
    pub fn is_feasible(&self) -> bool {
        self.roots.is_some()
    }

    pub fn z_minus(&self) -> Option<f64> {
        self.roots.map(|r| r.0)
    }

    pub fn z_plus(&self) -> Option<f64> {
        self.roots.map(|r| r.1)
    }
}

/// Both roots of `7Pz² + (4P − 2)z + 2P = 0`.
///
/// The larger root is taken from the cancellation-free sign of the quadratic
/// formula and the smaller from the product `z₋·z₊ = 2/7`, so `z₋ ≈ P` keeps
/// full precision as `P → 0`.
pub fn quadratic_roots(p: f64) -> PaperSolution {
    let mut disc = discriminant(p);
    if disc.abs() < DISCRIMINANT_SLACK {
        disc = 0.0;
    }
    let roots = if p > 0.0 && disc >= 0.0 {
        // 1 − 2P > 0 on the feasible range, so both terms add.
        let z_plus = (1.0 - 2.0 * p + disc.sqrt()) / (7.0 * p);
        let z_minus = recomputed_bound_constant() / z_plus;
        Some((z_minus, z_plus))
    } else {
        None
    };
    PaperSolution {
        p,
        discriminant: disc,
        roots,
    }
}

/// The lower root `z₋(P)`, the branch that vanishes with `P`.
pub fn physical_branch(p: f64) -> Result<f64, MethodError> {
    quadratic_roots(p).z_minus().ok_or(MethodError::Infeasible {
        p,
        p_max: max_probability(),
    })
}

/// Binding-energy bound using [`printed_bound_constant`], in eV.
pub fn energy_bound_paper(dx: f64, ctx: &PhysicalContext) -> Result<f64, MethodError> {
    Ok(ctx.energy_scale(dx)? * printed_bound_constant())
}

/// Binding-energy bound using [`recomputed_bound_constant`], in eV.
pub fn energy_bound_recomputed(dx: f64, ctx: &PhysicalContext) -> Result<f64, MethodError> {
    Ok(ctx.energy_scale(dx)? * recomputed_bound_constant())
}

/// Probability cap and both energy bounds for one confinement width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaperBounds {
    pub p_max: f64,
    pub z_star: f64,
    /// eV, printed constant.
    pub e_bound_paper: f64,
    /// eV, constant 2/7.
    pub e_bound_recomputed: f64,
    pub dx: f64,
}

impl PaperBounds {
    pub fn new(dx: f64, ctx: &PhysicalContext) -> Result<Self, MethodError> {
        let p_max = max_probability();
        Ok(Self {
            p_max,
            z_star: physical_branch(p_max)?,
            e_bound_paper: energy_bound_paper(dx, ctx)?,
            e_bound_recomputed: energy_bound_recomputed(dx, ctx)?,
            dx,
        })
    }

    pub fn ratio(&self) -> f64 {
        self.e_bound_paper / self.e_bound_recomputed
    }
}
