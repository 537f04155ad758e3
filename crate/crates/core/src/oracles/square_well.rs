//! Finite square well of depth `V₀` on `[0, dx]`.
//!
//! With `u = q·dx/2`, `w = k·dx/2` and `u² + w² = R² = V₀·dx²/(4·ħ²/2m)`,
//! the even states satisfy `u·tan u = w` and the odd ones `−u·cot u = w`.
//! Both branches are the single phase condition
//!
//! ```text
//! u = j·π/2 + atan(w/u),   j = 0, 1, 2, …
//! ```
//!
//! whose left side minus right side is strictly increasing on
//! `(jπ/2, min(R, (j+1)π/2)]`, so plain bisection finds each root.

use std::f64::consts::FRAC_PI_2;

use crate::potentials;
use crate::units::PhysicalContext;

use super::{
    OracleError, OracleMethod, OracleState, Parity, PiecewiseWavefunction, THRESHOLD_ENERGY_EV,
};

/// `1 + ⌊√v₀/π⌋` with `v₀ = V₀·dx²/(ħ²/2m)`.
pub fn square_well_state_count(v0: f64) -> usize {
    1 + (v0.sqrt() / std::f64::consts::PI).floor() as usize
}

fn phase_root(j: usize, radius: f64) -> f64 {
    let base = j as f64 * FRAC_PI_2;
    let g = |u: f64| u - base - ((radius * radius - u * u).max(0.0).sqrt() / u).atan();
    let mut lo = base;
    let mut hi = radius.min(base + FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All bound states of the square well, sorted by energy.
pub fn square_well_states(
    depth: f64,
    dx: f64,
    ctx: &PhysicalContext,
) -> Result<Vec<OracleState>, OracleError> {
    for (name, value) in [("depth", depth), ("dx", dx)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(OracleError::NonPositive { name, value });
        }
    }
    let potential = potentials::square_well(depth, dx).expect("validated inputs");
    let c = ctx.hbar2_over_2m();
    let radius = 0.5 * (depth * dx * dx / c).sqrt();
    let half = 0.5 * dx;

    let mut states = Vec::new();
    let mut j = 0;
    while (j as f64) * FRAC_PI_2 < radius {
        let u = phase_root(j, radius);
        let w = ((radius - u) * (radius + u)).max(0.0).sqrt();
        let q = u / half;
        let k = w / half;
        if k <= 0.0 {
            break;
        }
        let energy = -c * k * k;
        let even = j % 2 == 0;
        let (inside, outside, edge) = if even {
            (
                half + (2.0 * u).sin() / (2.0 * q),
                u.cos().powi(2) / k,
                u.cos(),
            )
        } else {
            (
                half - (2.0 * u).sin() / (2.0 * q),
                u.sin().powi(2) / k,
                -u.sin(),
            )
        };
        let norm = inside + outside;
        let wavefunction =
            PiecewiseWavefunction::integrate(&potential, ctx, energy, edge / norm.sqrt())?;
        states.push(OracleState {
            energy,
            z: k * dx,
            p_inside: inside / norm,
            parity: if even { Parity::Even } else { Parity::Odd },
            method: OracleMethod::SquareWell,
            threshold: energy.abs() < THRESHOLD_ENERGY_EV,
            wavefunction,
        });
        j += 1;
    }
    Ok(states)
}
