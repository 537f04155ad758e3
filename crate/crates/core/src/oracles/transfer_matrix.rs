//! Bound states of an arbitrary staircase potential by shooting `(ψ, ψ′)`
//! across the segments with 2×2 transfer matrices.
//!
//! Starting from the decaying left tail `ψ = e^{kx}` the state at `x = dx` is
//! split into `C·e^{−k(x−dx)} + D·e^{k(x−dx)}`. Bound states are the zeros of
//! the growing coefficient `D ∝ kψ + ψ′`. The oscillation count of the same
//! solution equals the number of bound states below the trial energy, which
//! tells how many roots every scan bracket must contain.

use serde::{Deserialize, Serialize};

use crate::potentials::Potential;
use crate::units::PhysicalContext;

use super::wavefunction::{zeros_in_right_tail, zeros_in_segment};
use super::{
    OracleError, OracleMethod, OracleState, Parity, PiecewiseWavefunction, WaveFunction,
    THRESHOLD_ENERGY_EV,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Number of log-spaced `|E|` values between the shallow limit and the
    /// deepest segment.
    pub points: usize,
    /// Shallowest scanned `z = k·dx`.
    pub z_min: f64,
    /// Bisection stops once `|ΔE| ≤ rel_tol·|E|`.
    pub rel_tol: f64,
    /// Maximum number of bracket halvings when a bracket holds several roots.
    pub max_refinements: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            points: 4096,
            z_min: 1e-3,
            rel_tol: 1e-13,
            max_refinements: 60,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TmWarning {
    /// Several states remain in `[lo, hi]` after the refinement budget.
    UnresolvedBracket { lo: f64, hi: f64, states: usize },
    /// The oscillation count changed but the matching function did not.
    NoSignChange { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TmSpectrum {
    pub states: Vec<OracleState>,
    pub warnings: Vec<TmWarning>,
}

/// `(ψ, ψ′)` at `dx` up to a positive factor, plus interior zero count.
fn shoot(potential: &Potential, c: f64, energy: f64, k: f64) -> (f64, f64, usize) {
    let (mut psi, mut dpsi) = (1.0, k);
    let mut zeros = 0;
    for seg in potential.segments() {
        let lambda = (seg.value - energy) / c;
        zeros += zeros_in_segment(lambda, seg.width, psi, dpsi);
        (psi, dpsi) = propagate_scaled(lambda, seg.width, psi, dpsi);
        let scale = psi.abs().max(dpsi.abs() / k);
        psi /= scale;
        dpsi /= scale;
    }
    (psi, dpsi, zeros)
}

/// Transfer across one segment with the dominant `e^{κw}` divided out.
fn propagate_scaled(lambda: f64, w: f64, psi: f64, dpsi: f64) -> (f64, f64) {
    if lambda > 0.0 {
        let kappa = lambda.sqrt();
        let decay = (-2.0 * kappa * w).exp();
        let ch = 0.5 * (1.0 + decay);
        let sh = 0.5 * (1.0 - decay);
        (psi * ch + dpsi * sh / kappa, psi * kappa * sh + dpsi * ch)
    } else {
        super::wavefunction::propagate(lambda, w, psi, dpsi)
    }
}

/// Sign-carrying growing-tail coefficient `(kψ + ψ′)/(k|ψ| + |ψ′|)` at `dx`.
pub fn matching_function(
    potential: &Potential,
    ctx: &PhysicalContext,
    energy: f64,
) -> Result<f64, OracleError> {
    let k = ctx.k_from_energy(energy)?;
    let (psi, dpsi, _) = shoot(potential, ctx.hbar2_over_2m(), energy, k);
    Ok((k * psi + dpsi) / (k * psi.abs() + dpsi.abs()))
}

/// Number of bound states with energy below `energy` (< 0).
pub fn states_below(
    potential: &Potential,
    ctx: &PhysicalContext,
    energy: f64,
) -> Result<usize, OracleError> {
    let k = ctx.k_from_energy(energy)?;
    let (psi, dpsi, zeros) = shoot(potential, ctx.hbar2_over_2m(), energy, k);
    Ok(zeros + zeros_in_right_tail(k, psi, dpsi))
}

struct Finder<'a> {
    potential: &'a Potential,
    ctx: &'a PhysicalContext,
    config: &'a ScanConfig,
    roots: Vec<f64>,
    warnings: Vec<TmWarning>,
}

impl Finder<'_> {
    fn count(&self, energy: f64) -> usize {
        states_below(self.potential, self.ctx, energy).expect("negative trial energy")
    }

    fn matching(&self, energy: f64) -> f64 {
        matching_function(self.potential, self.ctx, energy).expect("negative trial energy")
    }

    fn resolve(&mut self, lo: f64, n_lo: usize, hi: f64, n_hi: usize, depth: usize) {
        match n_hi.saturating_sub(n_lo) {
            0 => {}
            1 => self.bisect(lo, hi),
            states if depth >= self.config.max_refinements => {
                self.warnings
                    .push(TmWarning::UnresolvedBracket { lo, hi, states });
            }
            _ => {
                // Both ends are negative; split geometrically.
                let mid = -(lo * hi).sqrt();
                let n_mid = self.count(mid);
                self.resolve(lo, n_lo, mid, n_mid, depth + 1);
                self.resolve(mid, n_mid, hi, n_hi, depth + 1);
            }
        }
    }

    fn bisect(&mut self, mut lo: f64, mut hi: f64) {
        let f_lo = self.matching(lo);
        let f_hi = self.matching(hi);
        let by_count = f_lo.signum() == f_hi.signum();
        if by_count {
            self.warnings.push(TmWarning::NoSignChange { lo, hi });
        }
        let n_lo = self.count(lo);
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= self.config.rel_tol * mid.abs() || mid <= lo || mid >= hi {
                break;
            }
            let below = if by_count {
                self.count(mid) == n_lo
            } else {
                self.matching(mid).signum() == f_lo.signum()
            };
            if below {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.roots.push(0.5 * (lo + hi));
    }
}

/// All bound states of `potential`, sorted by energy.
///
/// Returns [`OracleError::NoBoundState`] when nothing binds; resolution
/// problems are reported as warnings next to the states that were found.
pub fn transfer_matrix_states(
    potential: &Potential,
    ctx: &PhysicalContext,
    config: &ScanConfig,
) -> Result<TmSpectrum, OracleError> {
    let depth = potential.max_depth();
    if depth <= 0.0 {
        return Err(OracleError::NoBoundState);
    }
    let scale = ctx.energy_scale(potential.dx())?;
    let shallow = (scale * config.z_min * config.z_min).min(0.5 * depth);
    let points = config.points.max(2);

    // Ascending energies from the potential floor up to the shallow limit,
    // then one extra bracket reaching towards threshold.
    let ratio = (shallow / depth).ln();
    let mut grid: Vec<f64> = (0..points)
        .map(|i| -depth * (ratio * i as f64 / (points - 1) as f64).exp())
        .collect();
    grid.push(-scale * 1e-20);

    let mut finder = Finder {
        potential,
        ctx,
        config,
        roots: Vec::new(),
        warnings: Vec::new(),
    };
    let counts: Vec<usize> = grid.iter().map(|&e| finder.count(e)).collect();
    for i in 0..grid.len() - 1 {
        finder.resolve(grid[i], counts[i], grid[i + 1], counts[i + 1], 0);
    }
    if finder.roots.is_empty() {
        return Err(OracleError::NoBoundState);
    }

    let symmetric = potential.is_symmetric();
    let dx = potential.dx();
    let mut states = Vec::with_capacity(finder.roots.len());
    for energy in finder.roots {
        let wavefunction =
            PiecewiseWavefunction::integrate(potential, ctx, energy, 1.0)?.normalized();
        let parity = if !symmetric {
            Parity::None
        } else if wavefunction.boundary_right().0 * wavefunction.psi_at_origin() > 0.0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        states.push(OracleState {
            energy,
            z: wavefunction.k() * dx,
            p_inside: wavefunction.integral_sq(0.0, dx),
            parity,
            method: OracleMethod::TransferMatrix,
            threshold: energy.abs() < THRESHOLD_ENERGY_EV,
            wavefunction,
        });
    }
    Ok(TmSpectrum {
        states,
        warnings: finder.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::square_well_states;
    use crate::potentials::{square_well, Segment};
    use approx::assert_relative_eq;

    #[test]
    fn single_segment_matches_square_well() {
        let ctx = PhysicalContext::electron();
        for (depth, dx) in [(1.524e-3, 5.0), (0.3, 5.0), (1.0, 5.0), (0.05, 0.7)] {
            let tm = transfer_matrix_states(
                &square_well(depth, dx).unwrap(),
                &ctx,
                &ScanConfig::default(),
            )
            .unwrap();
            let sw = square_well_states(depth, dx, &ctx).unwrap();
            assert!(tm.warnings.is_empty());
            assert_eq!(tm.states.len(), sw.len(), "depth={depth}");
            for (a, b) in tm.states.iter().zip(&sw) {
                assert_relative_eq!(a.energy, b.energy, max_relative = 1e-10);
                assert!((a.p_inside - b.p_inside).abs() < 1e-9);
                assert_eq!(a.parity, b.parity);
            }
        }
    }

    #[test]
    fn split_segment_is_the_same_well() {
        let ctx = PhysicalContext::electron();
        let whole = square_well(0.2, 4.0).unwrap();
        let split = Potential::new(vec![
            Segment {
                width: 2.0,
                value: -0.2,
            },
            Segment {
                width: 2.0,
                value: -0.2,
            },
        ])
        .unwrap();
        let a = transfer_matrix_states(&whole, &ctx, &ScanConfig::default()).unwrap();
        let b = transfer_matrix_states(&split, &ctx, &ScanConfig::default()).unwrap();
        assert_eq!(a.states.len(), b.states.len());
        for (x, y) in a.states.iter().zip(&b.states) {
            assert_relative_eq!(x.energy, y.energy, max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_potential_has_no_states() {
        let ctx = PhysicalContext::electron();
        let flat = Potential::new(vec![Segment {
            width: 5.0,
            value: 0.0,
        }])
        .unwrap();
        assert_eq!(
            transfer_matrix_states(&flat, &ctx, &ScanConfig::default()),
            Err(OracleError::NoBoundState)
        );
    }

    #[test]
    fn deep_wide_barrier_does_not_overflow_the_scan() {
        // Two wells separated by a tall barrier: κ·w ≈ 1000 inside the barrier.
        let ctx = PhysicalContext::electron();
        let p = Potential::new(vec![
            Segment {
                width: 2.0,
                value: -0.5,
            },
            Segment {
                width: 40.0,
                value: 24.0,
            },
            Segment {
                width: 2.0,
                value: -0.5,
            },
        ])
        .unwrap();
        let n = states_below(&p, &ctx, -1e-3).unwrap();
        assert!(matching_function(&p, &ctx, -0.3).unwrap().is_finite());
        assert!(n >= 2);
    }

    #[test]
    fn log_derivative_matching_at_both_edges() {
        let ctx = PhysicalContext::electron();
        let p = Potential::new(vec![
            Segment {
                width: 1.0,
                value: -0.4,
            },
            Segment {
                width: 0.5,
                value: 0.1,
            },
            Segment {
                width: 2.5,
                value: -0.15,
            },
        ])
        .unwrap();
        let spectrum = transfer_matrix_states(&p, &ctx, &ScanConfig::default()).unwrap();
        assert!(!spectrum.states.is_empty());
        for (n, s) in spectrum.states.iter().enumerate() {
            let wf = &s.wavefunction;
            let k = wf.k();
            assert_relative_eq!(
                wf.dpsi_at_origin() / wf.psi_at_origin(),
                k,
                max_relative = 1e-8
            );
            let (psi, dpsi) = wf.boundary_right();
            assert_relative_eq!(dpsi / psi, -k, max_relative = 1e-8);
            assert_eq!(wf.node_count(), n);
            assert_eq!(s.parity, Parity::None);
        }
    }
}
