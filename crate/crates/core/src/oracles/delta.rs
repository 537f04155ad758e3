use crate::units::PhysicalContext;

use super::{OracleError, WaveFunction};

/// Bound state of `U(x) = −α·δ(x)`: `ψ = √k·e^{−k|x|}`, `k = α/(2·ħ²/2m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaWellState {
    /// eV·nm.
    pub alpha: f64,
    /// eV.
    pub energy: f64,
    /// nm⁻¹.
    pub k: f64,
}

impl WaveFunction for DeltaWellState {
    fn value(&self, x: f64) -> f64 {
        self.k.sqrt() * (-self.k * x.abs()).exp()
    }

    fn norm_sq(&self) -> f64 {
        1.0
    }
}

pub fn delta_well(alpha: f64, ctx: &PhysicalContext) -> Result<DeltaWellState, OracleError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(OracleError::NonPositive {
            name: "alpha",
            value: alpha,
        });
    }
    let c = ctx.hbar2_over_2m();
    Ok(DeltaWellState {
        alpha,
        energy: -alpha * alpha / (4.0 * c),
        k: alpha / (2.0 * c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::interior_probability;
    use approx::assert_relative_eq;

    #[test]
    fn unit_decay_constant() {
        let ctx = PhysicalContext::electron();
        let s = delta_well(2.0 * ctx.hbar2_over_2m(), &ctx).unwrap();
        assert_relative_eq!(s.k, 1.0, max_relative = 1e-15);
        assert_relative_eq!(s.energy * 1e3, -38.099_821_114_859_61, max_relative = 1e-14);
        assert_relative_eq!(s.value(0.0).powi(2), s.k, max_relative = 1e-15);

        let doubled = delta_well(4.0 * ctx.hbar2_over_2m(), &ctx).unwrap();
        assert_relative_eq!(doubled.energy, 4.0 * s.energy, max_relative = 1e-15);
        assert!(delta_well(0.0, &ctx).is_err());
    }

    #[test]
    fn simpson_probability_near_origin() {
        let ctx = PhysicalContext::electron();
        let s = delta_well(2.0 * ctx.hbar2_over_2m(), &ctx).unwrap();
        for dx in [0.5, 0.05, 0.005] {
            let p = interior_probability(&s, 0.0, dx).unwrap();
            let exact = (1.0 - (-2.0 * s.k * dx).exp()) / 2.0;
            assert_relative_eq!(p, exact, max_relative = 1e-9);
        }
        let p = interior_probability(&s, 0.0, 1e-4).unwrap();
        assert_relative_eq!(p / (s.k * 1e-4), 1.0, max_relative = 2e-4);
        assert_relative_eq!(s.integral_sq(-40.0, 40.0), 1.0, max_relative = 1e-9);
    }
}
