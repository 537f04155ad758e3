//! Closed-form wavefunctions on piecewise-constant potentials.
//!
//! Inside a segment with `ψ″ = λψ` (`λ = (V − E)/(ħ²/2m)`) the solution
//! starting from `(ψ₀, ψ₀′)` is `ψ₀·C(s) + ψ₀′·S(s)` with
//!
//! ```text
//! λ < 0:  C = cos(qs),   S = sin(qs)/q,   q = √−λ
//! λ > 0:  C = cosh(κs),  S = sinh(κs)/κ,  κ = √λ
//! λ = 0:  C = 1,         S = s
//! ```
//!
//! and `C′ = λS`, `S′ = C`. Integrals of ψ² over any sub-interval follow in
//! closed form, and so do the zeros, which gives an oscillation count.

use crate::potentials::Potential;
use crate::units::PhysicalContext;

use super::OracleError;

/// A real wavefunction on the whole line.
pub trait WaveFunction {
    fn value(&self, x: f64) -> f64;

    /// `∫ψ²` over the whole line.
    fn norm_sq(&self) -> f64;

    /// `∫ψ²` over `[a, b]`; composite Simpson unless overridden.
    fn integral_sq(&self, a: f64, b: f64) -> f64 {
        simpson(|x| self.value(x).powi(2), a, b, 1e-12)
    }
}

/// Composite Simpson rule, doubling the panel count until two successive
/// estimates agree to `rel_tol` (relative), up to 2²² panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let mut n = 16usize;
    let mut prev = simpson_fixed(&f, a, b, n);
    loop {
        n *= 2;
        let next = simpson_fixed(&f, a, b, n);
        if (next - prev).abs() <= rel_tol * next.abs() || n >= 1 << 22 {
            return next;
        }
        prev = next;
    }
}

fn simpson_fixed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// `(y − sin y)/y³`, or `(sinh y − y)/y³` when `hyperbolic`.
fn cubic_remainder(y: f64, hyperbolic: bool) -> f64 {
    let sign = if hyperbolic { 1.0 } else { -1.0 };
    if y.abs() < 0.1 {
        let y2 = y * y;
        // 1/3! ± y²/5! + y⁴/7! ± y⁶/9!
        1.0 / 6.0 + sign * y2 / 120.0 + y2 * y2 / 5040.0 + sign * y2 * y2 * y2 / 362_880.0
    } else if hyperbolic {
        (y.sinh() - y) / (y * y * y)
    } else {
        (y - y.sin()) / (y * y * y)
    }
}

/// Propagates `(ψ, ψ′)` across a distance `s` where `ψ″ = λψ`.
pub(crate) fn propagate(lambda: f64, s: f64, psi: f64, dpsi: f64) -> (f64, f64) {
    let (c, sn) = if lambda < 0.0 {
        let q = (-lambda).sqrt();
        ((q * s).cos(), (q * s).sin() / q)
    } else if lambda > 0.0 {
        let kappa = lambda.sqrt();
        ((kappa * s).cosh(), (kappa * s).sinh() / kappa)
    } else {
        (1.0, s)
    };
    (psi * c + dpsi * sn, psi * lambda * sn + dpsi * c)
}

/// `∫₀ˢ ψ²` for the solution starting from `(ψ, ψ′)`.
fn integral_from_start(lambda: f64, s: f64, psi: f64, dpsi: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    let (cc, cs, ss) = if lambda == 0.0 {
        (s, s * s / 2.0, s * s * s / 3.0)
    } else {
        let hyperbolic = lambda > 0.0;
        let theta = lambda.abs().sqrt() * s;
        let (sinc, sinc2) = if hyperbolic {
            (sinhc(theta), sinhc(2.0 * theta))
        } else {
            (sinc(theta), sinc(2.0 * theta))
        };
        (
            0.5 * s * (1.0 + sinc2),
            0.5 * s * s * sinc * sinc,
            2.0 * s * s * s * cubic_remainder(2.0 * theta, hyperbolic),
        )
    };
    psi * psi * cc + 2.0 * psi * dpsi * cs + dpsi * dpsi * ss
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

fn sinhc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sinh() / x
    }
}

/// Number of zeros of the solution on `(0, w]`.
pub(crate) fn zeros_in_segment(lambda: f64, w: f64, psi: f64, dpsi: f64) -> usize {
    use std::f64::consts::PI;
    if lambda < 0.0 {
        let q = (-lambda).sqrt();
        // ψ = R·sin(qs + φ)
        let phi = psi.atan2(dpsi / q);
        let hi = ((q * w + phi) / PI).floor();
        let lo = (phi / PI).floor();
        (hi - lo).max(0.0) as usize
    } else if lambda > 0.0 {
        let kappa = lambda.sqrt();
        if dpsi == 0.0 {
            return 0;
        }
        let t = -psi * kappa / dpsi;
        usize::from(t > 0.0 && t <= (kappa * w).tanh())
    } else {
        if dpsi == 0.0 {
            return 0;
        }
        let s = -psi / dpsi;
        usize::from(s > 0.0 && s <= w)
    }
}

/// Zeros of `ψ(s) = C·e^{−ks} + D·e^{ks}` for `s > 0`, given `(ψ, ψ′)` at `s = 0`.
pub(crate) fn zeros_in_right_tail(k: f64, psi: f64, dpsi: f64) -> usize {
    let c = k * psi - dpsi;
    let d = k * psi + dpsi;
    usize::from(d != 0.0 && -c / d > 1.0)
}

#[derive(Debug, Clone, PartialEq)]
struct Piece {
    x0: f64,
    width: f64,
    lambda: f64,
    psi: f64,
    dpsi: f64,
}

/// Exact bound-state wavefunction on a staircase potential: decaying tails
/// outside `[0, dx]` and trigonometric/hyperbolic pieces inside.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseWavefunction {
    k: f64,
    dx: f64,
    pieces: Vec<Piece>,
    psi_right: f64,
    dpsi_right: f64,
}

impl PiecewiseWavefunction {
    /// Integrates from the left tail `ψ(0) = psi0`, `ψ′(0) = k·psi0` at energy
    /// `energy` (eV) without renormalizing.
    pub fn integrate(
        potential: &Potential,
        ctx: &PhysicalContext,
        energy: f64,
        psi0: f64,
    ) -> Result<Self, OracleError> {
        let k = ctx.k_from_energy(energy)?;
        let c = ctx.hbar2_over_2m();
        let mut x0 = 0.0;
        let (mut psi, mut dpsi) = (psi0, k * psi0);
        let mut pieces = Vec::with_capacity(potential.segments().len());
        for seg in potential.segments() {
            let lambda = (seg.value - energy) / c;
            pieces.push(Piece {
                x0,
                width: seg.width,
                lambda,
                psi,
                dpsi,
            });
            (psi, dpsi) = propagate(lambda, seg.width, psi, dpsi);
            x0 += seg.width;
        }
        if !(psi.is_finite() && dpsi.is_finite()) {
            return Err(OracleError::Overflow(energy));
        }
        Ok(Self {
            k,
            dx: potential.dx(),
            pieces,
            psi_right: psi,
            dpsi_right: dpsi,
        })
    }

    /// Rescales so that the full-line norm is one.
    pub fn normalized(mut self) -> Self {
        let scale = self.norm_sq().sqrt().recip();
        for p in &mut self.pieces {
            p.psi *= scale;
            p.dpsi *= scale;
        }
        self.psi_right *= scale;
        self.dpsi_right *= scale;
        self
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn psi_at_origin(&self) -> f64 {
        self.pieces[0].psi
    }

    pub fn dpsi_at_origin(&self) -> f64 {
        self.pieces[0].dpsi
    }

    /// Interior `ψ(dx)` and `ψ′(dx)` reached by propagation.
    pub fn boundary_right(&self) -> (f64, f64) {
        (self.psi_right, self.dpsi_right)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.k * self.psi_at_origin() * (self.k * x).exp()
        } else if x >= self.dx {
            -self.k * self.psi_right * (-self.k * (x - self.dx)).exp()
        } else {
            let p = self.piece_at(x);
            propagate(p.lambda, x - p.x0, p.psi, p.dpsi).1
        }
    }

    /// Interior sign changes plus zeros of the tails.
    pub fn node_count(&self) -> usize {
        self.pieces
            .iter()
            .map(|p| zeros_in_segment(p.lambda, p.width, p.psi, p.dpsi))
            .sum()
    }

    fn piece_at(&self, x: f64) -> &Piece {
        self.pieces
            .iter()
            .rev()
            .find(|p| x >= p.x0)
            .unwrap_or(&self.pieces[0])
    }
}

impl WaveFunction for PiecewiseWavefunction {
    fn value(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.psi_at_origin() * (self.k * x).exp()
        } else if x >= self.dx {
            self.psi_right * (-self.k * (x - self.dx)).exp()
        } else {
            let p = self.piece_at(x);
            propagate(p.lambda, x - p.x0, p.psi, p.dpsi).0
        }
    }

    fn norm_sq(&self) -> f64 {
        let tails = (self.psi_at_origin().powi(2) + self.psi_right.powi(2)) / (2.0 * self.k);
        tails
            + self
                .pieces
                .iter()
                .map(|p| integral_from_start(p.lambda, p.width, p.psi, p.dpsi))
                .sum::<f64>()
    }

    fn integral_sq(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let two_k = 2.0 * self.k;
        let mut total = 0.0;
        if a < 0.0 {
            let hi = b.min(0.0);
            total +=
                self.psi_at_origin().powi(2) * ((two_k * hi).exp() - (two_k * a).exp()) / two_k;
        }
        if b > self.dx {
            let lo = a.max(self.dx) - self.dx;
            let hi = b - self.dx;
            total += self.psi_right.powi(2) * ((-two_k * lo).exp() - (-two_k * hi).exp()) / two_k;
        }
        for p in &self.pieces {
            let lo = (a - p.x0).clamp(0.0, p.width);
            let hi = (b - p.x0).clamp(0.0, p.width);
            if hi > lo {
                total += integral_from_start(p.lambda, hi, p.psi, p.dpsi)
                    - integral_from_start(p.lambda, lo, p.psi, p.dpsi);
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_integrals_match_simpson() {
        for &(lambda, s, psi, dpsi) in &[
            (-3.0, 1.7, 0.4, -1.1),
            (2.5, 0.9, -0.3, 0.8),
            (0.0, 1.3, 1.0, -0.5),
            (-1e-9, 2.0, 1.0, 1.0),
            (1e-6, 0.02, 0.7, 0.1),
        ] {
            let exact = integral_from_start(lambda, s, psi, dpsi);
            let numeric = simpson(|x| propagate(lambda, x, psi, dpsi).0.powi(2), 0.0, s, 1e-14);
            assert_relative_eq!(exact, numeric, max_relative = 1e-11);
        }
    }

    #[test]
    fn propagation_satisfies_ode() {
        let (lambda, psi, dpsi) = (-2.0, 0.3, 0.7);
        let h = 1e-4;
        for s in [0.1, 0.6, 1.4] {
            let f = |t: f64| propagate(lambda, t, psi, dpsi).0;
            let second = (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
            assert_relative_eq!(second, lambda * f(s), max_relative = 1e-6);
            let first = (f(s + h) - f(s - h)) / (2.0 * h);
            assert_relative_eq!(
                first,
                propagate(lambda, s, psi, dpsi).1,
                max_relative = 1e-7
            );
        }
    }

    #[test]
    fn zero_counting() {
        // sin(s) on (0, 10] has zeros at π, 2π, 3π.
        assert_eq!(zeros_in_segment(-1.0, 10.0, 0.0, 1.0), 3);
        // cos(s) on (0, 10]: π/2, 3π/2, 5π/2.
        assert_eq!(zeros_in_segment(-1.0, 10.0, 1.0, 0.0), 3);
        // cosh(s) − 2 sinh(s) vanishes at tanh s = 1/2.
        assert_eq!(zeros_in_segment(1.0, 1.0, 1.0, -2.0), 1);
        assert_eq!(zeros_in_segment(1.0, 0.5, 1.0, -2.0), 0);
        assert_eq!(zeros_in_segment(0.0, 2.0, 1.0, -1.0), 1);
        assert_eq!(zeros_in_right_tail(1.0, 1.0, -1.0), 0);
        assert_eq!(zeros_in_right_tail(1.0, 1.0, -1.5), 1);
    }
}
