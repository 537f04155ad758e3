//! Symmetric tridiagonal eigenvalues by Sturm bisection and eigenvectors by
//! shifted inverse iteration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FdError;

/// Seed of the inverse-iteration start vector.
pub const INVERSE_ITERATION_SEED: u64 = 0x5eed_1d0f;

/// Inverse iteration stops once successive normalized iterates differ by
/// no more than this in the max norm.
pub const INVERSE_ITERATION_TOL: f64 = 1e-10;
pub const INVERSE_ITERATION_MAX: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Self {
        assert!(
            off_diagonal.len() + 1 == diagonal.len() || diagonal.is_empty(),
            "off-diagonal must be one shorter than the diagonal"
        );
        Self {
            diagonal,
            off_diagonal,
        }
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.off_diagonal[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    pub fn inf_norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// `y = (T − shift)·x`
    pub fn shifted_product(&self, shift: f64, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = (self.diagonal[i] - shift) * x[i];
                if i > 0 {
                    y += self.off_diagonal[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off_diagonal[i] * x[i + 1];
                }
                y
            })
            .collect()
    }
}

/// Number of eigenvalues strictly below `shift`: the negative pivots of the
/// LDLᵀ factorization of `T − shift·I`.
pub fn sturm_count(t: &SymTridiagonal, shift: f64) -> usize {
    let n = t.len();
    if n == 0 {
        return 0;
    }
    let pivmin = f64::MIN_POSITIVE * t.off_diagonal.iter().map(|e| e * e).fold(1.0, f64::max);
    let mut count = 0;
    let mut q = t.diagonal[0] - shift;
    for i in 0..n {
        if i > 0 {
            let e = t.off_diagonal[i - 1];
            q = (t.diagonal[i] - shift) - e * e / q;
        }
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `count` smallest eigenvalues, ascending, each bisected to `tol`
/// (absolute) or to machine resolution, whichever is coarser.
pub fn lowest_eigenvalues(t: &SymTridiagonal, count: usize, tol: f64) -> Vec<f64> {
    let (lo, hi) = t.gershgorin();
    eigenvalues_in(t, count.min(t.len()), lo, hi, tol)
}

pub(crate) fn eigenvalues_in(
    t: &SymTridiagonal,
    count: usize,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Vec<f64> {
    let mut values: Vec<f64> = Vec::with_capacity(count);
    for j in 0..count {
        // Eigenvalue j lies above eigenvalue j − 1.
        let mut a = values.last().copied().unwrap_or(lo).max(lo);
        let mut b = hi;
        loop {
            let mid = 0.5 * (a + b);
            if b - a <= tol || b - a <= 4.0 * f64::EPSILON * mid.abs() || mid <= a || mid >= b {
                break;
            }
            if sturm_count(t, mid) <= j {
                a = mid;
            } else {
                b = mid;
            }
        }
        values.push(0.5 * (a + b));
    }
    values
}

/// LU factorization of `T − shift·I` with partial pivoting.
struct ShiftedLu {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper1: Vec<f64>,
    upper2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(t: &SymTridiagonal, shift: f64) -> Self {
        let n = t.len();
        let mut lower = t.off_diagonal.clone();
        let mut diag: Vec<f64> = t.diagonal.iter().map(|d| d - shift).collect();
        let mut upper1 = t.off_diagonal.clone();
        let mut upper2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let tiny = f64::EPSILON * t.inf_norm().max(f64::MIN_POSITIVE);

        for i in 0..n.saturating_sub(1) {
            if diag[i].abs() >= lower[i].abs() {
                if diag[i] == 0.0 {
                    diag[i] = tiny;
                }
                let fact = lower[i] / diag[i];
                lower[i] = fact;
                diag[i + 1] -= fact * upper1[i];
            } else {
                let fact = diag[i] / lower[i];
                diag[i] = lower[i];
                lower[i] = fact;
                let temp = upper1[i];
                upper1[i] = diag[i + 1];
                diag[i + 1] = temp - fact * diag[i + 1];
                if i + 2 < n {
                    upper2[i] = upper1[i + 1];
                    upper1[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        for d in &mut diag {
            if d.abs() < tiny {
                *d = if *d < 0.0 { -tiny } else { tiny };
            }
        }
        Self {
            lower,
            diag,
            upper1,
            upper2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.lower[i] * b[i];
            } else {
                b[i + 1] -= self.lower[i] * b[i];
            }
        }
        b[n - 1] /= self.diag[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.upper1[n - 2] * b[n - 1]) / self.diag[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.upper1[i] * b[i + 1] - self.upper2[i] * b[i + 2]) / self.diag[i];
        }
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

/// Unit-norm eigenvector for an eigenvalue approximation `energy`.
pub fn eigenvector(t: &SymTridiagonal, energy: f64) -> Result<Vec<f64>, FdError> {
    let n = t.len();
    let lu = ShiftedLu::new(t, energy);
    let mut rng = ChaCha8Rng::seed_from_u64(INVERSE_ITERATION_SEED);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    normalize(&mut x);

    for _ in 0..INVERSE_ITERATION_MAX {
        let mut y = x.clone();
        lu.solve(&mut y);
        if y.iter().any(|v| !v.is_finite()) {
            break;
        }
        normalize(&mut y);
        let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        if dot < 0.0 {
            y.iter_mut().for_each(|v| *v = -*v);
        }
        let change = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = y;
        if change <= INVERSE_ITERATION_TOL {
            return Ok(x);
        }
    }
    let r = t.shifted_product(energy, &x);
    Err(FdError::NoConvergence {
        residual: r.iter().map(|v| v * v).sum::<f64>().sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn two_by_two_closed_form() {
        let (a, b) = (3.0, 1.25);
        let t = SymTridiagonal::new(vec![a, a], vec![-b]);
        let ev = lowest_eigenvalues(&t, 2, 1e-14);
        assert_relative_eq!(ev[0], a - b, epsilon = 1e-13);
        assert_relative_eq!(ev[1], a + b, epsilon = 1e-13);
        assert_eq!(sturm_count(&t, 0.0), 0);
        assert_eq!(sturm_count(&t, a), 1);
        assert_eq!(sturm_count(&t, 10.0), 2);
    }

    #[test]
    fn free_chain_spectrum() {
        // d = 2, e = −1: λⱼ = 2 − 2cos(jπ/(n+1)).
        let n = 60;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]);
        let ev = lowest_eigenvalues(&t, n, 1e-14);
        for (j, &lambda) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((lambda - exact).abs() < 1e-12, "j={j}");
        }
    }

    #[test]
    fn inverse_iteration_recovers_sine_modes() {
        let n = 40;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]);
        let ev = lowest_eigenvalues(&t, 3, 1e-15);
        for (j, &lambda) in ev.iter().enumerate() {
            let v = eigenvector(&t, lambda).unwrap();
            let r = t.shifted_product(lambda, &v);
            let res = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(res < 1e-12, "j={j} residual={res}");
            let exact: Vec<f64> = (1..=n)
                .map(|i| (i as f64 * (j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).sin())
                .collect();
            let norm = exact.iter().map(|x| x * x).sum::<f64>().sqrt();
            let overlap: f64 = v.iter().zip(&exact).map(|(a, b)| a * b / norm).sum();
            assert_relative_eq!(overlap.abs(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let t = SymTridiagonal::new(vec![1.0, 4.0, -2.0, 3.0], vec![0.5, -1.0, 0.25]);
        let ev = lowest_eigenvalues(&t, 1, 1e-15)[0];
        assert_eq!(eigenvector(&t, ev).unwrap(), eigenvector(&t, ev).unwrap());
    }
}
