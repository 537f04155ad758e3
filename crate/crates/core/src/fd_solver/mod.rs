//! Finite-difference bound states on a truncated uniform grid.
//!
//! `−(ħ²/2m)ψ″ + Uψ` is discretized with the three-point stencil and
//! Dirichlet ends. Every segment boundary of the potential has to fall on a
//! grid node; such nodes carry the mean of the two adjacent values, which
//! keeps the scheme second order across the jumps.

mod tridiagonal;

pub use tridiagonal::{
    eigenvector, lowest_eigenvalues, sturm_count, SymTridiagonal, INVERSE_ITERATION_SEED,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::potentials::Potential;
use crate::units::{PhysicalContext, UnitsError};

/// Tail samples below this fraction of the peak are left out of the decay
/// fit.
pub const TAIL_FLOOR: f64 = 1e-12;

/// Allowed offset of a segment boundary from its grid node, in units of `h`.
pub const ALIGNMENT_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FdError {
    #[error("grid is misaligned: x = {x} nm is not on a grid node")]
    Misaligned { x: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("inverse iteration did not converge (residual norm {residual:e})")]
    NoConvergence { residual: f64 },
    #[error(
        "no grid with at most {max_cells} cells across the well aligns with every segment boundary"
    )]
    NoAlignedGrid { max_cells: usize },
    #[error(transparent)]
    Units(#[from] UnitsError),
}

/// Uniform grid `x_i = x_min + i·h`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub h: f64,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self, FdError> {
        if n < 3 || !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(FdError::InvalidGrid(format!(
                "need n >= 3 and x_min < x_max (got n = {n}, [{x_min}, {x_max}])"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n,
            h: (x_max - x_min) / (n - 1) as f64,
        })
    }

    /// `cells` intervals across `[0, dx]` and at least `padding` nm on
    /// each side, with nodes on `0` and `dx`.
    pub fn aligned(dx: f64, cells: usize, padding: f64) -> Result<Self, FdError> {
        if cells == 0 || !(dx > 0.0) || !(padding > 0.0) {
            return Err(FdError::InvalidGrid(format!(
                "need cells > 0, dx > 0 and padding > 0 (got {cells}, {dx}, {padding})"
            )));
        }
        let h = dx / cells as f64;
        let pad_cells = (padding / h).ceil() as usize;
        Ok(Self {
            x_min: -(pad_cells as f64) * h,
            x_max: dx + pad_cells as f64 * h,
            n: 2 * pad_cells + cells + 1,
            h,
        })
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.h
    }

    /// Node index within [`ALIGNMENT_TOL`]·h of `x`.
    pub fn node_at(&self, x: f64) -> Option<usize> {
        let t = (x - self.x_min) / self.h;
        let i = t.round();
        ((t - i).abs() <= ALIGNMENT_TOL && i >= 0.0 && (i as usize) < self.n).then_some(i as usize)
    }
}

/// Grid policy for [`solve_bound_states`]. Unset fields follow the default
/// policy: padding `max(10/k, 10·dx)` and `h ≤ min(dx/200, 0.05/k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// Cells across `[0, dx]`.
    pub cells_per_dx: Option<usize>,
    /// Padding on each side, nm.
    pub padding: Option<f64>,
    /// Padding in decay lengths `1/k` when chosen automatically.
    pub pad_decay_lengths: f64,
    /// Absolute eigenvalue tolerance (eV); machine resolution when `None`.
    pub tol: Option<f64>,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            cells_per_dx: None,
            padding: None,
            pad_decay_lengths: 10.0,
            tol: None,
        }
    }
}

/// One finite-difference eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub index: usize,
    /// eV.
    pub energy: f64,
    /// ψ at every grid node (zero at both ends), trapezoid-normalized.
    pub samples: Vec<f64>,
    pub p_inside: f64,
    /// Decay constant fitted to the right tail, nm⁻¹.
    pub k_fit: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FdSpectrum {
    pub grid: Grid,
    pub states: Vec<BoundState>,
}

fn node_potential(p: &Potential, g: &Grid) -> Result<Vec<f64>, FdError> {
    let edges = p.boundaries();
    let mut nodes = Vec::with_capacity(edges.len());
    for &x in &edges {
        nodes.push(g.node_at(x).ok_or(FdError::Misaligned { x })?);
    }
    if nodes[0] == 0 || nodes[nodes.len() - 1] + 1 >= g.n {
        return Err(FdError::InvalidGrid(
            "the potential must lie strictly inside the grid".into(),
        ));
    }
    let values: Vec<f64> = p.segments().iter().map(|s| s.value).collect();
    let mut u = vec![0.0; g.n];
    for (j, &v) in values.iter().enumerate() {
        for slot in &mut u[nodes[j] + 1..nodes[j + 1]] {
            *slot = v;
        }
    }
    for (j, &node) in nodes.iter().enumerate() {
        let left = if j == 0 { 0.0 } else { values[j - 1] };
        let right = values.get(j).copied().unwrap_or(0.0);
        u[node] = 0.5 * (left + right);
    }
    Ok(u)
}

/// Three-point Hamiltonian on the interior nodes (the two Dirichlet end
/// nodes are dropped).
pub fn build_hamiltonian(
    p: &Potential,
    g: &Grid,
    ctx: &PhysicalContext,
) -> Result<SymTridiagonal, FdError> {
    let u = node_potential(p, g)?;
    let c = ctx.hbar2_over_2m() / (g.h * g.h);
    let interior = g.n - 2;
    Ok(SymTridiagonal::new(
        u[1..g.n - 1].iter().map(|v| 2.0 * c + v).collect(),
        vec![-c; interior - 1],
    ))
}

fn trapezoid_sq(samples: &[f64], h: f64) -> f64 {
    let n = samples.len();
    let sum: f64 = samples.iter().map(|v| v * v).sum();
    h * (sum - 0.5 * (samples[0].powi(2) + samples[n - 1].powi(2)))
}

/// `−slope` of the least-squares line through `(x, ln|ψ|)`.
fn fit_decay(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, psi) in points {
        if psi == 0.0 {
            continue;
        }
        let y = psi.abs().ln();
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    -(n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Cells across the well: the smallest count ≥ `min_cells` that puts every
/// segment boundary on a node.
fn aligned_cells(p: &Potential, min_cells: usize) -> Result<usize, FdError> {
    let fractions: Vec<f64> = p.boundaries().iter().map(|b| b / p.dx()).collect();
    let max_cells = min_cells * 64;
    (min_cells..=max_cells)
        .find(|&m| {
            fractions.iter().all(|f| {
                let t = f * m as f64;
                (t - t.round()).abs() <= ALIGNMENT_TOL
            })
        })
        .ok_or(FdError::NoAlignedGrid { max_cells })
}

/// All negative-energy eigenpairs on a fixed grid.
pub fn solve_on_grid(
    p: &Potential,
    g: &Grid,
    ctx: &PhysicalContext,
    tol: Option<f64>,
) -> Result<Vec<BoundState>, FdError> {
    let t = build_hamiltonian(p, g, ctx)?;
    let count = sturm_count(&t, 0.0);
    let tol = tol.unwrap_or(4.0 * f64::EPSILON * t.inf_norm());
    let (lo, _) = t.gershgorin();
    let energies = tridiagonal::eigenvalues_in(&t, count, lo, 0.0, tol);

    let i0 = g.node_at(0.0).ok_or(FdError::Misaligned { x: 0.0 })?;
    let i1 = g.node_at(p.dx()).ok_or(FdError::Misaligned { x: p.dx() })?;

    energies
        .into_iter()
        .enumerate()
        .map(|(index, energy)| {
            let v = eigenvector(&t, energy)?;
            let mut samples = Vec::with_capacity(g.n);
            samples.push(0.0);
            samples.extend_from_slice(&v);
            samples.push(0.0);
            let norm = trapezoid_sq(&samples, g.h).sqrt();
            samples.iter_mut().for_each(|s| *s /= norm);
            let p_inside = trapezoid_sq(&samples[i0..=i1], g.h);
            // The tail ends where ψ sinks into the roundoff of the solve.
            let peak = samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));
            let end = (i1..g.n)
                .take_while(|&i| samples[i].abs() >= TAIL_FLOOR * peak)
                .last()
                .unwrap_or(i1);
            let tail = if end - i1 >= 6 {
                end - i1
            } else {
                g.n - 1 - i1
            };
            let k_fit = fit_decay((i1 + tail / 3..i1 + 2 * tail / 3).map(|i| (g.x(i), samples[i])));
            Ok(BoundState {
                index,
                energy,
                samples,
                p_inside,
                k_fit,
            })
        })
        .collect()
}

/// All bound states, with the grid chosen by `config`.
///
/// With automatic padding the grid is widened until every returned state has
/// at least `pad_decay_lengths` decay lengths of padding.
pub fn solve_bound_states(
    p: &Potential,
    ctx: &PhysicalContext,
    config: &GridConfig,
) -> Result<FdSpectrum, FdError> {
    let c = ctx.hbar2_over_2m();
    let dx = p.dx();
    let depth = p.max_depth();
    // Upper estimate of the ground-state k: the delta-well value for the
    // attractive area, capped by the deepest segment.
    let k_est = if depth > 0.0 {
        (p.attractive_area() / (2.0 * c)).min((depth / c).sqrt())
    } else {
        1.0 / dx
    };
    let cells = match config.cells_per_dx {
        Some(m) => m,
        None => {
            let h_max = (dx / 200.0).min(0.05 / k_est);
            aligned_cells(p, (dx / h_max).ceil() as usize)?
        }
    };
    let factor = config.pad_decay_lengths;
    let mut padding = config
        .padding
        .unwrap_or_else(|| (factor / k_est).max(10.0 * dx));

    for _ in 0..12 {
        let grid = Grid::aligned(dx, cells, padding)?;
        let states = solve_on_grid(p, &grid, ctx, config.tol)?;
        if config.padding.is_some() {
            return Ok(FdSpectrum { grid, states });
        }
        match states.last() {
            Some(shallowest) => {
                let k = ctx.k_from_energy(shallowest.energy)?;
                let needed = factor / k;
                if needed <= padding * (1.0 + 1e-9) {
                    return Ok(FdSpectrum { grid, states });
                }
                padding = needed * 1.02;
            }
            None if depth > 0.0 => padding *= 4.0,
            None => return Ok(FdSpectrum { grid, states }),
        }
    }
    let grid = Grid::aligned(dx, cells, padding)?;
    let states = solve_on_grid(p, &grid, ctx, config.tol)?;
    Ok(FdSpectrum { grid, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{square_well, Segment};
    use approx::assert_relative_eq;

    #[test]
    fn zero_potential_operator() {
        let ctx = PhysicalContext::electron();
        let flat = Potential::new(vec![Segment {
            width: 1.0,
            value: 0.0,
        }])
        .unwrap();
        let g = Grid::aligned(1.0, 10, 3.0).unwrap();
        let t = build_hamiltonian(&flat, &g, &ctx).unwrap();
        let c = ctx.hbar2_over_2m() / (g.h * g.h);
        assert!(t.diagonal.iter().all(|&d| (d - 2.0 * c).abs() < 1e-12 * c));
        assert!(t.off_diagonal.iter().all(|&e| e == -c));
        assert_eq!(sturm_count(&t, 0.0), 0);
        assert!(lowest_eigenvalues(&t, 5, 1e-12).iter().all(|&e| e > 0.0));
        let fd = solve_bound_states(&flat, &ctx, &GridConfig::default()).unwrap();
        assert!(fd.states.is_empty());
    }

    #[test]
    fn misaligned_grid_is_rejected() {
        let ctx = PhysicalContext::electron();
        let p = square_well(0.1, 1.0).unwrap();
        let g = Grid::new(-2.03, 3.0, 101).unwrap();
        assert!(matches!(
            build_hamiltonian(&p, &g, &ctx),
            Err(FdError::Misaligned { .. })
        ));
        let g = Grid::new(-1.0, 2.0, 7).unwrap();
        assert!(build_hamiltonian(&p, &g, &ctx).is_ok());
        assert!(Grid::new(0.0, 1.0, 2).is_err());
    }

    #[test]
    fn boundary_nodes_take_the_mean() {
        let p = Potential::new(vec![
            Segment {
                width: 1.0,
                value: -0.4,
            },
            Segment {
                width: 1.0,
                value: -0.2,
            },
        ])
        .unwrap();
        let g = Grid::aligned(2.0, 4, 1.0).unwrap();
        let u = node_potential(&p, &g).unwrap();
        let i0 = g.node_at(0.0).unwrap();
        assert_eq!(
            &u[i0..=i0 + 4],
            &[-0.2, -0.4, -0.30000000000000004, -0.2, -0.1]
        );
    }

    #[test]
    fn aligned_cell_count() {
        let p = Potential::new(vec![
            Segment {
                width: 1.0,
                value: -0.4,
            },
            Segment {
                width: 2.0,
                value: -0.2,
            },
        ])
        .unwrap();
        assert_eq!(aligned_cells(&p, 200).unwrap(), 201);
        let single = square_well(0.1, 3.7).unwrap();
        assert_eq!(aligned_cells(&single, 200).unwrap(), 200);
    }

    #[test]
    fn decay_fit_on_exact_exponential() {
        let k = fit_decay((0..50).map(|i| {
            let x = i as f64 * 0.1;
            (x, 3.0 * (-1.7 * x).exp())
        }));
        assert_relative_eq!(k, 1.7, max_relative = 1e-12);
    }
}
