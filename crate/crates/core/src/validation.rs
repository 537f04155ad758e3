//! Confronts the approximate bounds with exact bound states.
//!
//! Every configuration is solved with one of the exact backends, and the
//! ground state is compared with the probability cap and with both energy
//! bounds. Excited states are carried along in the record but never feed the
//! headline flags.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fd_solver::{self, FdError, GridConfig};
use crate::oracles::{self, OracleError, ScanConfig};
use crate::paper_method::{self, MethodError, PaperBounds};
use crate::potentials::{self, Potential, PotentialError};
use crate::units::PhysicalContext;

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 15] = [
    "family",
    "depth_eV",
    "dx_nm",
    "mass_me",
    "method",
    "z_exact",
    "P_exact",
    "E_exact_meV",
    "P_max",
    "E_bound_paper_meV",
    "E_bound_recomp_meV",
    "residual_eq11",
    "p_bound_ok",
    "e_paper_ok",
    "e_recomp_ok",
];

#[derive(Debug, Error)]
pub enum ValidationError {
    #[error("no bound state")]
    NoBoundState,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    FiniteDifference(#[from] FdError),
    #[error(transparent)]
    Method(#[from] MethodError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("convergence fit needs at least 3 positive (scale, error) pairs")]
    BadFitData,
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

/// Which exact solver produces the reference state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Backend {
    TransferMatrix(ScanConfig),
    FiniteDifference(GridConfig),
    /// Transcendental equations; single-segment wells only.
    SquareWell,
}

impl Backend {
    pub fn transfer_matrix() -> Self {
        Backend::TransferMatrix(ScanConfig::default())
    }

    pub fn finite_difference() -> Self {
        Backend::FiniteDifference(GridConfig::default())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Backend::TransferMatrix(_) => "transfer-matrix",
            Backend::FiniteDifference(_) => "finite-difference",
            Backend::SquareWell => "square-well",
        }
    }
}

/// Bound state reduced to what the comparison needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactState {
    /// eV.
    pub energy: f64,
    pub z: f64,
    /// `∫₀^dx ψ²`.
    pub p_inside: f64,
    /// `ψ(0)²·dx`.
    pub p_weight: f64,
    /// Second-order estimate `dx·ψ(0)²·(1 + 3z)` of `p_inside`.
    pub p_expansion: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub p_bound_ok: bool,
    pub e_bound_paper_ok: bool,
    pub e_bound_recomputed_ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateComparison {
    pub index: usize,
    pub exact: ExactState,
    /// `N(p_inside, z) − 1`.
    pub norm_residual: f64,
    pub flags: Flags,
}

impl StateComparison {
    fn new(index: usize, exact: ExactState, bounds: &PaperBounds) -> Result<Self, MethodError> {
        let binding = exact.energy.abs();
        Ok(Self {
            index,
            exact,
            norm_residual: paper_method::normalization_residual(exact.p_inside, exact.z)?,
            flags: Flags {
                p_bound_ok: exact.p_inside <= bounds.p_max,
                e_bound_paper_ok: binding <= bounds.e_bound_paper,
                e_bound_recomputed_ok: binding <= bounds.e_bound_recomputed,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigParams {
    pub family: String,
    pub depth_ev: f64,
    pub dx_nm: f64,
    pub mass_me: f64,
}

/// Ground-state comparison for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub params: ConfigParams,
    pub method: String,
    pub ground: StateComparison,
    pub bounds: PaperBounds,
    pub excited: Vec<StateComparison>,
}

impl SweepRecord {
    pub fn z(&self) -> f64 {
        self.ground.exact.z
    }

    pub fn flags(&self) -> Flags {
        self.ground.flags
    }

    pub fn norm_residual(&self) -> f64 {
        self.ground.norm_residual
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SweepRow {
    Record(SweepRecord),
    /// The configuration binds nothing.
    NoState {
        params: ConfigParams,
        method: String,
    },
}

impl SweepRow {
    pub fn record(&self) -> Option<&SweepRecord> {
        match self {
            SweepRow::Record(r) => Some(r),
            SweepRow::NoState { .. } => None,
        }
    }
}

fn exact_states(
    p: &Potential,
    ctx: &PhysicalContext,
    backend: &Backend,
) -> Result<Vec<ExactState>, ValidationError> {
    let dx = p.dx();
    let make = |energy: f64, p_inside: f64, psi0_sq: f64| -> Result<ExactState, ValidationError> {
        let k = ctx.k_from_energy(energy).map_err(OracleError::from)?;
        Ok(ExactState {
            energy,
            z: k * dx,
            p_inside,
            p_weight: psi0_sq * dx,
            p_expansion: paper_method::interior_probability_approx(psi0_sq, k, dx),
        })
    };
    let states = match backend {
        Backend::TransferMatrix(scan) => match oracles::transfer_matrix_states(p, ctx, scan) {
            Ok(spectrum) => spectrum
                .states
                .iter()
                .map(|s| make(s.energy, s.p_inside, s.wavefunction.psi_at_origin().powi(2)))
                .collect::<Result<_, _>>()?,
            Err(OracleError::NoBoundState) => Vec::new(),
            Err(e) => return Err(e.into()),
        },
        Backend::SquareWell => {
            let [seg] = p.segments() else {
                return Err(ValidationError::InvalidRange(
                    "square-well backend needs a single-segment potential".into(),
                ));
            };
            if seg.value >= 0.0 {
                Vec::new()
            } else {
                oracles::square_well_states(-seg.value, dx, ctx)?
                    .iter()
                    .map(|s| make(s.energy, s.p_inside, s.wavefunction.psi_at_origin().powi(2)))
                    .collect::<Result<_, _>>()?
            }
        }
        Backend::FiniteDifference(cfg) => {
            let fd = fd_solver::solve_bound_states(p, ctx, cfg)?;
            let i0 = fd.grid.node_at(0.0).ok_or(FdError::Misaligned { x: 0.0 })?;
            fd.states
                .iter()
                .map(|s| make(s.energy, s.p_inside, s.samples[i0].powi(2)))
                .collect::<Result<_, _>>()?
        }
    };
    Ok(states)
}

fn family_of(p: &Potential) -> &'static str {
    if p.segments().len() == 1 {
        "square-well"
    } else {
        "piecewise"
    }
}

/// Compares the ground state of `p` with the bounds for its width.
pub fn evaluate_configuration(
    p: &Potential,
    ctx: &PhysicalContext,
    backend: &Backend,
) -> Result<SweepRecord, ValidationError> {
    let params = ConfigParams {
        family: family_of(p).to_string(),
        depth_ev: p.max_depth(),
        dx_nm: p.dx(),
        mass_me: ctx.mass(),
    };
    evaluate_labeled(p, ctx, backend, params)
}

fn evaluate_labeled(
    p: &Potential,
    ctx: &PhysicalContext,
    backend: &Backend,
    params: ConfigParams,
) -> Result<SweepRecord, ValidationError> {
    let bounds = PaperBounds::new(p.dx(), ctx)?;
    let states = exact_states(p, ctx, backend)?;
    let mut comparisons = states
        .into_iter()
        .enumerate()
        .map(|(i, s)| StateComparison::new(i, s, &bounds))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter();
    let ground = comparisons.next().ok_or(ValidationError::NoBoundState)?;
    Ok(SweepRecord {
        params,
        method: backend.name().to_string(),
        ground,
        bounds,
        excited: comparisons.collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spacing {
    Linear,
    Log,
}

/// `count` values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl ParamRange {
    pub fn single(value: f64) -> Self {
        Self {
            lo: value,
            hi: value,
            count: 1,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(lo: f64, hi: f64, count: usize) -> Self {
        Self {
            lo,
            hi,
            count,
            spacing: Spacing::Log,
        }
    }

    pub fn linear(lo: f64, hi: f64, count: usize) -> Self {
        Self {
            lo,
            hi,
            count,
            spacing: Spacing::Linear,
        }
    }

    pub fn values(&self) -> Result<Vec<f64>, ValidationError> {
        if self.count == 0 {
            return Ok(Vec::new());
        }
        let ok = self.lo.is_finite() && self.hi.is_finite() && self.lo > 0.0 && self.hi >= self.lo;
        if !ok {
            return Err(ValidationError::InvalidRange(format!(
                "need 0 < lo <= hi, got {}:{}",
                self.lo, self.hi
            )));
        }
        if self.count == 1 {
            return Ok(vec![self.lo]);
        }
        let last = (self.count - 1) as f64;
        Ok((0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.lo + t * (self.hi - self.lo),
                    Spacing::Log => self.lo * (self.hi / self.lo).powf(t),
                }
            })
            .collect())
    }
}

impl FromStr for ParamRange {
    type Err = ValidationError;

    /// `lo:hi:log:count` or `lo:hi:lin:count`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad =
            || ValidationError::InvalidRange(format!("expected lo:hi:log|lin:count, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, spacing, count] = parts.as_slice() else {
            return Err(bad());
        };
        let spacing = match *spacing {
            "log" => Spacing::Log,
            "lin" => Spacing::Linear,
            _ => return Err(bad()),
        };
        let range = Self {
            lo: lo.parse().map_err(|_| bad())?,
            hi: hi.parse().map_err(|_| bad())?,
            count: count.parse().map_err(|_| bad())?,
            spacing,
        };
        range.values()?;
        Ok(range)
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spacing = match self.spacing {
            Spacing::Linear => "lin",
            Spacing::Log => "log",
        };
        write!(f, "{}:{}:{}:{}", self.lo, self.hi, spacing, self.count)
    }
}

/// Families of configurations a sweep can walk through.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SweepSpec {
    /// Square wells over depth × width.
    SquareWell { depths: ParamRange, dxs: ParamRange },
    /// Square wells of fixed `depth·dx = alpha` (eV·nm) over width.
    FixedArea { alpha: f64, dxs: ParamRange },
}

impl SweepSpec {
    /// Depth log-spaced over `[1e−4, 1]` eV in 20 steps at `dx = 5` nm.
    pub fn default_square_well() -> Self {
        SweepSpec::SquareWell {
            depths: ParamRange::log(1e-4, 1.0, 20),
            dxs: ParamRange::single(5.0),
        }
    }

    fn configurations(&self, mass: f64) -> Result<Vec<(Potential, ConfigParams)>, ValidationError> {
        let mut out = Vec::new();
        match *self {
            SweepSpec::SquareWell { depths, dxs } => {
                let depths = depths.values()?;
                for dx in dxs.values()? {
                    for &depth in &depths {
                        out.push((
                            potentials::square_well(depth, dx)?,
                            ConfigParams {
                                family: "square-well".into(),
                                depth_ev: depth,
                                dx_nm: dx,
                                mass_me: mass,
                            },
                        ));
                    }
                }
            }
            SweepSpec::FixedArea { alpha, dxs } => {
                for dx in dxs.values()? {
                    out.push((
                        potentials::fixed_area_well(alpha, dx)?,
                        ConfigParams {
                            family: "fixed-area".into(),
                            depth_ev: alpha / dx,
                            dx_nm: dx,
                            mass_me: mass,
                        },
                    ));
                }
            }
        }
        Ok(out)
    }
}

/// One row per configuration, in input order. Configurations are solved in
/// parallel.
pub fn sweep(
    spec: &SweepSpec,
    ctx: &PhysicalContext,
    backend: &Backend,
) -> Result<Vec<SweepRow>, ValidationError> {
    spec.configurations(ctx.mass())?
        .into_par_iter()
        .map(
            |(p, params)| match evaluate_labeled(&p, ctx, backend, params.clone()) {
                Ok(r) => Ok(SweepRow::Record(r)),
                Err(ValidationError::NoBoundState) => Ok(SweepRow::NoState {
                    params,
                    method: backend.name().to_string(),
                }),
                Err(e) => Err(e),
            },
        )
        .collect()
}

/// Slope of the least-squares line through `(ln scale, ln error)`.
pub fn convergence_order(pairs: &[(f64, f64)]) -> Result<f64, ValidationError> {
    if pairs.len() < 3 || pairs.iter().any(|&(s, e)| !(s > 0.0 && e > 0.0)) {
        return Err(ValidationError::BadFitData);
    }
    let n = pairs.len() as f64;
    let pts: Vec<(f64, f64)> = pairs.iter().map(|&(s, e)| (s.ln(), e.ln())).collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(ValidationError::BadFitData);
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    Printed,
    Recomputed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ValidityBoundary {
    /// `z_star` is the smallest `z` whose energy bound fails; `below` is the
    /// largest holding `z` under it.
    Found {
        z_star: f64,
        below: f64,
    },
    OutsideSweep,
}

impl ValidityBoundary {
    pub fn bracket_width(&self) -> Option<f64> {
        match *self {
            ValidityBoundary::Found { z_star, below } => Some(z_star - below),
            ValidityBoundary::OutsideSweep => None,
        }
    }
}

impl fmt::Display for ValidityBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidityBoundary::Found { z_star, below } => {
                write!(f, "z* = {z_star:.6} (bracket {below:.6} .. {z_star:.6})")
            }
            ValidityBoundary::OutsideSweep => f.write_str("boundary outside sweep"),
        }
    }
}

/// Where the chosen energy bound stops holding along `records`.
pub fn validity_boundary(records: &[SweepRecord], kind: BoundKind) -> ValidityBoundary {
    let holds = |r: &SweepRecord| match kind {
        BoundKind::Printed => r.flags().e_bound_paper_ok,
        BoundKind::Recomputed => r.flags().e_bound_recomputed_ok,
    };
    let Some(z_star) = records
        .iter()
        .filter(|r| !holds(r))
        .map(SweepRecord::z)
        .min_by(f64::total_cmp)
    else {
        return ValidityBoundary::OutsideSweep;
    };
    match records
        .iter()
        .filter(|r| holds(r) && r.z() < z_star)
        .map(SweepRecord::z)
        .max_by(f64::total_cmp)
    {
        Some(below) => ValidityBoundary::Found { z_star, below },
        None => ValidityBoundary::OutsideSweep,
    }
}

/// Counts and extremes printed after a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub no_state_rows: usize,
    pub boundary_recomputed: ValidityBoundary,
    pub boundary_printed: ValidityBoundary,
    pub worst_residual: Option<f64>,
}

pub fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let records: Vec<SweepRecord> = rows.iter().filter_map(SweepRow::record).cloned().collect();
    SweepSummary {
        rows: rows.len(),
        no_state_rows: rows.len() - records.len(),
        boundary_recomputed: validity_boundary(&records, BoundKind::Recomputed),
        boundary_printed: validity_boundary(&records, BoundKind::Printed),
        worst_residual: records
            .iter()
            .map(SweepRecord::norm_residual)
            .max_by(|a, b| a.abs().total_cmp(&b.abs())),
    }
}

/// Nine significant digits.
pub fn format_sig9(v: f64) -> String {
    format!("{v:.8e}")
}

fn row_fields(row: &SweepRow) -> Vec<String> {
    let (params, method) = match row {
        SweepRow::Record(r) => (&r.params, r.method.as_str()),
        SweepRow::NoState { params, method } => (params, method.as_str()),
    };
    let mut fields = vec![
        params.family.clone(),
        format_sig9(params.depth_ev),
        format_sig9(params.dx_nm),
        format_sig9(params.mass_me),
        method.to_string(),
    ];
    match row {
        SweepRow::Record(r) => {
            let g = &r.ground;
            fields.extend([
                format_sig9(g.exact.z),
                format_sig9(g.exact.p_inside),
                format_sig9(g.exact.energy * 1e3),
                format_sig9(r.bounds.p_max),
                format_sig9(r.bounds.e_bound_paper * 1e3),
                format_sig9(r.bounds.e_bound_recomputed * 1e3),
                format_sig9(g.norm_residual),
                g.flags.p_bound_ok.to_string(),
                g.flags.e_bound_paper_ok.to_string(),
                g.flags.e_bound_recomputed_ok.to_string(),
            ]);
        }
        SweepRow::NoState { .. } => fields.extend(std::iter::repeat_n(String::new(), 10)),
    }
    fields
}

/// Writes the sweep as CSV with the [`CSV_COLUMNS`] header.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), ValidationError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for row in rows {
        w.write_record(row_fields(row))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn v0_well(v0: f64, dx: f64, ctx: &PhysicalContext) -> Potential {
        potentials::square_well(v0 * ctx.hbar2_over_2m() / (dx * dx), dx).unwrap()
    }

    #[test]
    fn unit_strength_well_respects_recomputed_bound() {
        let ctx = PhysicalContext::electron();
        let r =
            evaluate_configuration(&v0_well(1.0, 5.0, &ctx), &ctx, &Backend::SquareWell).unwrap();
        assert_relative_eq!(r.z(), 0.435_130_859, max_relative = 1e-8);
        assert!(r.flags().e_bound_recomputed_ok);
        assert!(r.flags().e_bound_paper_ok);
        assert_eq!(r.params.family, "square-well");
    }

    #[test]
    fn deep_well_violates_both_energy_bounds() {
        let ctx = PhysicalContext::electron();
        let p = potentials::square_well(1.0, 5.0).unwrap();
        let r = evaluate_configuration(&p, &ctx, &Backend::transfer_matrix()).unwrap();
        assert!(r.ground.exact.energy < -0.8 && r.ground.exact.energy > -1.0);
        assert!(!r.flags().e_bound_paper_ok);
        assert!(!r.flags().e_bound_recomputed_ok);
        assert!(!r.excited.is_empty());
    }

    #[test]
    fn shallow_well_satisfies_everything() {
        let ctx = PhysicalContext::electron();
        let r =
            evaluate_configuration(&v0_well(0.08, 5.0, &ctx), &ctx, &Backend::SquareWell).unwrap();
        assert!(r.z() <= 0.05);
        assert!(
            r.flags().p_bound_ok && r.flags().e_bound_paper_ok && r.flags().e_bound_recomputed_ok
        );
    }

    #[test]
    fn no_state_is_an_error_for_single_configurations() {
        let ctx = PhysicalContext::electron();
        let flat = Potential::new(vec![potentials::Segment {
            width: 2.0,
            value: 0.0,
        }])
        .unwrap();
        assert!(matches!(
            evaluate_configuration(&flat, &ctx, &Backend::transfer_matrix()),
            Err(ValidationError::NoBoundState)
        ));
    }

    #[test]
    fn convergence_order_on_synthetic_data() {
        let quad: Vec<_> = [0.1, 0.05, 0.025, 0.0125]
            .iter()
            .map(|&s| (s, 3.0 * s * s))
            .collect();
        assert!((convergence_order(&quad).unwrap() - 2.0).abs() < 1e-10);
        let lin: Vec<_> = [1.0, 2.0, 4.0].iter().map(|&s| (s, 0.5 * s)).collect();
        assert!((convergence_order(&lin).unwrap() - 1.0).abs() < 1e-12);
        assert!(convergence_order(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(convergence_order(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
    }

    #[test]
    fn range_parsing() {
        let r: ParamRange = "1e-4:1:log:20".parse().unwrap();
        let v = r.values().unwrap();
        assert_eq!(v.len(), 20);
        assert_relative_eq!(v[0], 1e-4);
        assert_relative_eq!(v[19], 1.0, max_relative = 1e-14);
        let lin: ParamRange = "1:2:lin:3".parse().unwrap();
        assert_eq!(lin.values().unwrap(), vec![1.0, 1.5, 2.0]);
        assert!("1:2:cubic:3".parse::<ParamRange>().is_err());
        assert!("0:2:log:3".parse::<ParamRange>().is_err());
        assert!("1:2:log".parse::<ParamRange>().is_err());
        assert_eq!(
            ParamRange::log(1.0, 2.0, 0).values().unwrap(),
            Vec::<f64>::new()
        );
    }

    #[test]
    fn empty_sweep() {
        let ctx = PhysicalContext::electron();
        let spec = SweepSpec::SquareWell {
            depths: ParamRange::log(1e-3, 1.0, 0),
            dxs: ParamRange::single(5.0),
        };
        assert!(sweep(&spec, &ctx, &Backend::SquareWell).unwrap().is_empty());
    }

    #[test]
    fn boundary_from_synthetic_records() {
        let ctx = PhysicalContext::electron();
        let records: Vec<SweepRecord> = [0.3, 0.5, 1.5, 3.0]
            .iter()
            .map(|&v0| {
                evaluate_configuration(&v0_well(v0, 2.0, &ctx), &ctx, &Backend::SquareWell).unwrap()
            })
            .collect();
        match validity_boundary(&records, BoundKind::Recomputed) {
            ValidityBoundary::Found { z_star, below } => {
                assert!(below <= (2.0f64 / 7.0).sqrt() && (2.0f64 / 7.0).sqrt() < z_star);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            validity_boundary(&records[..2], BoundKind::Recomputed),
            ValidityBoundary::OutsideSweep
        );
    }

    #[test]
    fn csv_layout() {
        let ctx = PhysicalContext::electron();
        let rows = vec![
            SweepRow::Record(
                evaluate_configuration(&v0_well(1.0, 5.0, &ctx), &ctx, &Backend::SquareWell)
                    .unwrap(),
            ),
            SweepRow::NoState {
                params: ConfigParams {
                    family: "square-well".into(),
                    depth_ev: 0.0,
                    dx_nm: 5.0,
                    mass_me: 1.0,
                },
                method: "square-well".into(),
            },
        ];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_COLUMNS.join(","));
        assert_eq!(lines[1].split(',').count(), 15);
        // p_inside = 0.334 already exceeds the cap at v0 = 1.
        assert!(lines[1].ends_with("false,true,true"));
        assert_eq!(lines[2].split(',').count(), 15);
        assert_eq!(format_sig9(1.282_328_697_667_5), "1.28232870e0");
    }
}
