//! Command-line front end: `bounds`, `solve` and `validate`.
//!
//! [`run`] is the whole program; the binary only forwards its arguments and
//! exit code. Exit codes: 0 with results, 1 on invalid input or solver
//! failure, 2 when the input is valid but binds nothing.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::fd_solver::{self, GridConfig};
use crate::oracles::{self, OracleError, ScanConfig};
use crate::paper_method::{self, PaperBounds};
use crate::potentials;
use crate::units::PhysicalContext;
use crate::validation::{self, format_sig9, Backend, ParamRange, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NO_STATE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ultrashort",
    version,
    about = "Bound-state bounds for ultra-short 1D potentials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverChoice {
    /// Transfer matrix.
    #[value(alias = "transfer-matrix")]
    Tm,
    /// Finite differences.
    #[value(alias = "finite-difference")]
    Fd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepBackend {
    #[value(alias = "transfer-matrix")]
    Tm,
    #[value(alias = "finite-difference")]
    Fd,
    /// Transcendental square-well equations.
    #[value(alias = "square-well")]
    Sw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    SquareWell,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Probability cap, critical z and both energy bounds for a width.
    Bounds {
        /// Well width, nm.
        #[arg(long)]
        dx: f64,
        /// Mass in electron masses.
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Bound states of a potential file.
    Solve {
        #[arg(long)]
        potential: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, value_enum, default_value_t = SolverChoice::Tm)]
        backend: SolverChoice,
        /// Finite-difference cells across the well.
        #[arg(long)]
        grid_n: Option<usize>,
        /// Finite-difference padding on each side, nm.
        #[arg(long)]
        pad: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Sweep a family of wells and write the comparison as CSV.
    Validate {
        #[arg(long, value_enum, default_value_t = Family::SquareWell)]
        family: Family,
        #[arg(long, default_value_t = 5.0)]
        dx: f64,
        /// `lo:hi:log|lin:count`, eV.
        #[arg(long, default_value = "1e-4:1:log:20")]
        depth_range: String,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = SweepBackend::Tm)]
        backend: SweepBackend,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INVALID
        }
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Bounds { dx, mass, format } => cmd_bounds(*dx, *mass, *format, out),
        Command::Solve {
            potential,
            mass,
            backend,
            grid_n,
            pad,
            format,
        } => {
            let grid = GridConfig {
                cells_per_dx: *grid_n,
                padding: *pad,
                ..GridConfig::default()
            };
            cmd_solve(potential, *mass, *backend, grid, *format, out)
        }
        Command::Validate {
            family: Family::SquareWell,
            dx,
            depth_range,
            mass,
            out: path,
            backend,
        } => cmd_validate(*dx, depth_range, *mass, path, *backend, out),
    }
}

fn context(mass: f64) -> Result<PhysicalContext, String> {
    PhysicalContext::new(mass).map_err(|e| format!("--mass: {e}"))
}

fn check_dx(dx: f64) -> Result<(), String> {
    if dx.is_finite() && dx > 0.0 {
        Ok(())
    } else {
        Err(format!("--dx must be positive and finite, got {dx}"))
    }
}

#[derive(Debug, Serialize)]
struct BoundsReport {
    dx_nm: f64,
    mass_me: f64,
    p_max: f64,
    p_max_percent: String,
    z_star: f64,
    printed_constant: f64,
    recomputed_constant: f64,
    e_bound_paper_mev: f64,
    e_bound_recomputed_mev: f64,
    ratio_printed_over_recomputed: f64,
}

impl BoundsReport {
    fn new(bounds: &PaperBounds, mass: f64) -> Self {
        Self {
            dx_nm: bounds.dx,
            mass_me: mass,
            p_max: bounds.p_max,
            p_max_percent: format!("{:.1}%", 100.0 * bounds.p_max),
            z_star: bounds.z_star,
            printed_constant: paper_method::printed_bound_constant(),
            recomputed_constant: paper_method::recomputed_bound_constant(),
            e_bound_paper_mev: bounds.e_bound_paper * 1e3,
            e_bound_recomputed_mev: bounds.e_bound_recomputed * 1e3,
            ratio_printed_over_recomputed: bounds.ratio(),
        }
    }
}

fn io(e: std::io::Error) -> String {
    format!("write failed: {e}")
}

pub fn cmd_bounds(dx: f64, mass: f64, format: Format, out: &mut dyn Write) -> Result<i32, String> {
    check_dx(dx)?;
    let ctx = context(mass)?;
    let bounds = PaperBounds::new(dx, &ctx).map_err(|e| e.to_string())?;
    let r = BoundsReport::new(&bounds, mass);
    match format {
        Format::Table => {
            let rows = [
                ("dx (nm)", format!("{}", r.dx_nm)),
                ("mass (m_e)", format!("{}", r.mass_me)),
                ("p_max", format!("{} ({:.9})", r.p_max_percent, r.p_max)),
                ("z* = sqrt(2/7)", format!("{:.9}", r.z_star)),
                ("printed constant", format!("{:.9}", r.printed_constant)),
                (
                    "recomputed constant 2/7",
                    format!("{:.9}", r.recomputed_constant),
                ),
                (
                    "E bound, printed constant",
                    format!("{:.6} meV", r.e_bound_paper_mev),
                ),
                (
                    "E bound, recomputed",
                    format!("{:.6} meV", r.e_bound_recomputed_mev),
                ),
                (
                    "ratio printed/recomputed",
                    format!("{:.6}", r.ratio_printed_over_recomputed),
                ),
            ];
            for (label, value) in rows {
                writeln!(out, "{label:<28}{value}").map_err(io)?;
            }
        }
        Format::Csv => {
            writeln!(
                out,
                "dx_nm,mass_me,P_max,P_max_percent,z_star,printed_constant,recomputed_constant,E_bound_paper_meV,E_bound_recomp_meV,ratio"
            )
            .map_err(io)?;
            let fields = [
                format_sig9(r.dx_nm),
                format_sig9(r.mass_me),
                format_sig9(r.p_max),
                r.p_max_percent.clone(),
                format_sig9(r.z_star),
                format_sig9(r.printed_constant),
                format_sig9(r.recomputed_constant),
                format_sig9(r.e_bound_paper_mev),
                format_sig9(r.e_bound_recomputed_mev),
                format_sig9(r.ratio_printed_over_recomputed),
            ];
            writeln!(out, "{}", fields.join(",")).map_err(io)?;
        }
        Format::Json => {
            let text = serde_json::to_string_pretty(&r).map_err(|e| e.to_string())?;
            writeln!(out, "{text}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct StateRow {
    index: usize,
    energy_mev: f64,
    z: f64,
    p_inside: f64,
    k_fit: f64,
}

#[derive(Debug, Serialize)]
struct SolveReport {
    backend: &'static str,
    dx_nm: f64,
    mass_me: f64,
    states: Vec<StateRow>,
}

pub fn cmd_solve(
    path: &std::path::Path,
    mass: f64,
    backend: SolverChoice,
    grid: GridConfig,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let ctx = context(mass)?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let p = potentials::parse_potential(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let dx = p.dx();

    let (name, states) = match backend {
        SolverChoice::Tm => {
            let rows = match oracles::transfer_matrix_states(&p, &ctx, &ScanConfig::default()) {
                Ok(spectrum) => spectrum
                    .states
                    .iter()
                    .enumerate()
                    .map(|(index, s)| StateRow {
                        index,
                        energy_mev: s.energy * 1e3,
                        z: s.z,
                        p_inside: s.p_inside,
                        k_fit: s.wavefunction.k(),
                    })
                    .collect(),
                Err(OracleError::NoBoundState) => Vec::new(),
                Err(e) => return Err(format!("transfer-matrix solver failed: {e}")),
            };
            ("transfer-matrix", rows)
        }
        SolverChoice::Fd => {
            let spectrum = fd_solver::solve_bound_states(&p, &ctx, &grid)
                .map_err(|e| format!("finite-difference solver failed: {e}"))?;
            let rows = spectrum
                .states
                .iter()
                .map(|s| {
                    let k = ctx.k_from_energy(s.energy).map_err(|e| e.to_string())?;
                    Ok(StateRow {
                        index: s.index,
                        energy_mev: s.energy * 1e3,
                        z: k * dx,
                        p_inside: s.p_inside,
                        k_fit: s.k_fit,
                    })
                })
                .collect::<Result<Vec<_>, String>>()?;
            ("finite-difference", rows)
        }
    };

    let report = SolveReport {
        backend: name,
        dx_nm: dx,
        mass_me: mass,
        states,
    };
    match format {
        Format::Table => {
            writeln!(
                out,
                "{} solver, dx = {} nm, mass = {} m_e",
                report.backend, dx, mass
            )
            .map_err(io)?;
            if report.states.is_empty() {
                writeln!(out, "no bound state").map_err(io)?;
            } else {
                writeln!(
                    out,
                    "{:>5} {:>16} {:>12} {:>12} {:>14}",
                    "index", "E (meV)", "z", "p_inside", "k_fit (1/nm)"
                )
                .map_err(io)?;
            }
            for s in &report.states {
                writeln!(
                    out,
                    "{:>5} {:>16.9} {:>12.9} {:>12.9} {:>14.9}",
                    s.index, s.energy_mev, s.z, s.p_inside, s.k_fit
                )
                .map_err(io)?;
            }
        }
        Format::Csv => {
            writeln!(out, "index,E_meV,z,p_inside,k_fit").map_err(io)?;
            for s in &report.states {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    s.index,
                    format_sig9(s.energy_mev),
                    format_sig9(s.z),
                    format_sig9(s.p_inside),
                    format_sig9(s.k_fit)
                )
                .map_err(io)?;
            }
        }
        Format::Json => {
            let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            writeln!(out, "{text}").map_err(io)?;
        }
    }
    Ok(if report.states.is_empty() {
        EXIT_NO_STATE
    } else {
        EXIT_OK
    })
}

pub fn cmd_validate(
    dx: f64,
    depth_range: &str,
    mass: f64,
    path: &std::path::Path,
    backend: SweepBackend,
    out: &mut dyn Write,
) -> Result<i32, String> {
    check_dx(dx)?;
    let ctx = context(mass)?;
    let depths: ParamRange = depth_range
        .parse()
        .map_err(|e| format!("--depth-range: {e}"))?;
    let spec = SweepSpec::SquareWell {
        depths,
        dxs: ParamRange::single(dx),
    };
    let backend = match backend {
        SweepBackend::Tm => Backend::transfer_matrix(),
        SweepBackend::Fd => Backend::finite_difference(),
        SweepBackend::Sw => Backend::SquareWell,
    };
    let rows = validation::sweep(&spec, &ctx, &backend).map_err(|e| e.to_string())?;

    let file = File::create(path).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    validation::write_csv(&rows, BufWriter::new(file))
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;

    let summary = validation::summarize(&rows);
    writeln!(
        out,
        "records: {} ({} without a bound state)",
        summary.rows, summary.no_state_rows
    )
    .map_err(io)?;
    writeln!(
        out,
        "recomputed-bound validity: {}",
        summary.boundary_recomputed
    )
    .map_err(io)?;
    writeln!(out, "printed-bound validity: {}", summary.boundary_printed).map_err(io)?;
    match summary.worst_residual {
        Some(r) => writeln!(out, "worst normalization residual: {}", format_sig9(r)),
        None => writeln!(out, "worst normalization residual: n/a"),
    }
    .map_err(io)?;
    writeln!(out, "wrote {}", path.display()).map_err(io)?;
    Ok(EXIT_OK)
}
