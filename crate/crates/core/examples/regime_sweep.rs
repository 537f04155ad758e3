//! The default depth sweep at `dx = 5` nm: where the bounds hold and where
//! they fail. The CSV goes to stdout, the summary to stderr.

use ultrashort::units::PhysicalContext;
use ultrashort::validation::{summarize, sweep, write_csv, Backend, SweepSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PhysicalContext::electron();
    let rows = sweep(
        &SweepSpec::default_square_well(),
        &ctx,
        &Backend::transfer_matrix(),
    )?;
    write_csv(&rows, std::io::stdout().lock())?;
    let summary = summarize(&rows);
    eprintln!("records: {}", summary.rows);
    eprintln!("recomputed bound: {}", summary.boundary_recomputed);
    eprintln!("printed bound: {}", summary.boundary_printed);
    if let Some(r) = summary.worst_residual {
        eprintln!("worst residual: {r:.3e}");
    }
    Ok(())
}
