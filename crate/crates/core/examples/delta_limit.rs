//! Narrowing wells of fixed area approach the delta well, and the
//! normalization residual of the two-term expansion shrinks with `z`.

use ultrashort::oracles::{delta_well, square_well_states};
use ultrashort::paper_method::normalization_residual;
use ultrashort::units::PhysicalContext;
use ultrashort::validation::convergence_order;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PhysicalContext::electron();
    // Area giving k = 1 nm⁻¹ in the delta limit.
    let alpha = 2.0 * ctx.hbar2_over_2m();
    let target = delta_well(alpha, &ctx)?;
    println!(
        "delta well: E = {:.6} meV, k = {} 1/nm",
        target.energy * 1e3,
        target.k
    );
    println!(
        "{:>9} {:>10} {:>12} {:>10} {:>12}",
        "dx (nm)", "z", "E rel.err", "p/z - 1", "residual"
    );
    let mut pairs = Vec::new();
    for dx in [0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001] {
        let s = &square_well_states(alpha / dx, dx, &ctx)?[0];
        let residual = normalization_residual(s.p_inside, s.z)?;
        println!(
            "{dx:>9} {:>10.6} {:>12.3e} {:>10.3e} {:>12.3e}",
            s.z,
            s.energy / target.energy - 1.0,
            s.p_inside / s.z - 1.0,
            residual
        );
        pairs.push((s.z, residual.abs()));
    }
    println!("residual order in z: {:.3}", convergence_order(&pairs)?);
    Ok(())
}
