//! Grid refinement of the finite-difference ground state against the exact
//! square-well value, for the well of strength `V₀·dx²/(ħ²/2m) = 1`.

use ultrashort::fd_solver::{solve_bound_states, GridConfig};
use ultrashort::oracles::square_well_states;
use ultrashort::potentials::square_well;
use ultrashort::units::PhysicalContext;
use ultrashort::validation::convergence_order;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PhysicalContext::electron();
    let dx = 5.0;
    let depth = ctx.hbar2_over_2m() / (dx * dx);
    let exact = &square_well_states(depth, dx, &ctx)?[0];
    let k = ctx.k_from_energy(exact.energy)?;
    println!(
        "exact: E = {:.9} meV, z = {:.9}",
        exact.energy * 1e3,
        exact.z
    );

    let well = square_well(depth, dx)?;
    let mut pairs = Vec::new();
    println!(
        "{:>8} {:>12} {:>16} {:>12}",
        "cells", "h (nm)", "E (meV)", "rel. error"
    );
    for cells in [25, 50, 100, 200, 400] {
        let config = GridConfig {
            cells_per_dx: Some(cells),
            padding: Some(12.0 / k),
            ..GridConfig::default()
        };
        let fd = solve_bound_states(&well, &ctx, &config)?;
        let e = fd.states[0].energy;
        let err = (e / exact.energy - 1.0).abs();
        let h = fd.grid.h;
        println!("{cells:>8} {h:>12.6} {:>16.9} {err:>12.3e}", e * 1e3);
        pairs.push((h, err));
    }
    println!("fitted order: {:.3}", convergence_order(&pairs)?);
    Ok(())
}
