//! All bound states of square wells of increasing strength, with the
//! probability inside the well and the bound checks for each state.

use ultrashort::oracles::{square_well_state_count, square_well_states};
use ultrashort::paper_method::PaperBounds;
use ultrashort::units::PhysicalContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PhysicalContext::electron();
    let dx = 5.0;
    let bounds = PaperBounds::new(dx, &ctx)?;
    for v0 in [0.1, 1.0, 10.0, 100.0] {
        let depth = v0 * ctx.hbar2_over_2m() / (dx * dx);
        let states = square_well_states(depth, dx, &ctx)?;
        println!(
            "v0 = {v0}: depth {:.4} meV, {} state(s) (predicted {})",
            depth * 1e3,
            states.len(),
            square_well_state_count(v0)
        );
        for (n, s) in states.iter().enumerate() {
            println!(
                "  n={n} {:?}: E = {:>12.6} meV  z = {:.6}  p_inside = {:.6}  under cap: {}  under 2/7 bound: {}",
                s.parity,
                s.energy * 1e3,
                s.z,
                s.p_inside,
                s.p_inside <= bounds.p_max,
                s.energy.abs() <= bounds.e_bound_recomputed
            );
        }
    }
    Ok(())
}
