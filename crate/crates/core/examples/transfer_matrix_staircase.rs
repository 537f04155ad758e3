//! Transfer-matrix states of an asymmetric staircase with a repulsive step,
//! checked against the node count of each wavefunction.

use ultrashort::oracles::{states_below, transfer_matrix_states, ScanConfig, WaveFunction};
use ultrashort::potentials::{Potential, Segment};
use ultrashort::units::PhysicalContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PhysicalContext::electron();
    let p = Potential::new(vec![
        Segment {
            width: 1.0,
            value: -0.30,
        },
        Segment {
            width: 0.5,
            value: 0.10,
        },
        Segment {
            width: 2.0,
            value: -0.15,
        },
        Segment {
            width: 1.5,
            value: -0.05,
        },
    ])?;
    let spectrum = transfer_matrix_states(&p, &ctx, &ScanConfig::default())?;
    println!("dx = {} nm, symmetric: {}", p.dx(), p.is_symmetric());
    for (n, s) in spectrum.states.iter().enumerate() {
        println!(
            "n={n}: E = {:>11.6} meV  z = {:.6}  p_inside = {:.6}  nodes = {}  norm = {:.12}",
            s.energy * 1e3,
            s.z,
            s.p_inside,
            s.wavefunction.node_count(),
            s.wavefunction.norm_sq()
        );
    }
    if let Some(last) = spectrum.states.last() {
        let above = 0.5 * last.energy;
        println!(
            "states below {:.4} meV: {}",
            above * 1e3,
            states_below(&p, &ctx, above)?
        );
    }
    for w in &spectrum.warnings {
        println!("warning: {w:?}");
    }
    Ok(())
}
