//! Samples a smooth profile into a staircase, writes it in the potential
//! file format, reads it back and solves it with both backends.

use ultrashort::fd_solver::{solve_bound_states, GridConfig};
use ultrashort::oracles::{transfer_matrix_states, ScanConfig};
use ultrashort::potentials::{discretize_profile, parse_potential};
use ultrashort::units::PhysicalContext;
use ultrashort::validation::{evaluate_configuration, Backend};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PhysicalContext::new(0.067)?;
    // Cosine bump of 80 meV over 4 nm.
    let samples: Vec<(f64, f64)> = (0..=400)
        .map(|i| {
            let x = 4.0 * i as f64 / 400.0;
            (x, -0.04 * (1.0 - (std::f64::consts::PI * x / 2.0).cos()))
        })
        .collect();
    let staircase = discretize_profile(&samples, 16)?;
    let json = staircase.to_json();
    println!(
        "{} segments, {} bytes of JSON",
        staircase.segments().len(),
        json.len()
    );

    let p = parse_potential(&json)?;
    assert_eq!(p, staircase);
    let tm = transfer_matrix_states(&p, &ctx, &ScanConfig::default())?;
    let fd = solve_bound_states(&p, &ctx, &GridConfig::default())?;
    for (a, b) in tm.states.iter().zip(&fd.states) {
        println!(
            "E_tm = {:.6} meV  E_fd = {:.6} meV  p_inside {:.6} / {:.6}",
            a.energy * 1e3,
            b.energy * 1e3,
            a.p_inside,
            b.p_inside
        );
    }
    let record = evaluate_configuration(&p, &ctx, &Backend::transfer_matrix())?;
    println!("ground state flags: {:?}", record.flags());
    Ok(())
}
