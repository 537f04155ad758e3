//! Probability cap, critical `z` and both energy bounds for a few widths and
//! masses.

use ultrashort::paper_method::{
    max_probability, physical_branch, printed_bound_constant, recomputed_bound_constant,
    PaperBounds,
};
use ultrashort::units::PhysicalContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p_max = max_probability();
    println!("probability cap       {:.9} ({:.1}%)", p_max, 100.0 * p_max);
    println!("z at the cap          {:.9}", physical_branch(p_max)?);
    println!("printed constant      {:.9}", printed_bound_constant());
    println!("recomputed constant   {:.9}", recomputed_bound_constant());
    println!();
    println!(
        "{:>6} {:>8} {:>16} {:>16} {:>8}",
        "mass", "dx (nm)", "printed (meV)", "2/7 (meV)", "ratio"
    );
    for mass in [1.0, 0.067] {
        let ctx = PhysicalContext::new(mass)?;
        for dx in [1.0, 2.0, 5.0, 10.0] {
            let b = PaperBounds::new(dx, &ctx)?;
            println!(
                "{mass:>6} {dx:>8} {:>16.6} {:>16.6} {:>8.5}",
                b.e_bound_paper * 1e3,
                b.e_bound_recomputed * 1e3,
                b.ratio()
            );
        }
    }
    Ok(())
}
