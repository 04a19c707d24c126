//! Planar quadratic systems keeping `x + y − ln x − ln y` constant.

use crnkit::poly::PolynomialSystem;
use crnkit::qfi::{lotka_volterra_log_check, solve_log_family};

fn main() -> anyhow::Result<()> {
    let basis = solve_log_family();
    println!("solution space dimension: {}", basis.len());
    for sys in &basis {
        println!("  spanned by {sys}");
    }
    for eqs in [["2*x*y - 2*x", "-2*x*y + 2*y"], ["x*y - x", "-x*y + 2*y"]] {
        let sys = PolynomialSystem::parse(&["x", "y"], &eqs)?;
        println!("{sys}: keeps the log integral = {}", lotka_volterra_log_check(&sys)?);
    }
    Ok(())
}
