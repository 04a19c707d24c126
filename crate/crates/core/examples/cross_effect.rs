//! Negative cross-effect terms and points of the boundary where they push the
//! trajectory out of the first orthant.

use crnkit::kinetics::cross_effect_witness;
use crnkit::negative_cross_effect;
use crnkit::poly::PolynomialSystem;

fn report(title: &str, sys: &PolynomialSystem) {
    let r = negative_cross_effect(sys);
    println!("{title}: kinetic = {}", r.is_kinetic);
    for v in &r.violations {
        let witness = cross_effect_witness(sys, v.component, &v.monomial);
        let point = witness
            .map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
            .unwrap_or_else(|| "none found".into());
        println!("  {}': coefficient {} on {}; f < 0 at ({point})", v.variable, v.coefficient, v.monomial_text());
    }
}

fn main() -> anyhow::Result<()> {
    report("harmonic oscillator", &PolynomialSystem::parse(&["x", "y"], &["y", "-x"])?);
    report(
        "Lorenz",
        &PolynomialSystem::parse(&["x", "y", "z"], &["10*y - 10*x", "28*x - y - x*z", "x*y - 8/3*z"])?,
    );
    for (d, c, a, b) in [(1, 1, 1, -1), (1, -1, 1, -1), (1, 1, 1, 1)] {
        let eqs = [
            format!("{d}"),
            format!("{c} - 4*y*x^2 + 5*x*y + 6*z + 7*w"),
            format!("({a})*x + 2*y"),
            format!("-({b})*x*y"),
        ];
        let refs: Vec<&str> = eqs.iter().map(String::as_str).collect();
        let sys = PolynomialSystem::parse(&["x", "y", "z", "w"], &refs)?;
        report(&format!("(d, c, a, b) = ({d}, {c}, {a}, {b})"), &sys);
    }
    Ok(())
}
