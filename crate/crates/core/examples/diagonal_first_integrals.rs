//! Kinetic systems with a positive diagonal quadratic first integral, found
//! back by the exact search, plus a divergence certificate.

use crnkit::kinetics::no_periodic_orbit_certificate;
use crnkit::qfi::{generate_diagonal_system, DiagonalParams};
use crnkit::rational::int;
use crnkit::{find_quadratic_first_integrals, SignatureFilter};

fn main() -> anyhow::Result<()> {
    let p = DiagonalParams {
        a: vec![int(1), int(1), int(1)],
        k: vec![vec![int(0), int(2), int(3)], vec![int(4), int(0), int(5)], vec![int(6), int(7), int(0)]],
    };
    let g = generate_diagonal_system(&p)?;
    println!("generated system:\n{}", g.system.to_text());
    println!("first integral: {}", g.first_integral.render(g.system.names()));

    let report = find_quadratic_first_integrals(&g.system, SignatureFilter::PositiveDiagonal);
    println!("search found: {}", report.found);
    for v in &report.witness_basis {
        println!("  basis element {} ({:?})", v.render(g.system.names()), v.signature());
    }

    let cert = no_periodic_orbit_certificate(&g.system, Some(&g.first_integral));
    println!("divergence: {}; verdict {:?}", cert.divergence_text, cert.verdict);
    Ok(())
}
