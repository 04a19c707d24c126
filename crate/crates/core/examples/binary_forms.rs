//! One system per binary-form family, the quadratic first integral recovered
//! from it, and its signature.

use crnkit::qfi::{equilibria_on_line_check, generate_binary_form_system, BinaryFamily, BinaryFormParams};
use crnkit::rational::int;
use crnkit::{find_quadratic_first_integrals, kinetic_conservation, SignatureFilter};

fn params(family: BinaryFamily) -> BinaryFormParams {
    let (a, b, c) = match family {
        BinaryFamily::EllipseHyperbola => (2, 1, 3),
        BinaryFamily::ParabolicPlus | BinaryFamily::ParabolicMinus => (1, 2, 4),
        BinaryFamily::Indefinite => (1, 3, 2),
        BinaryFamily::RankOne => (1, 2, 0),
    };
    let mut p = BinaryFormParams::new(family, int(a), int(b), int(c));
    for name in family.free_parameters() {
        p.set(name, int(1)).expect("free parameter");
    }
    p
}

fn main() -> anyhow::Result<()> {
    for family in BinaryFamily::ALL {
        let p = params(family);
        let g = generate_binary_form_system(&p)?;
        let names = g.system.names();
        let r = find_quadratic_first_integrals(&g.system, SignatureFilter::Any);
        println!("{}: {}", family.name(), p.describe());
        println!("  system {}", g.system);
        println!("  expected V = {} ({:?})", g.first_integral.render(names), g.first_integral.signature());
        if let Some(v) = &r.candidate {
            println!("  found    V = {} ({:?})", v.render(names), v.signature());
        }
        let w = kinetic_conservation(&g.system)
            .map(|w| w.rho().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
        println!("  kinetic conservation: {}", w.unwrap_or_else(|| "none".into()));
        if family == BinaryFamily::EllipseHyperbola {
            let locus = equilibria_on_line_check(&p)?;
            println!("  vanishes on {}: {}", locus.description, locus.vanishes);
        }
    }
    Ok(())
}
