//! Kinetic, mass-conserving systems with the indefinite first integral
//! `Σ a_k x_k² − Σ b_l y_l²`.

use crnkit::qfi::{generate_mixed_sign_system, MixedSignParams};
use crnkit::rational::{frac, int};
use crnkit::{canonical_realization, kinetic_conservation};

fn main() -> anyhow::Result<()> {
    let cases = [
        MixedSignParams {
            a: vec![int(1)],
            b: vec![int(1)],
            coupling: vec![vec![int(1)]],
            rho_x: vec![int(1)],
            rho_y: vec![int(1)],
            rho_z: int(1),
        },
        MixedSignParams {
            a: vec![int(1), int(2)],
            b: vec![frac(1, 2), int(3)],
            coupling: vec![vec![int(1), int(0)], vec![int(2), int(1)]],
            rho_x: vec![int(1), int(2)],
            rho_y: vec![int(1), int(1)],
            rho_z: int(3),
        },
    ];
    for p in &cases {
        let g = generate_mixed_sign_system(p)?;
        println!("system:\n{}", g.system.to_text());
        let names = g.system.names();
        println!("first integral: {} ({:?})", g.first_integral.render(names), g.first_integral.signature());
        if let Some(w) = kinetic_conservation(&g.system) {
            let rho: Vec<String> = w.rho().iter().map(|x| x.to_string()).collect();
            println!("conserved with weights ({})", rho.join(", "));
        }
        println!("realization:\n{}", canonical_realization(&g.system)?.network.render());
    }
    Ok(())
}
