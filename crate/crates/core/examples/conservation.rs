//! Stoichiometric and kinetic mass conservation differ: a positive vector
//! that annihilates the induced ODE but not the stoichiometric matrix.

use crnkit::conservation::{stoichiometric_residual, verify_conservation, Target};
use crnkit::rational::int;
use crnkit::{
    induced_kinetic_ode, kinetic_conservation, parse_network, stoichiometric_conservation, ConservationVector, Mode,
    ParameterBinding, Rational,
};

const NETWORK: &str = "# species: A B C D E F G H J
A + B <=>[1,1] C
C ->[1] D + E
D + E <=>[1,1] F
A + B ->[1] G
G ->[1] H
H <=>[1,1] 2J
2J ->[1] G
";

fn show(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn main() -> anyhow::Result<()> {
    let net = parse_network(NETWORK)?;
    let ode = induced_kinetic_ode(&net, &ParameterBinding::new())?;
    println!("induced ODE:\n{}", ode.to_text());

    match stoichiometric_conservation(&net) {
        Some(w) => println!("stoichiometrically conserving: ({})", show(w.rho())),
        None => println!("no positive rho with rho^T gamma = 0"),
    }
    match kinetic_conservation(&ode) {
        Some(w) => println!("kinetically conserving, witness ({})", show(w.rho())),
        None => println!("no positive rho with rho^T f = 0"),
    }

    let rho: Vec<Rational> = [1, 2, 4, 1, 4, 5, 2, 2, 1].into_iter().map(int).collect();
    let w = ConservationVector::new(rho.clone(), Mode::Kinetic)?;
    println!("rho = ({}) conserves the ODE: {}", show(&rho), verify_conservation(&w, Target::System(&ode))?);
    println!("rho^T gamma = ({})", show(&stoichiometric_residual(&rho, &net)));
    Ok(())
}
