//! Mass-action ODE of a small network, and the canonical network realizing it.

use crnkit::rational::int;
use crnkit::{canonical_realization, induced_kinetic_ode, parse_network, ParameterBinding};

fn main() -> anyhow::Result<()> {
    let net = parse_network("X <-[a] X + Y ->[b] Y\n2X ->[b] 2X + Y\n2Y ->[a] X + 2Y")?;
    println!("network:\n{}", net.render());

    let binding = ParameterBinding::from_pairs([("a", int(2)), ("b", int(3))])?;
    let ode = induced_kinetic_ode(&net, &binding)?;
    println!("induced ODE with a = 2, b = 3:\n{}", ode.to_text());

    let real = canonical_realization(&ode)?;
    println!("canonical realization:\n{}", real.network.render());
    let back = induced_kinetic_ode(&real.network, &ParameterBinding::new())?;
    println!("realization induces the same field: {}", back.same_field(&ode));
    Ok(())
}
