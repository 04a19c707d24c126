//! Induced mass-action ODEs, the negative cross-effect test, canonical
//! realization of kinetic polynomial systems as networks, and divergence based
//! certificates.

use num::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lp::{Feasibility, Relation};
use crate::network::{
    is_valid_species_name, BindingError, Complex, ParameterBinding, Rate, ReactionNetwork, ReactionStep,
};
use crate::poly::{Monomial, Polynomial, PolynomialSystem};
use crate::qfi::{is_first_integral, QuadraticCandidate};
use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KineticsError {
    #[error(transparent)]
    Binding(#[from] BindingError),
    #[error("rate of step {step} evaluates to {value}, expected a positive number")]
    NonPositiveRate { step: usize, value: String },
    #[error("system contains negative cross-effect ({} offending terms)", .0.violations.len())]
    NotKinetic(CrossEffectReport),
}

/// Variable names for the induced ODE: lowercase species names when that
/// keeps them distinct, the species names otherwise.
pub fn variable_names_for(species: &[String]) -> Vec<String> {
    let lower: Vec<String> = species.iter().map(|s| s.to_lowercase()).collect();
    let distinct = lower.iter().enumerate().all(|(i, n)| !lower[..i].contains(n));
    if distinct {
        lower
    } else {
        species.to_vec()
    }
}

/// Species names for a realization: uppercase variable names when valid and
/// distinct, `X1..XM` otherwise.
pub fn species_names_for(variables: &[String]) -> Vec<String> {
    let upper: Vec<String> = variables.iter().map(|s| s.to_uppercase()).collect();
    let ok = upper.iter().all(|n| is_valid_species_name(n))
        && upper.iter().enumerate().all(|(i, n)| !upper[..i].contains(n));
    if ok {
        upper
    } else {
        (1..=variables.len()).map(|i| format!("X{i}")).collect()
    }
}

/// `f_m = Σ_r (β − α)(m, r) k_r x^{α(·, r)}` for every species `m`.
pub fn induced_kinetic_ode(
    net: &ReactionNetwork,
    params: &ParameterBinding,
) -> Result<PolynomialSystem, KineticsError> {
    let dim = net.num_species();
    let mut components = vec![Polynomial::zero(dim); dim];
    for (r, step) in net.steps().iter().enumerate() {
        let k = step.rate.bind(params)?;
        if !k.is_positive() {
            return Err(KineticsError::NonPositiveRate { step: r + 1, value: format_rational(&k) });
        }
        let mut exps = vec![0u32; dim];
        for (s, c) in step.reactant.iter() {
            // integrality is a network invariant
            exps[s] = c.to_integer().to_u32().expect("reactant coefficient fits in u32");
        }
        let monomial = Monomial::new(exps);
        for (m, comp) in components.iter_mut().enumerate() {
            let change = step.product.coeff(m) - step.reactant.coeff(m);
            if !change.is_zero() {
                comp.add_term(monomial.clone(), change * &k);
            }
        }
    }
    Ok(PolynomialSystem::new(variable_names_for(net.species()), components)
        .expect("component count matches species count"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub component: usize,
    pub variable: String,
    #[serde(serialize_with = "ser_monomial")]
    pub monomial: Monomial,
    #[serde(serialize_with = "crate::rational::serde_rational::serialize")]
    pub coefficient: Rational,
    #[serde(skip)]
    rendered: String,
}

fn ser_monomial<S: serde::Serializer>(m: &Monomial, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(m.exponents(), s)
}

impl Violation {
    /// The offending monomial rendered with the system's variable names.
    pub fn monomial_text(&self) -> &str {
        &self.rendered
    }
}

/// Result of the negative cross-effect test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossEffectReport {
    pub is_kinetic: bool,
    pub violations: Vec<Violation>,
}

impl CrossEffectReport {
    pub fn to_json(&self) -> serde_json::Value {
        let violations: Vec<serde_json::Value> = self
            .violations
            .iter()
            .map(|v| {
                serde_json::json!({
                    "component": v.component,
                    "variable": v.variable,
                    "monomial": v.rendered,
                    "exponents": v.monomial.exponents(),
                    "coefficient": format_rational(&v.coefficient),
                })
            })
            .collect();
        serde_json::json!({ "is_kinetic": self.is_kinetic, "violations": violations })
    }
}

/// A term of `f_m` with a negative coefficient whose monomial does not contain
/// `x_m` is a negative cross-effect. Kinetic systems have none.
pub fn negative_cross_effect(sys: &PolynomialSystem) -> CrossEffectReport {
    let mut violations = Vec::new();
    for (m, f) in sys.components().iter().enumerate() {
        for (mono, c) in f.terms().rev() {
            if c.is_negative() && mono.exponent(m) == 0 {
                violations.push(Violation {
                    component: m,
                    variable: sys.names()[m].clone(),
                    monomial: mono.clone(),
                    coefficient: c.clone(),
                    rendered: mono.render(sys.names()),
                });
            }
        }
    }
    CrossEffectReport { is_kinetic: violations.is_empty(), violations }
}

pub fn is_kinetic(sys: &PolynomialSystem) -> bool {
    sys.components()
        .iter()
        .enumerate()
        .all(|(m, f)| f.terms().all(|(mono, c)| !c.is_negative() || mono.exponent(m) > 0))
}

/// Point `c` with `c_m = 0`, all other coordinates `>= 0` and `f_m(c) < 0`,
/// built from the support of the offending `monomial`.
///
/// Succeeds whenever the monomial is a vertex of the Newton polytope of `f_m`
/// restricted to `x_m = 0` and to the coordinates in its support: a weight `w`
/// that strictly favors it is found by exact linear feasibility, and `x = t^w`
/// is pushed out until the monomial's term dominates.
pub fn cross_effect_witness(sys: &PolynomialSystem, m: usize, monomial: &Monomial) -> Option<Vec<Rational>> {
    let f = sys.component(m);
    let coeff = f.coeff(monomial);
    if !coeff.is_negative() || monomial.exponent(m) != 0 {
        return None;
    }
    let dim = sys.dim();
    let support = monomial.support();
    let in_support = |e: &Monomial| (0..dim).all(|i| e.exponent(i) == 0 || support.contains(&i));
    let others: Vec<&Monomial> = f
        .terms()
        .map(|(e, _)| e)
        .filter(|e| *e != monomial && e.exponent(m) == 0 && in_support(e))
        .collect();

    let mut lp = Feasibility::free_vars(support.len());
    for other in &others {
        let row: Vec<Rational> = support
            .iter()
            .map(|&i| int(monomial.exponent(i) as i64 - other.exponent(i) as i64))
            .collect();
        lp.add(row, Relation::Ge, Rational::one());
    }
    let weights = lp.solve()?;
    // Integer weights keep t^w rational.
    let lcm = weights
        .iter()
        .fold(num::BigInt::one(), |acc, w| num::Integer::lcm(&acc, w.denom()));
    let weights: Vec<i64> = weights
        .iter()
        .map(|w| (w * Rational::from_integer(lcm.clone())).to_integer().to_i64().unwrap_or(1))
        .collect();

    let mut t = int(2);
    for _ in 0..64 {
        let mut point = vec![Rational::zero(); dim];
        for (&i, &w) in support.iter().zip(&weights) {
            point[i] = num::pow::Pow::pow(&t, w as i32);
        }
        if f.eval(&point).ok()?.is_negative() {
            return Some(point);
        }
        t = &t * &t;
    }
    None
}

/// Network realizing a kinetic system, plus whether it satisfies the
/// "every species takes part in a step" condition (the zero system does not).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub network: ReactionNetwork,
    pub is_valid: bool,
}

/// Term-by-term realization: `c x^a` in `f_m` becomes `aX -> aX + X_m` with
/// rate `c` if `c > 0`, and `aX -> aX - X_m` with rate `-c` otherwise. Steps
/// are ordered by component, then by descending graded-lex monomial.
pub fn canonical_realization(sys: &PolynomialSystem) -> Result<Realization, KineticsError> {
    let report = negative_cross_effect(sys);
    if !report.is_kinetic {
        return Err(KineticsError::NotKinetic(report));
    }
    let species = species_names_for(sys.names());
    let mut steps = Vec::new();
    for (m, f) in sys.components().iter().enumerate() {
        for (mono, c) in f.terms().rev() {
            let reactant = Complex::from_pairs(
                mono.exponents()
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| (i, int(e as i64))),
            );
            let delta = if c.is_positive() { int(1) } else { int(-1) };
            let product = Complex::from_pairs(
                mono.exponents()
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| (i, if i == m { int(e as i64) + &delta } else { int(e as i64) })),
            );
            steps.push(ReactionStep { reactant, product, rate: Rate::value(c.abs()) });
        }
    }
    let network = ReactionNetwork::new(species, steps).expect("canonical steps are distinct and nontrivial");
    let is_valid = network.unused_species().is_empty();
    Ok(Realization { network, is_valid })
}

/// `Σ_m ∂f_m/∂x_m`.
pub fn divergence(sys: &PolynomialSystem) -> Polynomial {
    let mut acc = Polynomial::zero(sys.dim());
    for (m, f) in sys.components().iter().enumerate() {
        acc = &acc + &f.partial_derivative(m).expect("index within dimension");
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    Inconclusive,
}

/// Sufficient test for the absence of periodic orbits in the open first
/// orthant: negative divergence there together with a first integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicOrbitCertificate {
    #[serde(skip)]
    pub divergence: Polynomial,
    pub divergence_text: String,
    pub divergence_negative: bool,
    pub first_integral_verified: bool,
    pub verdict: Verdict,
}

pub fn no_periodic_orbit_certificate(
    sys: &PolynomialSystem,
    first_integral: Option<&QuadraticCandidate>,
) -> PeriodicOrbitCertificate {
    let div = divergence(sys);
    let divergence_negative = !div.is_zero() && div.terms().all(|(_, c)| !c.is_positive());
    let first_integral_verified = first_integral
        .map(|v| is_first_integral(v, sys).unwrap_or(false))
        .unwrap_or(false);
    let verdict = if divergence_negative && first_integral_verified {
        Verdict::Yes
    } else {
        Verdict::Inconclusive
    };
    PeriodicOrbitCertificate {
        divergence_text: div.render(sys.names()),
        divergence: div,
        divergence_negative,
        first_integral_verified,
        verdict,
    }
}
