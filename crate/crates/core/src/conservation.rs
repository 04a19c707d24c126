//! Stoichiometric and kinetic mass conservation with strictly positive exact
//! witnesses.
//!
//! Both decisions follow the same route: an exact rational basis of the
//! relevant null space, then phase-1 simplex for a combination whose entries
//! are all at least one.

use num::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{null_space, transpose, vec_mat};
use crate::lp::positive_combination;
use crate::network::ReactionNetwork;
use crate::poly::{Monomial, Polynomial, PolynomialSystem};
use crate::rational::{format_rational, normalize_integer_direction, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConservationError {
    #[error("witness has {found} entries, target has {expected} species")]
    DimensionMismatch { found: usize, expected: usize },
    #[error("witness entries must be strictly positive")]
    NotPositive,
    #[error("{0:?} conservation cannot be checked against this target")]
    ModeMismatch(Mode),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `ρᵀγ = 0`
    Stoichiometric,
    /// `ρᵀf ≡ 0`
    Kinetic,
}

/// Strictly positive weights `ρ` together with the identity they satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConservationVector {
    #[serde(with = "crate::rational::serde_rational::vec")]
    rho: Vec<Rational>,
    mode: Mode,
}

impl ConservationVector {
    pub fn new(rho: Vec<Rational>, mode: Mode) -> Result<Self, ConservationError> {
        if rho.iter().any(|v| *v <= Rational::zero()) {
            return Err(ConservationError::NotPositive);
        }
        Ok(ConservationVector { rho, mode })
    }

    pub fn rho(&self) -> &[Rational] {
        &self.rho
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Positive multiple of the witness.
    pub fn scaled(&self, q: &Rational) -> Result<Self, ConservationError> {
        Self::new(self.rho.iter().map(|v| v * q).collect(), self.mode)
    }
}

pub enum Target<'a> {
    Network(&'a ReactionNetwork),
    System(&'a PolynomialSystem),
}

/// Positive `ρ` in the left null space of γ, normalized to coprime integers.
pub fn stoichiometric_conservation(net: &ReactionNetwork) -> Option<ConservationVector> {
    let m = net.num_species();
    let gamma = net.stoichiometric_matrices().gamma;
    let gamma_t = transpose(&gamma, net.steps().len());
    let basis = null_space(&gamma_t, m);
    witness(&basis, m, Mode::Stoichiometric)
}

/// Rows indexed by monomials, columns by components: `Σ_m ρ_m coeff(f_m)`.
fn coefficient_matrix(sys: &PolynomialSystem) -> Vec<Vec<Rational>> {
    let mut monomials: Vec<&Monomial> = sys
        .components()
        .iter()
        .flat_map(|f| f.terms().map(|(mono, _)| mono))
        .collect();
    monomials.sort();
    monomials.dedup();
    monomials
        .iter()
        .map(|mono| sys.components().iter().map(|f| f.coeff(mono)).collect())
        .collect()
}

/// Positive `ρ` with `Σ ρ_m f_m` the zero polynomial.
pub fn kinetic_conservation(sys: &PolynomialSystem) -> Option<ConservationVector> {
    let m = sys.dim();
    let basis = null_space(&coefficient_matrix(sys), m);
    witness(&basis, m, Mode::Kinetic)
}

fn witness(basis: &[Vec<Rational>], len: usize, mode: Mode) -> Option<ConservationVector> {
    let rho = positive_combination(basis, len)?;
    let rho = normalize_integer_direction(&rho);
    Some(ConservationVector::new(rho, mode).expect("simplex returns entries >= 1"))
}

/// `ρᵀγ`, one entry per step.
pub fn stoichiometric_residual(rho: &[Rational], net: &ReactionNetwork) -> Vec<Rational> {
    vec_mat(rho, &net.stoichiometric_matrices().gamma, net.steps().len())
}

/// `Σ ρ_m f_m`.
pub fn kinetic_residual(rho: &[Rational], sys: &PolynomialSystem) -> Polynomial {
    sys.components()
        .iter()
        .zip(rho)
        .fold(Polynomial::zero(sys.dim()), |acc, (f, r)| &acc + &f.scale(r))
}

/// Exact check of the identity belonging to the candidate's mode.
pub fn verify_conservation(candidate: &ConservationVector, target: Target<'_>) -> Result<bool, ConservationError> {
    match (candidate.mode, target) {
        (Mode::Stoichiometric, Target::Network(net)) => {
            check_len(candidate, net.num_species())?;
            Ok(stoichiometric_residual(&candidate.rho, net).iter().all(Zero::is_zero))
        }
        (Mode::Kinetic, Target::System(sys)) => {
            check_len(candidate, sys.dim())?;
            Ok(kinetic_residual(&candidate.rho, sys).is_zero())
        }
        (mode, _) => Err(ConservationError::ModeMismatch(mode)),
    }
}

fn check_len(c: &ConservationVector, expected: usize) -> Result<(), ConservationError> {
    if c.rho.len() != expected {
        return Err(ConservationError::DimensionMismatch { found: c.rho.len(), expected });
    }
    Ok(())
}

/// `{mode, exists, witness?, residual?}`; the residual is reported for a
/// supplied candidate that fails.
#[derive(Debug, Clone, Serialize)]
pub struct ConservationReport {
    pub mode: Mode,
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<String>>,
}

impl ConservationReport {
    pub fn found(mode: Mode, witness: Option<&ConservationVector>) -> Self {
        ConservationReport {
            mode,
            exists: witness.is_some(),
            witness: witness.map(|w| w.rho.iter().map(format_rational).collect()),
            residual: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::parse_network;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn association_conserves_with_weights_one_one_two() {
        let net = parse_network("X + Y <=>[1,1] Z").unwrap();
        let w = stoichiometric_conservation(&net).unwrap();
        assert_eq!(w.rho(), ints(&[1, 1, 2]).as_slice());
        assert!(verify_conservation(&w, Target::Network(&net)).unwrap());
    }

    #[test]
    fn autocatalysis_does_not_conserve() {
        let net = parse_network("X ->[1] 2X").unwrap();
        assert!(stoichiometric_conservation(&net).is_none());
    }

    #[test]
    fn kinetic_conservation_small_cases() {
        let s = PolynomialSystem::parse(&["x", "y"], &["y - x", "x - y"]).unwrap();
        assert_eq!(kinetic_conservation(&s).unwrap().rho(), ints(&[1, 1]).as_slice());
        let s = PolynomialSystem::parse(&["x"], &["x"]).unwrap();
        assert!(kinetic_conservation(&s).is_none());
        let zero = PolynomialSystem::zero(vec!["x".into(), "y".into()]);
        let w = ConservationVector::new(ints(&[1, 1]), Mode::Kinetic).unwrap();
        assert!(verify_conservation(&w, Target::System(&zero)).unwrap());
    }

    #[test]
    fn rejects_bad_candidates() {
        assert_eq!(ConservationVector::new(ints(&[1, 0]), Mode::Kinetic), Err(ConservationError::NotPositive));
        let net = parse_network("X ->[1] Y").unwrap();
        let w = ConservationVector::new(ints(&[1, 1, 1]), Mode::Stoichiometric).unwrap();
        assert!(matches!(
            verify_conservation(&w, Target::Network(&net)),
            Err(ConservationError::DimensionMismatch { .. })
        ));
        let k = ConservationVector::new(ints(&[1, 1]), Mode::Kinetic).unwrap();
        assert!(matches!(verify_conservation(&k, Target::Network(&net)), Err(ConservationError::ModeMismatch(_))));
    }

    #[test]
    fn scaling_preserves_witnesses() {
        let net = parse_network("X + Y <=>[1,1] Z").unwrap();
        let w = stoichiometric_conservation(&net).unwrap();
        let s = w.scaled(&crate::rational::frac(7, 3)).unwrap();
        assert!(verify_conservation(&s, Target::Network(&net)).unwrap());
    }
}
