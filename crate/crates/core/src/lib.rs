//! Exact analysis of chemical reaction networks under mass-action kinetics.
//!
//! Networks are parsed from a small text language into polynomial ODEs with
//! rational coefficients, on which kinetic form, mass conservation and
//! quadratic first integrals are decided exactly. Generators build kinetic
//! systems with a prescribed quadratic first integral; a floating-point
//! integrator monitors its drift along trajectories.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod conservation;
pub mod kinetics;
pub mod linalg;
pub mod lp;
pub mod network;
pub mod poly;
pub mod qfi;
pub mod rational;
pub mod sim;

pub use conservation::{kinetic_conservation, stoichiometric_conservation, ConservationVector, Mode};
pub use kinetics::{canonical_realization, induced_kinetic_ode, is_kinetic, negative_cross_effect};
pub use network::{parse_network, ParameterBinding, ReactionNetwork};
pub use poly::{Monomial, Polynomial, PolynomialSystem};
pub use qfi::{find_quadratic_first_integrals, is_first_integral, QuadraticCandidate, SignatureFilter};
pub use rational::Rational;
