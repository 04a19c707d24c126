//! Reaction networks: complexes, steps with mass-action rate coefficients, the
//! text DSL, the JSON exchange format and the stoichiometric matrices.

mod json;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{zeros, Matrix};
use crate::rational::{format_rational, parse_rational, Rational};

pub use parse::parse_network;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: negative stoichiometric coefficient")]
    NegativeCoefficient { line: usize, column: usize },
    #[error("line {line}, column {column}: rate literal must be positive")]
    ZeroRate { line: usize, column: usize },
    #[error("step {step}: reactant coefficient of `{species}` must be a nonnegative integer")]
    FractionalReactant { step: usize, species: String },
    #[error("step {step}: reactant and product complexes are identical")]
    TrivialStep { step: usize },
    #[error("species index {0} out of range")]
    UnknownSpecies(usize),
    #[error("species `{0}` takes part in no reaction step")]
    UnusedSpecies(String),
    #[error("invalid species name `{0}`")]
    InvalidSpeciesName(String),
    #[error("duplicate species `{0}`")]
    DuplicateSpecies(String),
    #[error("invalid network JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BindingError {
    #[error("parameter `{0}` must be positive")]
    NonPositive(String),
    #[error("malformed binding `{0}` (expected name=value)")]
    Malformed(String),
    #[error("unbound rate parameter `{0}`")]
    Unbound(String),
}

/// Letter followed by letters, digits or underscores.
pub fn is_valid_species_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_alphabetic())
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Formal nonnegative combination of species, keyed by species index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Complex(BTreeMap<usize, Rational>);

impl Complex {
    pub fn empty() -> Self {
        Complex(BTreeMap::new())
    }

    /// Drops zero entries; panics on a negative coefficient.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (s, c) in pairs {
            assert!(!c.is_negative(), "complex coefficients are nonnegative");
            let slot: &mut Rational = map.entry(s).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        Complex(map)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, species: usize) -> Rational {
        self.0.get(&species).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(&s, c)| (s, c))
    }

    pub fn is_integral(&self) -> bool {
        self.0.values().all(|c| c.is_integer())
    }

    pub fn render(&self, species: &[String]) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        self.0
            .iter()
            .map(|(&s, c)| {
                if c.is_one() {
                    species[s].clone()
                } else if c.is_integer() {
                    format!("{}{}", c, species[s])
                } else {
                    format!("{} {}", format_rational(c), species[s])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Rate coefficient: a sum of named parameters and a rational constant.
/// Merged duplicate steps carry the sum of their rates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rate {
    symbols: Vec<String>,
    constant: Rational,
}

impl Rate {
    pub fn symbol(name: impl Into<String>) -> Self {
        Rate { symbols: vec![name.into()], constant: Rational::zero() }
    }

    /// Panics unless `value > 0`.
    pub fn value(value: Rational) -> Self {
        assert!(value.is_positive(), "rate constants are positive");
        Rate { symbols: Vec::new(), constant: value }
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn sum(&self, other: &Rate) -> Rate {
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().cloned());
        Rate { symbols, constant: &self.constant + &other.constant }
    }

    /// Numeric value under `binding`.
    pub fn bind(&self, binding: &ParameterBinding) -> Result<Rational, BindingError> {
        let mut total = self.constant.clone();
        for s in &self.symbols {
            total += binding.get(s).ok_or_else(|| BindingError::Unbound(s.clone()))?;
        }
        Ok(total)
    }

    /// Parses `a`, `2/3`, `0.5` or a `+`-joined sum of those.
    pub fn parse(text: &str) -> Result<Rate, String> {
        let mut symbols = Vec::new();
        let mut constant = Rational::zero();
        for part in text.split('+') {
            let part = part.trim();
            if is_valid_species_name(part) {
                symbols.push(part.to_string());
            } else {
                let v = parse_rational(part).map_err(|e| e.to_string())?;
                if !v.is_positive() {
                    return Err(format!("rate `{part}` is not positive"));
                }
                constant += v;
            }
        }
        Ok(Rate { symbols, constant })
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = self.symbols.clone();
        if !self.constant.is_zero() {
            parts.push(format_rational(&self.constant));
        }
        f.write_str(&parts.join("+"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionStep {
    pub reactant: Complex,
    pub product: Complex,
    pub rate: Rate,
}

/// Positive values for symbolic rate parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParameterBinding(BTreeMap<String, Rational>);

impl ParameterBinding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: Rational) -> Result<&mut Self, BindingError> {
        let name = name.into();
        if !value.is_positive() {
            return Err(BindingError::NonPositive(name));
        }
        self.0.insert(name, value);
        Ok(self)
    }

    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self, BindingError>
    where
        I: IntoIterator<Item = (&'a str, Rational)>,
    {
        let mut b = Self::new();
        for (n, v) in pairs {
            b.set(n, v)?;
        }
        Ok(b)
    }

    /// Parses `name=value` items such as `a=2`, `k1=1/3`.
    pub fn parse_assignments<S: AsRef<str>>(items: &[S]) -> Result<Self, BindingError> {
        let mut b = Self::new();
        for item in items {
            let item = item.as_ref();
            let (n, v) = item
                .split_once('=')
                .ok_or_else(|| BindingError::Malformed(item.to_string()))?;
            let value = parse_rational(v).map_err(|_| BindingError::Malformed(item.to_string()))?;
            b.set(n.trim(), value)?;
        }
        Ok(b)
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }
}

/// The matrices α (reactant), β (product) and γ = β − α, species by steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoichiometricMatrices {
    pub alpha: Matrix,
    pub beta: Matrix,
    pub gamma: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionNetwork {
    species: Vec<String>,
    steps: Vec<ReactionStep>,
}

impl ReactionNetwork {
    /// Validates steps and merges duplicates (same reactant and product) by
    /// summing their rates. Species that take part in no step are allowed
    /// here; see [`ReactionNetwork::validate`].
    pub fn new(species: Vec<String>, steps: Vec<ReactionStep>) -> Result<Self, NetworkError> {
        for (i, s) in species.iter().enumerate() {
            if !is_valid_species_name(s) {
                return Err(NetworkError::InvalidSpeciesName(s.clone()));
            }
            if species[..i].contains(s) {
                return Err(NetworkError::DuplicateSpecies(s.clone()));
            }
        }
        let mut merged: Vec<ReactionStep> = Vec::with_capacity(steps.len());
        for (idx, step) in steps.into_iter().enumerate() {
            for (s, c) in step.reactant.iter().chain(step.product.iter()) {
                if s >= species.len() {
                    return Err(NetworkError::UnknownSpecies(s));
                }
                debug_assert!(!c.is_negative());
            }
            if let Some((s, _)) = step.reactant.iter().find(|(_, c)| !c.is_integer()) {
                return Err(NetworkError::FractionalReactant { step: idx + 1, species: species[s].clone() });
            }
            if step.reactant == step.product {
                return Err(NetworkError::TrivialStep { step: idx + 1 });
            }
            if let Some(existing) = merged
                .iter_mut()
                .find(|e| e.reactant == step.reactant && e.product == step.product)
            {
                log::warn!(
                    "merging duplicate step {} -> {}",
                    step.reactant.render(&species),
                    step.product.render(&species)
                );
                existing.rate = existing.rate.sum(&step.rate);
            } else {
                merged.push(step);
            }
        }
        Ok(ReactionNetwork { species, steps: merged })
    }

    /// Species that appear in no step.
    pub fn unused_species(&self) -> Vec<&str> {
        (0..self.species.len())
            .filter(|&s| {
                !self
                    .steps
                    .iter()
                    .any(|st| !st.reactant.coeff(s).is_zero() || !st.product.coeff(s).is_zero())
            })
            .map(|s| self.species[s].as_str())
            .collect()
    }

    /// Every species takes part in some step.
    pub fn validate(&self) -> Result<(), NetworkError> {
        match self.unused_species().first() {
            Some(s) => Err(NetworkError::UnusedSpecies(s.to_string())),
            None => Ok(()),
        }
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn steps(&self) -> &[ReactionStep] {
        &self.steps
    }

    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s == name)
    }

    /// Parameter names referenced by rates, in first-use order.
    pub fn parameters(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for st in &self.steps {
            for s in st.rate.symbols() {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn stoichiometric_matrices(&self) -> StoichiometricMatrices {
        let m = self.species.len();
        let r = self.steps.len();
        let mut alpha = zeros(m, r);
        let mut beta = zeros(m, r);
        let mut gamma = zeros(m, r);
        for (j, st) in self.steps.iter().enumerate() {
            for (s, c) in st.reactant.iter() {
                alpha[s][j] = c.clone();
            }
            for (s, c) in st.product.iter() {
                beta[s][j] = c.clone();
            }
        }
        for i in 0..m {
            for j in 0..r {
                gamma[i][j] = &beta[i][j] - &alpha[i][j];
            }
        }
        StoichiometricMatrices { alpha, beta, gamma }
    }

    /// Canonical DSL text: a species pragma, then one step per line.
    pub fn render(&self) -> String {
        let mut out = format!("# species: {}\n", self.species.join(" "));
        for st in &self.steps {
            out.push_str(&format!(
                "{} ->[{}] {}\n",
                st.reactant.render(&self.species),
                st.rate,
                st.product.render(&self.species)
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json::to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, NetworkError> {
        json::from_json(text)
    }
}
