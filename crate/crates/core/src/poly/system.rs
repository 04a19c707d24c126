use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{parse_polynomial, ExprParseError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("system needs at least one variable")]
    Empty,
    #[error("{components} components for {variables} variables")]
    ComponentCount { components: usize, variables: usize },
    #[error("component {index} has dimension {found}, expected {expected}")]
    ComponentDimension { index: usize, found: usize, expected: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Expr { line: usize, source: ExprParseError },
    #[error("invalid system JSON: {0}")]
    Json(String),
}

/// `x1`, `x2`, ... for `dim` variables.
pub fn default_variable_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("x{i}")).collect()
}

/// Right-hand side of `x' = f(x)`: one polynomial per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSystem {
    names: Vec<String>,
    components: Vec<Polynomial>,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    variables: Vec<String>,
    equations: Vec<String>,
}

impl PolynomialSystem {
    pub fn new(names: Vec<String>, components: Vec<Polynomial>) -> Result<Self, SystemError> {
        if names.is_empty() {
            return Err(SystemError::Empty);
        }
        if components.len() != names.len() {
            return Err(SystemError::ComponentCount {
                components: components.len(),
                variables: names.len(),
            });
        }
        for (index, c) in components.iter().enumerate() {
            if c.dim() != names.len() {
                return Err(SystemError::ComponentDimension {
                    index,
                    found: c.dim(),
                    expected: names.len(),
                });
            }
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(SystemError::DuplicateName(n.clone()));
            }
        }
        Ok(PolynomialSystem { names, components })
    }

    /// System with default variable names `x1..xM`.
    pub fn from_components(components: Vec<Polynomial>) -> Result<Self, SystemError> {
        let dim = components.first().map(Polynomial::dim).unwrap_or(0);
        Self::new(default_variable_names(dim), components)
    }

    pub fn zero(names: Vec<String>) -> Self {
        let dim = names.len();
        let components = vec![Polynomial::zero(dim); dim];
        PolynomialSystem { names, components }
    }

    /// Parses expressions against the given variable names.
    pub fn parse(names: &[&str], equations: &[&str]) -> Result<Self, SystemError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let components = equations
            .iter()
            .enumerate()
            .map(|(i, e)| {
                parse_polynomial(e, &names).map_err(|source| SystemError::Expr { line: i + 1, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(names, components)
    }

    /// Parses the line format `x' = y - x`, one equation per line. Blank lines
    /// and `#` comments are ignored; variables are ordered by line.
    pub fn parse_text(text: &str) -> Result<Self, SystemError> {
        let mut names = Vec::new();
        let mut rhs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((lhs, expr)) = line.split_once('=') else {
                return Err(SystemError::Syntax { line: idx + 1, message: "expected `name' = expression`".into() });
            };
            let Some(name) = lhs.trim().strip_suffix('\'') else {
                return Err(SystemError::Syntax { line: idx + 1, message: "left side must be `name'`".into() });
            };
            let name = name.trim();
            if name.is_empty() || !name.chars().next().is_some_and(char::is_alphabetic) {
                return Err(SystemError::Syntax { line: idx + 1, message: format!("bad variable name `{name}`") });
            }
            names.push(name.to_string());
            rhs.push((idx + 1, expr.trim().to_string()));
        }
        let components = rhs
            .iter()
            .map(|(line, e)| {
                parse_polynomial(e, &names).map_err(|source| SystemError::Expr { line: *line, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(names, components)
    }

    pub fn to_text(&self) -> String {
        self.names
            .iter()
            .zip(&self.components)
            .map(|(n, c)| format!("{n}' = {}\n", c.render(&self.names)))
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self, SystemError> {
        let raw: SystemJson = serde_json::from_str(text).map_err(|e| SystemError::Json(e.to_string()))?;
        let names: Vec<&str> = raw.variables.iter().map(String::as_str).collect();
        let eqs: Vec<&str> = raw.equations.iter().map(String::as_str).collect();
        Self::parse(&names, &eqs)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(SystemJson {
            variables: self.names.clone(),
            equations: self.components.iter().map(|c| c.render(&self.names)).collect(),
        })
        .expect("system serializes")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, m: usize) -> &Polynomial {
        &self.components[m]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::degree).max()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, SystemError> {
        if names.len() != self.dim() {
            return Err(SystemError::ComponentCount { components: self.dim(), variables: names.len() });
        }
        self.names = names;
        Self::new(self.names, self.components)
    }

    /// Same vector field, ignoring variable names.
    pub fn same_field(&self, other: &PolynomialSystem) -> bool {
        self.components == other.components
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }
}

impl fmt::Display for PolynomialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.render(&self.names)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
