//! Quadratic first integrals: Lie derivatives, exact search by coefficient
//! matching, signature classification, generators for the known families and
//! the nonexistence checks.
//!
//! Lie derivatives are `∇V · f` without a `1/2` factor; scaling does not affect
//! whether they vanish.

mod checks;
mod families;
mod signature;

use num::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{combine, null_space};
use crate::lp::{Feasibility, Relation};
use crate::poly::{Monomial, PolyError, Polynomial, PolynomialSystem};
use crate::rational::{format_rational, int, normalize_integer_direction, Rational};

pub use checks::{
    check_theorem4_nonexistence, equilibria_on_line_check, lotka_volterra_log_check, solve_log_family,
    StationaryLocus, StationarySet, Theorem4Verdict,
};
pub use families::{
    generate_binary_form_system, generate_diagonal_system, generate_mixed_sign_system, generate_shifted_system,
    BinaryFamily, BinaryFormParams, DiagonalParams, GeneratedSystem, MixedSignParams,
};
pub use signature::{inertia, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QfiError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("matrix of the quadratic form is not symmetric")]
    NotSymmetric,
    #[error("polynomial of degree {0} is not quadratic")]
    NotQuadratic(u32),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("generated system failed verification: {0}")]
    VerificationFailed(String),
    #[error("operation needs a two-dimensional system, got {0}")]
    NotPlanar(usize),
    #[error("operation needs the {expected} family")]
    WrongFamily { expected: &'static str },
}

/// `V(x) = xᵀQx + linearᵀx + constant` with symmetric `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCandidate {
    q: Vec<Vec<Rational>>,
    linear: Vec<Rational>,
    constant: Rational,
}

impl QuadraticCandidate {
    pub fn new(q: Vec<Vec<Rational>>, linear: Vec<Rational>, constant: Rational) -> Result<Self, QfiError> {
        let dim = linear.len();
        if q.len() != dim || q.iter().any(|r| r.len() != dim) {
            return Err(PolyError::DimensionMismatch { left: q.len(), right: dim }.into());
        }
        for i in 0..dim {
            for j in 0..i {
                if q[i][j] != q[j][i] {
                    return Err(QfiError::NotSymmetric);
                }
            }
        }
        Ok(QuadraticCandidate { q, linear, constant })
    }

    /// `Σ a_m x_m²`.
    pub fn diagonal(a: &[Rational]) -> Self {
        let dim = a.len();
        let mut q = vec![vec![Rational::zero(); dim]; dim];
        for (i, v) in a.iter().enumerate() {
            q[i][i] = v.clone();
        }
        QuadraticCandidate { q, linear: vec![Rational::zero(); dim], constant: Rational::zero() }
    }

    /// Binary form `a x² + 2b xy + c y²`.
    pub fn binary(a: Rational, b: Rational, c: Rational) -> Self {
        QuadraticCandidate {
            q: vec![vec![a, b.clone()], vec![b, c]],
            linear: vec![Rational::zero(); 2],
            constant: Rational::zero(),
        }
    }

    /// Reads the coefficients of a polynomial of degree at most two.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self, QfiError> {
        let dim = p.dim();
        let mut q = vec![vec![Rational::zero(); dim]; dim];
        let mut linear = vec![Rational::zero(); dim];
        let mut constant = Rational::zero();
        for (m, c) in p.terms() {
            match m.degree() {
                0 => constant = c.clone(),
                1 => linear[m.support()[0]] = c.clone(),
                2 => {
                    let s = m.support();
                    if s.len() == 1 {
                        q[s[0]][s[0]] = c.clone();
                    } else {
                        let half = c / int(2);
                        q[s[0]][s[1]] = half.clone();
                        q[s[1]][s[0]] = half;
                    }
                }
                d => return Err(QfiError::NotQuadratic(d)),
            }
        }
        Ok(QuadraticCandidate { q, linear, constant })
    }

    /// Coefficient vector in unknown order (see [`quadratic_unknowns`]) plus
    /// the constant.
    fn from_unknowns(dim: usize, u: &[Rational], constant: Rational) -> Self {
        let mut q = vec![vec![Rational::zero(); dim]; dim];
        let mut linear = vec![Rational::zero(); dim];
        for (mono, v) in quadratic_unknowns(dim).iter().zip(u) {
            let s = mono.support();
            match (mono.degree(), s.len()) {
                (2, 1) => q[s[0]][s[0]] = v.clone(),
                (2, 2) => {
                    let half = v / int(2);
                    q[s[0]][s[1]] = half.clone();
                    q[s[1]][s[0]] = half;
                }
                _ => linear[s[0]] = v.clone(),
            }
        }
        QuadraticCandidate { q, linear, constant }
    }

    fn unknown_vector(&self) -> Vec<Rational> {
        quadratic_unknowns(self.dim())
            .iter()
            .map(|mono| {
                let s = mono.support();
                match (mono.degree(), s.len()) {
                    (2, 1) => self.q[s[0]][s[0]].clone(),
                    (2, 2) => &self.q[s[0]][s[1]] * int(2),
                    _ => self.linear[s[0]].clone(),
                }
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn q(&self) -> &[Vec<Rational>] {
        &self.q
    }

    pub fn linear(&self) -> &[Rational] {
        &self.linear
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let dim = self.dim();
        let mut p = Polynomial::constant(dim, self.constant.clone());
        for i in 0..dim {
            for j in 0..dim {
                let mut e = vec![0; dim];
                e[i] += 1;
                e[j] += 1;
                p.add_term(Monomial::new(e), self.q[i][j].clone());
            }
            p.add_term(Monomial::var(dim, i), self.linear[i].clone());
        }
        p
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        QuadraticCandidate {
            q: self.q.iter().map(|r| r.iter().map(|v| v * k).collect()).collect(),
            linear: self.linear.iter().map(|v| v * k).collect(),
            constant: &self.constant * k,
        }
    }

    /// Integer coefficients with gcd 1, first nonzero coefficient positive,
    /// constant dropped.
    pub fn normalized(&self) -> Self {
        let u = normalize_integer_direction(&self.unknown_vector());
        Self::from_unknowns(self.dim(), &u, Rational::zero())
    }

    pub fn is_zero_form(&self) -> bool {
        self.unknown_vector().iter().all(Zero::is_zero)
    }

    /// `(a, b, c)` of `a x² + 2b xy + c y²` for a planar candidate.
    pub fn binary_coefficients(&self) -> Option<(Rational, Rational, Rational)> {
        (self.dim() == 2).then(|| (self.q[0][0].clone(), self.q[0][1].clone(), self.q[1][1].clone()))
    }

    pub fn signature(&self) -> Signature {
        signature::classify(self)
    }

    pub fn render(&self, names: &[String]) -> String {
        self.to_polynomial().render(names)
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let q: Vec<Vec<String>> = self.q.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        serde_json::json!({
            "polynomial": self.render(names),
            "Q": q,
            "linear": self.linear.iter().map(format_rational).collect::<Vec<_>>(),
            "constant": format_rational(&self.constant),
            "signature": self.signature(),
        })
    }
}

/// Unknown monomials of a quadratic candidate in `dim` variables: `x_i x_j`
/// for `i <= j` (row by row), then `x_i`. Constants are not unknowns.
pub fn quadratic_unknowns(dim: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            let mut e = vec![0; dim];
            e[i] += 1;
            e[j] += 1;
            out.push(Monomial::new(e));
        }
    }
    for i in 0..dim {
        out.push(Monomial::var(dim, i));
    }
    out
}

/// `Σ_m ∂_m V · f_m` for an arbitrary polynomial `V`.
pub fn lie_derivative(v: &Polynomial, sys: &PolynomialSystem) -> Result<Polynomial, PolyError> {
    if v.dim() != sys.dim() {
        return Err(PolyError::DimensionMismatch { left: v.dim(), right: sys.dim() });
    }
    let mut acc = Polynomial::zero(sys.dim());
    for (m, f) in sys.components().iter().enumerate() {
        let d = v.partial_derivative(m)?;
        if !d.is_zero() {
            acc = &acc + &(&d * f);
        }
    }
    Ok(acc)
}

pub fn lie_derivative_quadratic(v: &QuadraticCandidate, sys: &PolynomialSystem) -> Result<Polynomial, QfiError> {
    Ok(lie_derivative(&v.to_polynomial(), sys)?)
}

pub fn is_first_integral(v: &QuadraticCandidate, sys: &PolynomialSystem) -> Result<bool, QfiError> {
    Ok(lie_derivative_quadratic(v, sys)?.is_zero())
}

/// Which first integrals are acceptable as the reported candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignatureFilter {
    #[default]
    Any,
    /// `Σ a_m x_m²` with every `a_m > 0`; decided exactly.
    PositiveDiagonal,
    /// Definite quadratic part; searched over small integer combinations of the
    /// basis (sound, not complete when the basis has several quadratic forms).
    Definite,
    /// Indefinite quadratic part; searched like `Definite`.
    Indefinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstIntegralReport {
    pub found: bool,
    pub filter: SignatureFilter,
    pub candidate: Option<QuadraticCandidate>,
    pub signature: Option<Signature>,
    /// Normalized basis of every quadratic `V` (constants excluded) with zero
    /// Lie derivative.
    pub witness_basis: Vec<QuadraticCandidate>,
}

impl FirstIntegralReport {
    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        serde_json::json!({
            "found": self.found,
            "filter": self.filter,
            "candidate": self.candidate.as_ref().map(|c| c.to_json(names)),
            "signature": self.signature,
            "witness_basis": self.witness_basis.iter().map(|c| c.render(names)).collect::<Vec<_>>(),
        })
    }
}

/// Exact null space of the linear map from quadratic coefficients to Lie
/// derivative coefficients, followed by the filter's feasibility pass.
pub fn find_quadratic_first_integrals(sys: &PolynomialSystem, filter: SignatureFilter) -> FirstIntegralReport {
    let dim = sys.dim();
    let unknowns = quadratic_unknowns(dim);
    let lies: Vec<Polynomial> = unknowns
        .iter()
        .map(|mono| {
            let v = Polynomial::term(dim, mono.clone(), Rational::one());
            lie_derivative(&v, sys).expect("dimensions agree")
        })
        .collect();
    let mut rows_monomials: Vec<&Monomial> = lies.iter().flat_map(|l| l.terms().map(|(m, _)| m)).collect();
    rows_monomials.sort();
    rows_monomials.dedup();
    let matrix: Vec<Vec<Rational>> = rows_monomials
        .iter()
        .map(|mono| lies.iter().map(|l| l.coeff(mono)).collect())
        .collect();
    let raw_basis = null_space(&matrix, unknowns.len());
    let witness_basis: Vec<QuadraticCandidate> = raw_basis
        .iter()
        .map(|u| QuadraticCandidate::from_unknowns(dim, u, Rational::zero()).normalized())
        .collect();

    let candidate = match filter {
        SignatureFilter::Any => witness_basis.first().cloned(),
        SignatureFilter::PositiveDiagonal => positive_diagonal(&raw_basis, &unknowns),
        SignatureFilter::Definite => search_signature(&witness_basis, |s| {
            matches!(s, Signature::PositiveDiagonal | Signature::PositiveDefinite | Signature::NegativeDefinite)
        }),
        SignatureFilter::Indefinite => search_signature(&witness_basis, |s| s == Signature::Indefinite),
    };
    FirstIntegralReport {
        found: candidate.is_some(),
        filter,
        signature: candidate.as_ref().map(QuadraticCandidate::signature),
        candidate,
        witness_basis,
    }
}

fn positive_diagonal(basis: &[Vec<Rational>], unknowns: &[Monomial]) -> Option<QuadraticCandidate> {
    if basis.is_empty() {
        return None;
    }
    let dim = unknowns[0].dim();
    let mut lp = Feasibility::free_vars(basis.len());
    for (j, mono) in unknowns.iter().enumerate() {
        let row: Vec<Rational> = basis.iter().map(|b| b[j].clone()).collect();
        if mono.degree() == 2 && mono.support().len() == 1 {
            lp.add(row, Relation::Ge, Rational::one());
        } else {
            lp.add(row, Relation::Eq, Rational::zero());
        }
    }
    let lambda = lp.solve()?;
    let u = combine(basis, &lambda, unknowns.len());
    Some(QuadraticCandidate::from_unknowns(dim, &u, Rational::zero()).normalized())
}

fn search_signature(basis: &[QuadraticCandidate], accept: impl Fn(Signature) -> bool) -> Option<QuadraticCandidate> {
    if let Some(c) = basis.iter().find(|c| accept(c.signature())) {
        return Some(c.clone());
    }
    let k = basis.len();
    if !(2..=4).contains(&k) {
        return None;
    }
    let vectors: Vec<Vec<Rational>> = basis.iter().map(QuadraticCandidate::unknown_vector).collect();
    let dim = basis[0].dim();
    let len = vectors[0].len();
    let range: Vec<i64> = (-2..=2).collect();
    let total = range.len().pow(k as u32);
    for idx in 0..total {
        let mut rest = idx;
        let coeffs: Vec<Rational> = (0..k)
            .map(|_| {
                let c = range[rest % range.len()];
                rest /= range.len();
                int(c)
            })
            .collect();
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let u = combine(&vectors, &coeffs, len);
        let cand = QuadraticCandidate::from_unknowns(dim, &u, Rational::zero()).normalized();
        if !cand.is_zero_form() && accept(cand.signature()) {
            return Some(cand);
        }
    }
    None
}

/// Whether every coefficient of the candidate's `Q` off the diagonal is zero
/// and the diagonal is strictly positive.
pub fn is_positive_diagonal(v: &QuadraticCandidate) -> bool {
    let dim = v.dim();
    (0..dim).all(|i| (0..dim).all(|j| if i == j { v.q[i][j].is_positive() } else { v.q[i][j].is_zero() }))
}
