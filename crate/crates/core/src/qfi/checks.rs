use std::collections::BTreeMap;

use num::{One, Zero};
use serde::Serialize;

use super::{
    find_quadratic_first_integrals, generate_binary_form_system, BinaryFamily, BinaryFormParams, QfiError,
    QuadraticCandidate, SignatureFilter,
};
use crate::conservation::kinetic_conservation;
use crate::kinetics::is_kinetic;
use crate::linalg::null_space;
use crate::poly::{Monomial, Polynomial, PolynomialSystem, Substitution};
use crate::rational::{format_rational, normalize_integer_direction, Rational};

/// Outcome of testing the diagonal nonexistence statement on one system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem4Verdict {
    pub kinetic: bool,
    pub conserving: Option<Vec<Rational>>,
    pub diagonal_first_integral: Option<QuadraticCandidate>,
    pub zero_system: bool,
}

impl Theorem4Verdict {
    pub fn hypotheses_hold(&self) -> bool {
        self.kinetic && self.conserving.is_some() && self.diagonal_first_integral.is_some()
    }

    /// All hypotheses hold for a nonzero system.
    pub fn is_counterexample(&self) -> bool {
        self.hypotheses_hold() && !self.zero_system
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        serde_json::json!({
            "verdict": if self.is_counterexample() { "counterexample" } else { "consistent" },
            "hypotheses_hold": self.hypotheses_hold(),
            "kinetic": self.kinetic,
            "conservation": self.conserving.as_ref().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()),
            "diagonal_first_integral": self.diagonal_first_integral.as_ref().map(|v| v.render(names)),
            "zero_system": self.zero_system,
        })
    }
}

/// Kinetic, kinetically mass conserving and a positive diagonal quadratic
/// first integral together force the zero system.
pub fn check_theorem4_nonexistence(sys: &PolynomialSystem) -> Theorem4Verdict {
    let kinetic = is_kinetic(sys);
    let conserving = kinetic_conservation(sys).map(|w| w.rho().to_vec());
    let diagonal_first_integral = find_quadratic_first_integrals(sys, SignatureFilter::PositiveDiagonal).candidate;
    Theorem4Verdict { kinetic, conserving, diagonal_first_integral, zero_system: sys.is_zero() }
}

fn require_planar(sys: &PolynomialSystem) -> Result<(), QfiError> {
    if sys.dim() != 2 {
        return Err(QfiError::NotPlanar(sys.dim()));
    }
    Ok(())
}

fn lv_multipliers() -> (Polynomial, Polynomial) {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let one = Polynomial::constant(2, Rational::one());
    (&y * &(&x - &one), &x * &(&y - &one))
}

/// `x + y − ln x − ln y` is a first integral iff `y(x−1)f₁ + x(y−1)f₂ ≡ 0`.
pub fn lotka_volterra_log_check(sys: &PolynomialSystem) -> Result<bool, QfiError> {
    require_planar(sys)?;
    let (m1, m2) = lv_multipliers();
    let total = &(&m1 * sys.component(0)) + &(&m2 * sys.component(1));
    Ok(total.is_zero())
}

/// Basis of all planar systems of degree at most two that keep
/// `x + y − ln x − ln y` constant, each normalized to coprime integers.
pub fn solve_log_family() -> Vec<PolynomialSystem> {
    let exps: [[u32; 2]; 6] = [[2, 0], [1, 1], [0, 2], [1, 0], [0, 1], [0, 0]];
    let (m1, m2) = lv_multipliers();
    let columns: Vec<Polynomial> = [&m1, &m2]
        .iter()
        .flat_map(|m| exps.iter().map(move |e| *m * &Polynomial::term(2, Monomial::new(e.to_vec()), Rational::one())))
        .collect();
    let mut rows: Vec<&Monomial> = columns.iter().flat_map(|c| c.terms().map(|(m, _)| m)).collect();
    rows.sort();
    rows.dedup();
    let matrix: Vec<Vec<Rational>> = rows.iter().map(|m| columns.iter().map(|c| c.coeff(m)).collect()).collect();
    null_space(&matrix, 12)
        .iter()
        .map(|v| {
            let v = normalize_integer_direction(v);
            let comp = |off: usize| {
                Polynomial::from_terms(2, exps.iter().zip(&v[off..off + 6]).map(|(e, c)| (e.to_vec(), c.clone())))
            };
            PolynomialSystem::new(vec!["x".into(), "y".into()], vec![comp(0), comp(6)]).expect("planar")
        })
        .collect()
}

/// Stationary points of the ellipse/hyperbola family beyond the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StationarySet {
    /// The ray spanned by `(L, K)`: `y = (K/L) x`, `x = 0` when `L = 0`,
    /// `y = 0` when `K = 0`.
    Line {
        #[serde(with = "crate::rational::serde_rational")]
        dx: Rational,
        #[serde(with = "crate::rational::serde_rational")]
        dy: Rational,
    },
    /// `K = L = 0`: the zero system.
    Plane,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StationaryLocus {
    pub set: StationarySet,
    pub description: String,
    pub vanishes: bool,
}

/// Substitutes the predicted stationary line into the generated system and
/// checks that both components vanish identically.
pub fn equilibria_on_line_check(p: &BinaryFormParams) -> Result<StationaryLocus, QfiError> {
    if p.family != BinaryFamily::EllipseHyperbola {
        return Err(QfiError::WrongFamily { expected: BinaryFamily::EllipseHyperbola.name() });
    }
    let g = generate_binary_form_system(p)?;
    if p.k.is_zero() && p.l.is_zero() {
        return Ok(StationaryLocus {
            set: StationarySet::Plane,
            description: "every point".into(),
            vanishes: g.system.is_zero(),
        });
    }
    let description = if p.l.is_zero() {
        "x = 0".to_string()
    } else if p.k.is_zero() {
        "y = 0".to_string()
    } else {
        format!("y = {} x", format_rational(&(&p.k / &p.l)))
    };
    // x = L t, y = K t with t carried by the variable x.
    let t = Polynomial::var(2, 0);
    let mut subs = BTreeMap::new();
    subs.insert(0, Substitution::Poly(t.scale(&p.l)));
    subs.insert(1, Substitution::Poly(t.scale(&p.k)));
    let mut vanishes = true;
    for f in g.system.components() {
        vanishes &= f.substitute(&subs)?.is_zero();
    }
    Ok(StationaryLocus { set: StationarySet::Line { dx: p.l.clone(), dy: p.k.clone() }, description, vanishes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sys(eqs: &[&str]) -> PolynomialSystem {
        PolynomialSystem::parse(&["x", "y"], eqs).unwrap()
    }

    #[test]
    fn nonexistence_examples() {
        let v = check_theorem4_nonexistence(&PolynomialSystem::zero(vec!["x".into(), "y".into(), "z".into()]));
        assert!(v.hypotheses_hold());
        assert!(!v.is_counterexample());

        let v = check_theorem4_nonexistence(&sys(&["2*y^2 - 3*x*y", "3*x^2 - 2*x*y"]));
        assert!(v.kinetic && v.diagonal_first_integral.is_some());
        assert!(v.conserving.is_none());
        assert!(!v.is_counterexample());
    }

    #[test]
    fn lotka_volterra_instances() {
        assert!(lotka_volterra_log_check(&sys(&["x*y - x", "-x*y + y"])).unwrap());
        assert!(lotka_volterra_log_check(&sys(&["-x*y + x", "x*y - y"])).unwrap());
        assert!(lotka_volterra_log_check(&sys(&["3*x*y - 3*x", "-3*x*y + 3*y"])).unwrap());
        assert!(!lotka_volterra_log_check(&sys(&["x*y - x", "-x*y + 2*y"])).unwrap());
        let one = PolynomialSystem::parse(&["x"], &["x"]).unwrap();
        assert_eq!(lotka_volterra_log_check(&one), Err(QfiError::NotPlanar(1)));
    }

    #[test]
    fn log_family_is_one_dimensional() {
        let basis = solve_log_family();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], sys(&["x*y - x", "-x*y + y"]));
    }

    fn ellipse(k: i64, l: i64) -> BinaryFormParams {
        let mut p = BinaryFormParams::new(BinaryFamily::EllipseHyperbola, int(2), int(1), int(3));
        p.k = int(k);
        p.l = int(l);
        p
    }

    #[test]
    fn stationary_lines() {
        let r = equilibria_on_line_check(&ellipse(1, 1)).unwrap();
        assert!(r.vanishes);
        assert_eq!(r.description, "y = 1 x");
        let r = equilibria_on_line_check(&ellipse(1, 0)).unwrap();
        assert!(r.vanishes);
        assert_eq!(r.description, "x = 0");
        let r = equilibria_on_line_check(&ellipse(0, 3)).unwrap();
        assert!(r.vanishes);
        assert_eq!(r.description, "y = 0");
        let r = equilibria_on_line_check(&ellipse(0, 0)).unwrap();
        assert_eq!(r.set, StationarySet::Plane);
        assert!(r.vanishes);
        let r = equilibria_on_line_check(&ellipse(2, 3)).unwrap();
        assert!(r.vanishes);

        let wrong = BinaryFormParams::new(BinaryFamily::RankOne, int(1), int(1), int(0));
        assert!(matches!(equilibria_on_line_check(&wrong), Err(QfiError::WrongFamily { .. })));
    }
}
