use num::{One, Signed, Zero};
use serde::Serialize;

use super::{is_first_integral, QfiError, QuadraticCandidate};
use crate::conservation::{verify_conservation, ConservationVector, Mode, Target};
use crate::kinetics::is_kinetic;
use crate::poly::{default_variable_names, Monomial, Polynomial, PolynomialSystem};
use crate::rational::{format_rational, int, Rational};

/// A generated system together with the first integral it was built around.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedSystem {
    pub system: PolynomialSystem,
    pub first_integral: QuadraticCandidate,
}

fn invalid(msg: impl Into<String>) -> QfiError {
    QfiError::InvalidParams(msg.into())
}

fn verify(g: GeneratedSystem) -> Result<GeneratedSystem, QfiError> {
    if !is_kinetic(&g.system) {
        return Err(QfiError::VerificationFailed("system has negative cross-effect".into()));
    }
    if !is_first_integral(&g.first_integral, &g.system)? {
        return Err(QfiError::VerificationFailed("Lie derivative does not vanish".into()));
    }
    Ok(g)
}

fn planar_names() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

fn names_for(dim: usize) -> Vec<String> {
    match dim {
        1 => vec!["x".into()],
        2 => planar_names(),
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => default_variable_names(dim),
    }
}

fn mono(dim: usize, vars: &[usize]) -> Monomial {
    let mut e = vec![0; dim];
    for &v in vars {
        e[v] += 1;
    }
    Monomial::new(e)
}

/// Weights `a` and nonnegative coupling `K` with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalParams {
    pub a: Vec<Rational>,
    pub k: Vec<Vec<Rational>>,
}

impl DiagonalParams {
    pub fn validate(&self) -> Result<(), QfiError> {
        let dim = self.a.len();
        if dim == 0 {
            return Err(invalid("a must be nonempty"));
        }
        if let Some(i) = self.a.iter().position(|v| !v.is_positive()) {
            return Err(invalid(format!("a[{}] must be positive", i + 1)));
        }
        if self.k.len() != dim || self.k.iter().any(|r| r.len() != dim) {
            return Err(invalid(format!("K must be {dim}x{dim}")));
        }
        for (m, row) in self.k.iter().enumerate() {
            for (p, v) in row.iter().enumerate() {
                if v.is_negative() {
                    return Err(invalid(format!("K[{},{}] must be nonnegative", m + 1, p + 1)));
                }
                if m == p && !v.is_zero() {
                    return Err(invalid(format!("K[{},{}] must be zero", m + 1, m + 1)));
                }
            }
        }
        Ok(())
    }
}

/// `F_m = Σ_p a_p K[m][p] x_p² − Σ_p a_p K[p][m] x_m x_p`, first integral
/// `Σ a_m x_m²`.
pub fn generate_diagonal_system(p: &DiagonalParams) -> Result<GeneratedSystem, QfiError> {
    p.validate()?;
    let dim = p.a.len();
    let mut components = Vec::with_capacity(dim);
    for m in 0..dim {
        let mut f = Polynomial::zero(dim);
        for q in 0..dim {
            f.add_term(mono(dim, &[q, q]), &p.a[q] * &p.k[m][q]);
            f.add_term(mono(dim, &[m, q]), -(&p.a[q] * &p.k[q][m]));
        }
        components.push(f);
    }
    let system = PolynomialSystem::new(names_for(dim), components).expect("consistent dimensions");
    verify(GeneratedSystem { system, first_integral: QuadraticCandidate::diagonal(&p.a) })
}

/// Weights and couplings of the mixed-sign family in `K + L + 1` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSignParams {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    /// `K x L`, nonnegative.
    pub coupling: Vec<Vec<Rational>>,
    pub rho_x: Vec<Rational>,
    pub rho_y: Vec<Rational>,
    pub rho_z: Rational,
}

impl MixedSignParams {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn l(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<(), QfiError> {
        let (k, l) = (self.k(), self.l());
        let positive = |name: &str, v: &[Rational]| match v.iter().position(|x| !x.is_positive()) {
            Some(i) => Err(invalid(format!("{name}[{}] must be positive", i + 1))),
            None => Ok(()),
        };
        positive("a", &self.a)?;
        positive("b", &self.b)?;
        positive("rho_x", &self.rho_x)?;
        positive("rho_y", &self.rho_y)?;
        if !self.rho_z.is_positive() {
            return Err(invalid("rho_z must be positive"));
        }
        if self.rho_x.len() != k || self.rho_y.len() != l {
            return Err(invalid("rho_x and rho_y must match the lengths of a and b"));
        }
        if self.coupling.len() != k || self.coupling.iter().any(|r| r.len() != l) {
            return Err(invalid(format!("A must be {k}x{l}")));
        }
        for (i, row) in self.coupling.iter().enumerate() {
            if let Some(j) = row.iter().position(|v| v.is_negative()) {
                return Err(invalid(format!("A[{},{}] must be nonnegative", i + 1, j + 1)));
            }
        }
        Ok(())
    }

    fn names(&self) -> Vec<String> {
        let block = |prefix: &str, n: usize| -> Vec<String> {
            if n == 1 {
                vec![prefix.to_string()]
            } else {
                (1..=n).map(|i| format!("{prefix}{i}")).collect()
            }
        };
        let mut names = block("x", self.k());
        names.extend(block("y", self.l()));
        names.push("z".into());
        names
    }
}

/// `x_k' = Σ_l b_l A[k][l] y_l z`, `y_l' = Σ_k a_k A[k][l] x_k z`,
/// `z' = −(Σ ρx_k x_k' + Σ ρy_l y_l') / ρz`; first integral
/// `Σ a_k x_k² − Σ b_l y_l²`. With `K = 0` or `L = 0` the system is zero.
pub fn generate_mixed_sign_system(p: &MixedSignParams) -> Result<GeneratedSystem, QfiError> {
    p.validate()?;
    let (k, l) = (p.k(), p.l());
    let dim = k + l + 1;
    let z = dim - 1;
    let mut components = vec![Polynomial::zero(dim); dim];
    if k > 0 && l > 0 {
        for i in 0..k {
            for j in 0..l {
                let c = &p.coupling[i][j];
                components[i].add_term(mono(dim, &[k + j, z]), &p.b[j] * c);
                components[k + j].add_term(mono(dim, &[i, z]), &p.a[i] * c);
            }
        }
        let mut total = Polynomial::zero(dim);
        for (f, r) in components.iter().zip(p.rho_x.iter().chain(&p.rho_y)) {
            total = &total + &f.scale(r);
        }
        components[z] = total.scale(&(-Rational::one() / &p.rho_z));
    }
    let mut diag: Vec<Rational> = p.a.clone();
    diag.extend(p.b.iter().map(|v| -v));
    diag.push(Rational::zero());
    let system = PolynomialSystem::new(p.names(), components).expect("consistent dimensions");
    let g = verify(GeneratedSystem { system, first_integral: QuadraticCandidate::diagonal(&diag) })?;
    let mut rho: Vec<Rational> = p.rho_x.iter().chain(&p.rho_y).cloned().collect();
    rho.push(p.rho_z.clone());
    let rho = ConservationVector::new(rho, Mode::Kinetic).expect("validated positive");
    if !verify_conservation(&rho, Target::System(&g.system)).expect("matching mode and length") {
        return Err(QfiError::VerificationFailed("weights do not conserve mass".into()));
    }
    Ok(g)
}

/// Planar families whose first integral is a binary quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BinaryFamily {
    /// `ax² + 2bxy + cy²`, `a, c > 0`, `ac − b² ≠ 0`; free `K, L`.
    EllipseHyperbola,
    /// `ax² + 2bxy + cy²`, `a, b, c > 0`, `ac = b²`; free `K, L, M, N ≥ 0`, `S`.
    ParabolicPlus,
    /// `ax² − 2bxy + cy²`, `a, b, c > 0`, `ac = b²`; free `K, L, M, N, R ≥ 0`, `S`.
    ParabolicMinus,
    /// `ax² + 2bxy − cy²`, `a, c > 0`, `b ≠ 0`; free `K, L, M ≥ 0`.
    Indefinite,
    /// `ax² + 2bxy`, `a > 0`, `b ≠ 0`; free `K, M ≥ 0`, `S`.
    RankOne,
}

impl BinaryFamily {
    pub const ALL: [BinaryFamily; 5] = [
        BinaryFamily::EllipseHyperbola,
        BinaryFamily::ParabolicPlus,
        BinaryFamily::ParabolicMinus,
        BinaryFamily::Indefinite,
        BinaryFamily::RankOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BinaryFamily::EllipseHyperbola => "ellipse_hyperbola",
            BinaryFamily::ParabolicPlus => "parabolic_plus",
            BinaryFamily::ParabolicMinus => "parabolic_minus",
            BinaryFamily::Indefinite => "indefinite",
            BinaryFamily::RankOne => "rank_one",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Free parameters the template uses, by name.
    pub fn free_parameters(self) -> &'static [&'static str] {
        match self {
            BinaryFamily::EllipseHyperbola => &["K", "L"],
            BinaryFamily::ParabolicPlus => &["K", "L", "M", "N", "S"],
            BinaryFamily::ParabolicMinus => &["K", "L", "M", "N", "R", "S"],
            BinaryFamily::Indefinite => &["K", "L", "M"],
            BinaryFamily::RankOne => &["K", "M", "S"],
        }
    }
}

/// Form coefficients and free parameters of a binary family. Parameters the
/// family does not use must be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFormParams {
    pub family: BinaryFamily,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub k: Rational,
    pub l: Rational,
    pub m: Rational,
    pub n: Rational,
    pub r: Rational,
    pub s: Rational,
}

impl BinaryFormParams {
    /// All parameters zero except the form coefficients.
    pub fn new(family: BinaryFamily, a: Rational, b: Rational, c: Rational) -> Self {
        BinaryFormParams {
            family,
            a,
            b,
            c,
            k: Rational::zero(),
            l: Rational::zero(),
            m: Rational::zero(),
            n: Rational::zero(),
            r: Rational::zero(),
            s: Rational::zero(),
        }
    }

    fn free(&self, name: &str) -> &Rational {
        match name {
            "K" => &self.k,
            "L" => &self.l,
            "M" => &self.m,
            "N" => &self.n,
            "R" => &self.r,
            _ => &self.s,
        }
    }

    /// Sets a free parameter by its name (`K`, `L`, `M`, `N`, `R`, `S`, case
    /// insensitive) or a form coefficient (`a`, `b`, `c`).
    pub fn set(&mut self, name: &str, value: Rational) -> Result<(), QfiError> {
        let slot = match name {
            "a" => &mut self.a,
            "b" => &mut self.b,
            "c" => &mut self.c,
            "K" | "k" => &mut self.k,
            "L" | "l" => &mut self.l,
            "M" | "m" => &mut self.m,
            "N" | "n" => &mut self.n,
            "R" | "r" => &mut self.r,
            "S" | "s" => &mut self.s,
            _ => return Err(invalid(format!("unknown parameter {name}"))),
        };
        *slot = value;
        Ok(())
    }

    pub fn validate(&self) -> Result<(), QfiError> {
        let fam = self.family;
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let det = a * c - b * b;
        let require = |ok: bool, what: &str| if ok { Ok(()) } else { Err(invalid(format!("{}: {what}", fam.name()))) };
        match fam {
            BinaryFamily::EllipseHyperbola => {
                require(a.is_positive(), "a > 0")?;
                require(c.is_positive(), "c > 0")?;
                require(!det.is_zero(), "ac - b^2 != 0")?;
            }
            BinaryFamily::ParabolicPlus | BinaryFamily::ParabolicMinus => {
                require(a.is_positive(), "a > 0")?;
                require(b.is_positive(), "b > 0")?;
                require(c.is_positive(), "c > 0")?;
                require(det.is_zero(), "ac - b^2 = 0")?;
            }
            BinaryFamily::Indefinite => {
                require(a.is_positive(), "a > 0")?;
                require(c.is_positive(), "c > 0")?;
                require(!b.is_zero(), "b != 0")?;
            }
            BinaryFamily::RankOne => {
                require(a.is_positive(), "a > 0")?;
                require(!b.is_zero(), "b != 0")?;
                require(c.is_zero(), "c = 0")?;
            }
        }
        let used = fam.free_parameters();
        for name in ["K", "L", "M", "N", "R", "S"] {
            let v = self.free(name);
            if !used.contains(&name) {
                require(v.is_zero(), &format!("{name} is not a parameter of this family"))?;
            } else if name != "S" {
                require(!v.is_negative(), &format!("{name} >= 0"))?;
            }
        }
        Ok(())
    }

    /// The family's first integral.
    pub fn form(&self) -> QuadraticCandidate {
        let (a, b, c) = (self.a.clone(), self.b.clone(), self.c.clone());
        match self.family {
            BinaryFamily::EllipseHyperbola | BinaryFamily::ParabolicPlus | BinaryFamily::RankOne => {
                QuadraticCandidate::binary(a, b, c)
            }
            BinaryFamily::ParabolicMinus => QuadraticCandidate::binary(a, -b, c),
            BinaryFamily::Indefinite => QuadraticCandidate::binary(a, b, -c),
        }
    }

    pub fn describe(&self) -> String {
        let mut parts = vec![
            format!("a={}", format_rational(&self.a)),
            format!("b={}", format_rational(&self.b)),
            format!("c={}", format_rational(&self.c)),
        ];
        for name in self.family.free_parameters() {
            parts.push(format!("{name}={}", format_rational(self.free(name))));
        }
        format!("{}({})", self.family.name(), parts.join(", "))
    }
}

/// Coefficients `[x², xy, y², x, y, 1]` of a planar quadratic.
fn planar(c: [Rational; 6]) -> Polynomial {
    let exps: [[u32; 2]; 6] = [[2, 0], [1, 1], [0, 2], [1, 0], [0, 1], [0, 0]];
    Polynomial::from_terms(2, exps.iter().zip(c).map(|(e, v)| (e.to_vec(), v)))
}

pub fn generate_binary_form_system(p: &BinaryFormParams) -> Result<GeneratedSystem, QfiError> {
    p.validate()?;
    let (a, b, c) = (&p.a, &p.b, &p.c);
    let (k, l, m, n, r, s) = (&p.k, &p.l, &p.m, &p.n, &p.r, &p.s);
    let z = Rational::zero;
    let (f1, f2) = match p.family {
        BinaryFamily::EllipseHyperbola => (
            [-(b * k), -(c * k) + b * l, c * l, z(), z(), z()],
            [a * k, b * k - a * l, -(b * l), z(), z(), z()],
        ),
        BinaryFamily::ParabolicPlus => (
            [-(b * k), c * s, c * l, -(b * m), c * n, z()],
            [a * k, -(b * s), -(b * l), a * m, -(b * n), z()],
        ),
        BinaryFamily::ParabolicMinus => (
            [b * k, c * s, c * l, b * m, c * n, c * r],
            [a * k, b * s, b * l, a * m, b * n, b * r],
        ),
        BinaryFamily::Indefinite => (
            [-(b * k), c * k - b * l, c * l, -(b * m), c * m, z()],
            [a * k, b * k + a * l, b * l, a * m, b * m, z()],
        ),
        BinaryFamily::RankOne => (
            [-(b * k), -(b * s), z(), -(b * m), z(), z()],
            [a * k, b * k + a * s, b * s, a * m, b * m, z()],
        ),
    };
    let system = PolynomialSystem::new(planar_names(), vec![planar(f1), planar(f2)]).expect("planar");
    verify(GeneratedSystem { system, first_integral: p.form() })
}

/// `x' = (Ay − Bx)(y + b)`, `y' = (Bx − Ay)(x + a)` with first integral
/// `(x + a)² + (y + b)²`. Requires `A, B ≥ 0`, `B = 0` when `a < 0` and
/// `A = 0` when `b < 0`.
pub fn generate_shifted_system(
    big_a: &Rational,
    big_b: &Rational,
    a: &Rational,
    b: &Rational,
) -> Result<GeneratedSystem, QfiError> {
    if big_a.is_negative() || big_b.is_negative() {
        return Err(invalid("shifted: A >= 0 and B >= 0"));
    }
    if a.is_negative() && !big_b.is_zero() {
        return Err(invalid("shifted: a < 0 requires B = 0"));
    }
    if b.is_negative() && !big_a.is_zero() {
        return Err(invalid("shifted: b < 0 requires A = 0"));
    }
    let z = Rational::zero;
    let f1 = planar([z(), -big_b.clone(), big_a.clone(), -(b * big_b), b * big_a, z()]);
    let f2 = planar([big_b.clone(), -big_a.clone(), z(), a * big_b, -(a * big_a), z()]);
    let system = PolynomialSystem::new(planar_names(), vec![f1, f2]).expect("planar");
    let two = int(2);
    let v = QuadraticCandidate::new(
        vec![vec![Rational::one(), Rational::zero()], vec![Rational::zero(), Rational::one()]],
        vec![&two * a, &two * b],
        a * a + b * b,
    )?;
    verify(GeneratedSystem { system, first_integral: v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| ints(r)).collect()
    }

    fn sys(names: &[&str], eqs: &[&str]) -> PolynomialSystem {
        PolynomialSystem::parse(names, eqs).unwrap()
    }

    #[test]
    fn diagonal_planar_and_spatial_templates() {
        let g = generate_diagonal_system(&DiagonalParams { a: ints(&[1, 1]), k: mat(&[&[0, 2], &[3, 0]]) }).unwrap();
        assert_eq!(g.system, sys(&["x", "y"], &["2*y^2 - 3*x*y", "3*x^2 - 2*x*y"]));

        let g = generate_diagonal_system(&DiagonalParams {
            a: ints(&[1, 1, 1]),
            k: mat(&[&[0, 2, 3], &[4, 0, 5], &[6, 7, 0]]),
        })
        .unwrap();
        let expected = sys(
            &["x", "y", "z"],
            &["2*y^2 + 3*z^2 - 4*x*y - 6*x*z", "4*x^2 + 5*z^2 - 2*x*y - 7*y*z", "6*x^2 + 7*y^2 - 3*x*z - 5*y*z"],
        );
        assert_eq!(g.system, expected);

        let g = generate_diagonal_system(&DiagonalParams { a: ints(&[1, 2, 3]), k: mat(&[&[0; 3], &[0; 3], &[0; 3]]) })
            .unwrap();
        assert!(g.system.is_zero());
    }

    #[test]
    fn diagonal_rejects_invalid_parameters() {
        let bad = |a: &[i64], k: &[&[i64]]| generate_diagonal_system(&DiagonalParams { a: ints(a), k: mat(k) });
        assert!(bad(&[1, 0], &[&[0, 1], &[1, 0]]).is_err());
        assert!(bad(&[1, 1], &[&[0, -1], &[1, 0]]).is_err());
        assert!(bad(&[1, 1], &[&[1, 1], &[1, 0]]).is_err());
        assert!(bad(&[1, 1], &[&[0, 1]]).is_err());
    }

    fn mixed(a: &[i64], b: &[i64], coupling: &[&[i64]]) -> MixedSignParams {
        MixedSignParams {
            a: ints(a),
            b: ints(b),
            coupling: mat(coupling),
            rho_x: vec![int(1); a.len()],
            rho_y: vec![int(1); b.len()],
            rho_z: int(1),
        }
    }

    #[test]
    fn mixed_sign_templates() {
        let g = generate_mixed_sign_system(&mixed(&[1], &[1], &[&[1]])).unwrap();
        assert_eq!(g.system, sys(&["x", "y", "z"], &["y*z", "x*z", "-x*z - y*z"]));

        let g = generate_mixed_sign_system(&mixed(&[1, 1], &[1, 1], &[&[2, 3], &[5, 7]])).unwrap();
        let expected = sys(
            &["x1", "x2", "y1", "y2", "z"],
            &[
                "2*y1*z + 3*y2*z",
                "5*y1*z + 7*y2*z",
                "2*x1*z + 5*x2*z",
                "3*x1*z + 7*x2*z",
                "-(2*y1*z + 3*y2*z) - (5*y1*z + 7*y2*z) - (2*x1*z + 5*x2*z) - (3*x1*z + 7*x2*z)",
            ],
        );
        assert_eq!(g.system, expected);

        let g = generate_mixed_sign_system(&mixed(&[1], &[1], &[&[0]])).unwrap();
        assert!(g.system.is_zero());
        let g = generate_mixed_sign_system(&mixed(&[], &[1, 2], &[])).unwrap();
        assert!(g.system.is_zero());
        assert_eq!(g.system.names(), &["y1", "y2", "z"]);
    }

    #[test]
    fn mixed_sign_with_general_weights() {
        let p = MixedSignParams {
            a: vec![frac(1, 2)],
            b: vec![int(3)],
            coupling: mat(&[&[2]]),
            rho_x: vec![int(2)],
            rho_y: vec![int(1)],
            rho_z: int(3),
        };
        let g = generate_mixed_sign_system(&p).unwrap();
        assert_eq!(g.system, sys(&["x", "y", "z"], &["6*y*z", "x*z", "-x*z/3 - 4*y*z"]));
    }

    fn binary(family: BinaryFamily, abc: [i64; 3], free: &[(&str, i64)]) -> Result<GeneratedSystem, QfiError> {
        let mut p = BinaryFormParams::new(family, int(abc[0]), int(abc[1]), int(abc[2]));
        for &(n, v) in free {
            p.set(n, int(v)).unwrap();
        }
        generate_binary_form_system(&p)
    }

    #[test]
    fn ellipse_examples() {
        let g = binary(BinaryFamily::EllipseHyperbola, [2, 1, 3], &[("K", 1), ("L", 1)]).unwrap();
        assert_eq!(g.system, sys(&["x", "y"], &["-x^2 - 2*x*y + 3*y^2", "2*x^2 - x*y - y^2"]));
        let g = binary(BinaryFamily::EllipseHyperbola, [1, -3, 2], &[("K", 1), ("L", 1)]).unwrap();
        assert_eq!(g.system, sys(&["x", "y"], &["3*x^2 - 5*x*y + 2*y^2", "x^2 - 4*x*y + 3*y^2"]));
        let g = binary(BinaryFamily::EllipseHyperbola, [2, -3, 2], &[("K", 1), ("L", 1)]).unwrap();
        assert_eq!(g.system, sys(&["x", "y"], &["3*x^2 - 5*x*y + 2*y^2", "2*x^2 - 5*x*y + 3*y^2"]));
        let r = crate::qfi::find_quadratic_first_integrals(&g.system, crate::qfi::SignatureFilter::Any);
        assert_eq!(r.witness_basis, vec![QuadraticCandidate::binary(int(2), int(-3), int(2)).normalized()]);
    }

    #[test]
    fn binary_constraints_are_named() {
        let err = binary(BinaryFamily::EllipseHyperbola, [1, 1, 1], &[("K", 1)]).unwrap_err();
        assert!(err.to_string().contains("ac - b^2 != 0"));
        assert!(binary(BinaryFamily::EllipseHyperbola, [2, 1, 3], &[("M", 1)]).is_err());
        assert!(binary(BinaryFamily::EllipseHyperbola, [2, 1, 3], &[("K", -1)]).is_err());
        assert!(binary(BinaryFamily::ParabolicPlus, [1, 2, 3], &[]).is_err());
        assert!(binary(BinaryFamily::RankOne, [1, 2, 3], &[]).is_err());
        assert!(binary(BinaryFamily::Indefinite, [1, 0, 3], &[]).is_err());
        assert!(binary(BinaryFamily::ParabolicPlus, [1, 2, 4], &[("S", -5)]).is_ok());
    }

    #[test]
    fn every_family_with_free_parameters_zero_is_zero() {
        let forms: [(BinaryFamily, [i64; 3]); 5] = [
            (BinaryFamily::EllipseHyperbola, [2, 1, 3]),
            (BinaryFamily::ParabolicPlus, [1, 2, 4]),
            (BinaryFamily::ParabolicMinus, [4, 2, 1]),
            (BinaryFamily::Indefinite, [1, -1, 2]),
            (BinaryFamily::RankOne, [1, -2, 0]),
        ];
        for (fam, abc) in forms {
            assert!(binary(fam, abc, &[]).unwrap().system.is_zero(), "{}", fam.name());
            let all: Vec<(&str, i64)> = fam.free_parameters().iter().map(|&n| (n, 2)).collect();
            let g = binary(fam, abc, &all).unwrap();
            assert!(!g.system.is_zero());
        }
    }

    #[test]
    fn shifted_templates() {
        let one = int(1);
        let g = generate_shifted_system(&one, &one, &one, &one).unwrap();
        assert_eq!(g.system, sys(&["x", "y"], &["y^2 - x*y - x + y", "x^2 - x*y + x - y"]));
        assert_eq!(g.first_integral.constant(), &int(2));
        let g = generate_shifted_system(&one, &int(0), &int(0), &int(0)).unwrap();
        assert_eq!(g.system, sys(&["x", "y"], &["y^2", "-x*y"]));
        let z = int(0);
        assert!(generate_shifted_system(&z, &z, &int(5), &int(-2)).unwrap().system.is_zero());
        assert!(generate_shifted_system(&one, &one, &int(-1), &one).is_err());
        assert!(generate_shifted_system(&one, &z, &one, &int(-1)).is_err());
        assert!(generate_shifted_system(&int(-1), &z, &one, &one).is_err());
    }
}
