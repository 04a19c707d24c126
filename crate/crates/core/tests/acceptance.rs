//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Tolerances and budgets are pinned below.

#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crnkit::conservation::{
    kinetic_conservation, stoichiometric_conservation, stoichiometric_residual, verify_conservation,
    ConservationVector, Mode, Target,
};
use crnkit::kinetics::{canonical_realization, induced_kinetic_ode, is_kinetic};
use crnkit::network::{parse_network, Complex, ParameterBinding, Rate, ReactionNetwork, ReactionStep};
use crnkit::poly::{Polynomial, PolynomialSystem};
use crnkit::qfi::{
    check_theorem4_nonexistence, equilibria_on_line_check, find_quadratic_first_integrals,
    generate_binary_form_system, generate_diagonal_system, is_first_integral, lotka_volterra_log_check,
    solve_log_family, BinaryFamily, BinaryFormParams, DiagonalParams, QuadraticCandidate, Signature,
    SignatureFilter,
};
use crnkit::rational::{frac, int, Rational};
use crnkit::sim::{drift_report, integrate, SimConfig};

const FAST_BUDGET: Duration = Duration::from_secs(1);
const GRID_BUDGET: Duration = Duration::from_secs(600);
const DRIFT_BUDGET: Duration = Duration::from_secs(10);
const NETWORK_BUDGET: Duration = Duration::from_secs(30);
const DRIFT_BOUND: f64 = 1e-6;
const ORDER_WINDOW: (f64, f64) = (8.0, 32.0);
const RANDOM_DIAGONAL_CASES: usize = 1000;
const RANDOM_NETWORKS: usize = 500;
const BINDINGS_PER_NETWORK: usize = 3;

type Check = Result<String, String>;

/// Id, name, time budget, check.
type Criterion = (u32, &'static str, Duration, fn() -> Check);

/// Coefficients of `x², xy, y², x, y, 1` in each component.
type PlanarCoefficients = ([Rational; 6], [Rational; 6]);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn planar(f1: &[Rational; 6], f2: &[Rational; 6]) -> PolynomialSystem {
    let exps: [[u32; 2]; 6] = [[2, 0], [1, 1], [0, 2], [1, 0], [0, 1], [0, 0]];
    let comp = |c: &[Rational; 6]| Polynomial::from_terms(2, exps.iter().zip(c).map(|(e, v)| (e.to_vec(), v.clone())));
    PolynomialSystem::new(vec!["x".into(), "y".into()], vec![comp(f1), comp(f2)]).unwrap()
}

// 1 ------------------------------------------------------------------------

fn two_species_round_trip() -> Check {
    let net = parse_network("X <-[a] X + Y ->[b] Y\n2X ->[b] 2X + Y\n2Y ->[a] X + 2Y").map_err(|e| e.to_string())?;
    let values = [frac(1, 3), int(1), int(2), frac(7, 5), int(3)];
    let mut cases = 0;
    for a in &values {
        for b in &values {
            let binding = ParameterBinding::from_pairs([("a", a.clone()), ("b", b.clone())]).unwrap();
            let ode = induced_kinetic_ode(&net, &binding).map_err(|e| e.to_string())?;
            let z = Rational::zero;
            let expected = planar(&[z(), -b.clone(), a.clone(), z(), z(), z()], &[b.clone(), -a.clone(), z(), z(), z(), z()]);
            ensure(ode == expected, || format!("a={a}, b={b}: got {ode}"))?;
            let real = canonical_realization(&ode).map_err(|e| e.to_string())?;
            let back = induced_kinetic_ode(&real.network, &ParameterBinding::new()).map_err(|e| e.to_string())?;
            ensure(back.same_field(&ode), || format!("a={a}, b={b}: realization induces {back}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} rational bindings reproduced exactly and realized"))
}

// 2 ------------------------------------------------------------------------

fn cross_effect_signs() -> Check {
    let names: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    let mut kinetic_count = 0;
    for pattern in 0..16u32 {
        let s = |bit: u32| if pattern >> bit & 1 == 1 { 1i64 } else { -1 };
        let (d, c, a, b) = (s(0), s(1), s(2), s(3));
        let eqs = [
            format!("{d}"),
            format!("{c} - 4*y*x^2 + 5*x*y + 6*z + 7*w"),
            format!("({a})*x + 2*y"),
            format!("-({b})*x*y"),
        ];
        let refs: Vec<&str> = eqs.iter().map(String::as_str).collect();
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let sys = PolynomialSystem::parse(&name_refs, &refs).map_err(|e| e.to_string())?;
        let expected = d >= 0 && c >= 0 && a >= 0 && -b >= 0;
        ensure(is_kinetic(&sys) == expected, || format!("(d,c,a,b)=({d},{c},{a},{b}) misclassified"))?;
        kinetic_count += usize::from(expected);
    }
    Ok(format!("16 sign patterns agree with d, c, a >= 0 and b <= 0 ({kinetic_count} kinetic)"))
}

// 3 ------------------------------------------------------------------------

const FEINBERG_HORN_NETWORK: &str = "# species: A B C D E F G H J
A + B <=>[1,1] C
C ->[1] D + E
D + E <=>[1,1] F
A + B ->[1] G
G ->[1] H
H <=>[1,1] 2J
2J ->[1] G
";

const FEINBERG_HORN_ODE: &str = "a' = -2*a*b + c
b' = -2*a*b + c
c' = a*b - 2*c
d' = c - d*e + f
e' = c - d*e + f
f' = d*e - f
g' = a*b - g + j^2
h' = g - h + j^2
j' = 2*h - 4*j^2
";

const FEINBERG_HORN_GAMMA: [[i64; 10]; 9] = [
    [-1, 1, 0, 0, 0, -1, 0, 0, 0, 0],
    [-1, 1, 0, 0, 0, -1, 0, 0, 0, 0],
    [1, -1, -1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, -1, 1, 0, 0, 0, 0, 0],
    [0, 0, 1, -1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, -1, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, -1, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 2, -2, -2],
];

fn feinberg_horn() -> Check {
    let ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
    let rho = ints(&[1, 2, 4, 1, 4, 5, 2, 2, 1]);
    let ode = PolynomialSystem::parse_text(FEINBERG_HORN_ODE).map_err(|e| e.to_string())?;
    let w = ConservationVector::new(rho.clone(), Mode::Kinetic).unwrap();
    ensure(verify_conservation(&w, Target::System(&ode)).unwrap(), || "rho^T f is not identically zero".into())?;

    let net = parse_network(FEINBERG_HORN_NETWORK).map_err(|e| e.to_string())?;
    let gamma = net.stoichiometric_matrices().gamma;
    let expected: Vec<Vec<Rational>> = FEINBERG_HORN_GAMMA.iter().map(|r| ints(r)).collect();
    ensure(gamma == expected, || "network does not reproduce the expected gamma".into())?;
    let induced = induced_kinetic_ode(&net, &ParameterBinding::new()).map_err(|e| e.to_string())?;
    ensure(induced.same_field(&ode), || format!("network induces {induced}"))?;
    let residual = stoichiometric_residual(&rho, &net);
    ensure(residual == ints(&[1, -1, 1, 0, 0, -1, 0, 0, 0, 0]), || format!("rho^T gamma = {residual:?}"))?;
    let ws = ConservationVector::new(rho, Mode::Stoichiometric).unwrap();
    ensure(!verify_conservation(&ws, Target::Network(&net)).unwrap(), || "rho wrongly conserves stoichiometrically".into())?;
    Ok("rho^T f = 0 and rho^T gamma = (1,-1,1,0,0,-1,0,0,0,0) exactly".into())
}

// 4 ------------------------------------------------------------------------

fn random_diagonal(rng: &mut ChaCha8Rng) -> DiagonalParams {
    let weights = [frac(1, 3), frac(1, 2), int(1), int(2), frac(5, 2), int(3)];
    let couplings = [int(0), frac(1, 4), frac(1, 2), int(1), int(2), int(3)];
    let m = rng.gen_range(1..=4);
    let a = (0..m).map(|_| weights[rng.gen_range(0..weights.len())].clone()).collect();
    let k = (0..m)
        .map(|i| (0..m).map(|j| if i == j { int(0) } else { couplings[rng.gen_range(0..couplings.len())].clone() }).collect())
        .collect();
    DiagonalParams { a, k }
}

/// `Σ_m 2 a_m x_m f_m` assembled directly from polynomial products.
fn diagonal_lie(a: &[Rational], sys: &PolynomialSystem) -> Polynomial {
    let dim = sys.dim();
    let mut acc = Polynomial::zero(dim);
    for (m, f) in sys.components().iter().enumerate() {
        let xm = Polynomial::var(dim, m).scale(&(&a[m] * int(2)));
        acc = &acc + &(&xm * f);
    }
    acc
}

/// Representable as `f1 = α y² − β xy`, `f2 = γ x² − δ xy` with
/// `α = t δ`, `β = t γ` for some `t > 0` and all four nonnegative.
fn template_representable(f1: &[Rational; 6], f2: &[Rational; 6]) -> bool {
    let others_zero = [f1[0].is_zero(), f1[3].is_zero(), f1[4].is_zero(), f1[5].is_zero()]
        .into_iter()
        .chain([f2[2].is_zero(), f2[3].is_zero(), f2[4].is_zero(), f2[5].is_zero()])
        .all(|b| b);
    if !others_zero {
        return false;
    }
    let (alpha, beta) = (f1[2].clone(), -f1[1].clone());
    let (gamma, delta) = (f2[0].clone(), -f2[1].clone());
    let nonneg = [&alpha, &beta, &gamma, &delta].iter().all(|v| !v.is_negative());
    nonneg && &alpha * &gamma == &beta * &delta && alpha.is_zero() == delta.is_zero() && beta.is_zero() == gamma.is_zero()
}

/// Cartesian product of per-coefficient value sets.
fn product(sets: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for s in sets {
        out = out.into_iter().flat_map(|p| s.iter().map(move |v| { let mut q = p.clone(); q.push(v.clone()); q })).collect();
    }
    out
}

/// Kinetic planar quadratic grids: the homogeneous grid over magnitudes
/// {0, 1/2, 1, 2} and the full grid over magnitudes {0, 1}. Negative values
/// only where the monomial contains the component's own variable.
fn kinetic_grids() -> Vec<(&'static str, Vec<PlanarCoefficients>)> {
    let mags = [int(0), frac(1, 2), int(1), int(2)];
    let signed: Vec<Rational> = mags.iter().cloned().chain(mags.iter().skip(1).map(|v| -v.clone())).collect();
    let pos: Vec<Rational> = mags.to_vec();
    let z = vec![int(0)];
    let build = |sets1: Vec<Vec<Rational>>, sets2: Vec<Vec<Rational>>| {
        let c1 = product(&sets1);
        let c2 = product(&sets2);
        let to6 = |v: &Vec<Rational>| -> [Rational; 6] { std::array::from_fn(|i| v[i].clone()) };
        c1.iter().flat_map(|a| c2.iter().map(move |b| (to6(a), to6(b)))).collect::<Vec<_>>()
    };
    // order [x², xy, y², x, y, 1]
    let homogeneous = build(
        vec![signed.clone(), signed.clone(), pos.clone(), z.clone(), z.clone(), z.clone()],
        vec![pos.clone(), signed.clone(), signed.clone(), z.clone(), z.clone(), z.clone()],
    );
    let s1 = vec![int(-1), int(0), int(1)];
    let p1 = vec![int(0), int(1)];
    let full = build(
        vec![s1.clone(), s1.clone(), p1.clone(), s1.clone(), p1.clone(), p1.clone()],
        vec![p1.clone(), s1.clone(), s1.clone(), p1.clone(), s1.clone(), p1.clone()],
    );
    vec![("homogeneous {0,1/2,1,2}", homogeneous), ("full {0,1}", full)]
}

fn diagonal_search() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..RANDOM_DIAGONAL_CASES {
        let p = random_diagonal(&mut rng);
        let g = generate_diagonal_system(&p).map_err(|e| format!("case {case}: {e}"))?;
        ensure(is_kinetic(&g.system), || format!("case {case}: not kinetic"))?;
        ensure(diagonal_lie(&p.a, &g.system).is_zero(), || format!("case {case}: Lie derivative nonzero"))?;
    }
    let mut summary = vec![format!("{RANDOM_DIAGONAL_CASES} random generators sound")];
    for (label, grid) in kinetic_grids() {
        let results: Vec<Result<bool, String>> = grid
            .par_iter()
            .map(|(f1, f2)| {
                let sys = planar(f1, f2);
                if !is_kinetic(&sys) {
                    return Err(format!("grid produced non-kinetic {sys}"));
                }
                let report = find_quadratic_first_integrals(&sys, SignatureFilter::PositiveDiagonal);
                let oracle = template_representable(f1, f2);
                if report.found != oracle {
                    return Err(format!("{sys}: search says {}, representability says {oracle}", report.found));
                }
                if let Some(v) = &report.candidate {
                    if v.signature() != Signature::PositiveDiagonal || !is_first_integral(v, &sys).unwrap() {
                        return Err(format!("{sys}: bad candidate"));
                    }
                }
                Ok(oracle)
            })
            .collect();
        let mut hits = 0;
        for r in results {
            hits += usize::from(r?);
        }
        summary.push(format!("{label}: {} systems, {hits} representable", grid.len()));
    }
    Ok(summary.join("; "))
}

// 5 ------------------------------------------------------------------------

fn diagonal_collapse() -> Result<String, String> {
    let mut total = 0;
    let mut hypotheses = 0;
    for (_, grid) in kinetic_grids() {
        let results: Vec<Result<bool, String>> = grid
            .par_iter()
            .map(|(f1, f2)| {
                let sys = planar(f1, f2);
                let v = check_theorem4_nonexistence(&sys);
                if v.is_counterexample() {
                    return Err(format!("counterexample {sys}"));
                }
                Ok(v.hypotheses_hold())
            })
            .collect();
        total += grid.len();
        for r in results {
            hypotheses += usize::from(r?);
        }
    }
    // f2 = −(ρ1/ρ2) f1 with coefficients of magnitude {0, 1/2, 1}: conserving by construction.
    let m = [int(0), frac(1, 2), int(1)];
    let neg: Vec<Rational> = m.iter().map(|v| -v.clone()).collect();
    let both: Vec<Rational> = m.iter().cloned().chain(neg.iter().skip(1).cloned()).collect();
    let shapes = product(&[neg.clone(), both, m.to_vec(), neg, m.to_vec(), vec![int(0)]]);
    let mut conserving = 0;
    for (r1, r2) in [(1, 1), (1, 2), (2, 1)] {
        let ratio = frac(r1, r2);
        for f in &shapes {
            let f1: [Rational; 6] = std::array::from_fn(|i| f[i].clone());
            let f2: [Rational; 6] = std::array::from_fn(|i| -(&f[i] * &ratio));
            let sys = planar(&f1, &f2);
            ensure(is_kinetic(&sys), || format!("{sys} not kinetic"))?;
            let v = check_theorem4_nonexistence(&sys);
            ensure(v.conserving.is_some(), || format!("{sys} should conserve"))?;
            ensure(!v.is_counterexample(), || format!("counterexample {sys}"))?;
            conserving += 1;
            hypotheses += usize::from(v.hypotheses_hold());
        }
    }
    Ok(format!("{} systems, {hypotheses} meet all hypotheses, all zero", total + conserving))
}

fn binary_grid(family: BinaryFamily) -> Vec<BinaryFormParams> {
    let forms: Vec<(Rational, Rational, Rational)> = match family {
        BinaryFamily::EllipseHyperbola => {
            let mut v = Vec::new();
            for a in 1..=3 {
                for c in 1..=3 {
                    for b in -2..=2 {
                        if a * c != b * b {
                            v.push((int(a), int(b), int(c)));
                        }
                    }
                }
            }
            v
        }
        BinaryFamily::ParabolicPlus | BinaryFamily::ParabolicMinus => {
            [(1, 1, 1), (1, 2, 4), (4, 2, 1), (2, 2, 2), (1, 3, 9), (4, 6, 9)]
                .iter()
                .map(|&(a, b, c)| (int(a), int(b), int(c)))
                .collect()
        }
        BinaryFamily::Indefinite => {
            let mut v = Vec::new();
            for a in 1..=3 {
                for c in 1..=3 {
                    for b in [-2, -1, 1, 2] {
                        v.push((int(a), int(b), int(c)));
                    }
                }
            }
            v
        }
        BinaryFamily::RankOne => {
            let mut v = Vec::new();
            for a in 1..=3 {
                for b in [-2, -1, 1, 2] {
                    v.push((int(a), int(b), int(0)));
                }
            }
            v
        }
    };
    let free = family.free_parameters();
    let sets: Vec<Vec<Rational>> = free
        .iter()
        .map(|&n| if n == "S" { (-2..=2).map(int).collect() } else { (0..=2).map(int).collect() })
        .collect();
    let mut out = Vec::new();
    for (a, b, c) in forms {
        for values in product(&sets) {
            let mut p = BinaryFormParams::new(family, a.clone(), b.clone(), c.clone());
            for (n, v) in free.iter().zip(values) {
                p.set(n, v).unwrap();
            }
            out.push(p);
        }
    }
    out
}

/// `f1 = ρ2 h`, `f2 = −ρ1 h` with `h = −K x² + S xy + L y² − M x + N y`,
/// `K, L, M, N >= 0`.
fn matches_proportional_template(sys: &PolynomialSystem, rho: &[Rational]) -> bool {
    let h = sys.component(0).scale(&(Rational::one() / &rho[1]));
    if sys.component(1) != &h.scale(&-rho[0].clone()) {
        return false;
    }
    let c = |e: [u32; 2]| h.coeff(&crnkit::Monomial::new(e.to_vec()));
    !c([2, 0]).is_positive()
        && !c([0, 2]).is_negative()
        && !c([1, 0]).is_positive()
        && !c([0, 1]).is_negative()
        && c([0, 0]).is_zero()
}

fn binary_collapse() -> Result<String, String> {
    let mut parts = Vec::new();
    for family in BinaryFamily::ALL {
        let grid = binary_grid(family);
        let results: Vec<Result<bool, String>> = grid
            .par_iter()
            .map(|p| {
                let g = generate_binary_form_system(p).map_err(|e| format!("{}: {e}", p.describe()))?;
                let w = kinetic_conservation(&g.system);
                match (family, w) {
                    (BinaryFamily::ParabolicPlus, Some(w)) => {
                        if !matches_proportional_template(&g.system, w.rho()) {
                            return Err(format!("{} conserves but breaks the proportional form", p.describe()));
                        }
                        Ok(true)
                    }
                    (BinaryFamily::ParabolicPlus, None) => {
                        if !g.system.is_zero() {
                            return Err(format!("{} should conserve with (a, b)", p.describe()));
                        }
                        Ok(false)
                    }
                    (_, Some(_)) if !g.system.is_zero() => {
                        Err(format!("{} conserves but is nonzero: {}", p.describe(), g.system))
                    }
                    (_, w) => Ok(w.is_some()),
                }
            })
            .collect();
        let mut conserving = 0;
        for r in results {
            conserving += usize::from(r?);
        }
        parts.push(format!("{} {}/{}", family.name(), conserving, grid.len()));
    }
    Ok(format!("conserving/total: {}", parts.join(", ")))
}

fn collapse() -> Check {
    let t4 = diagonal_collapse()?;
    let bin = binary_collapse()?;
    Ok(format!("diagonal: {t4}; binary families {bin}"))
}

// 6 ------------------------------------------------------------------------

fn ellipse_and_hyperbola() -> Check {
    let ellipse = PolynomialSystem::parse(&["x", "y"], &["-x^2 - 2*x*y + 3*y^2", "2*x^2 - x*y - y^2"]).unwrap();
    let r = find_quadratic_first_integrals(&ellipse, SignatureFilter::Any);
    let expected = QuadraticCandidate::binary(int(2), int(1), int(3));
    ensure(r.candidate.as_ref() == Some(&expected), || format!("ellipse candidate {:?}", r.candidate))?;
    ensure(r.witness_basis.len() == 1, || "ellipse solution space is not one-dimensional".into())?;

    // This is the a = 1 instance of the template; its form shares the signature of (2, -3, 2).
    let hyperbola = PolynomialSystem::parse(&["x", "y"], &["3*x^2 - 5*x*y + 2*y^2", "x^2 - 4*x*y + 3*y^2"]).unwrap();
    let r = find_quadratic_first_integrals(&hyperbola, SignatureFilter::Indefinite);
    let found = r.candidate.ok_or("hyperbola: no indefinite first integral")?;
    ensure(found == QuadraticCandidate::binary(int(1), int(-3), int(2)), || format!("hyperbola candidate {found:?}"))?;
    let labelled = QuadraticCandidate::binary(int(2), int(-3), int(2)).signature();
    ensure(found.signature() == labelled, || "hyperbola signature differs from (2,-3,2)".into())?;

    let mut p = BinaryFormParams::new(BinaryFamily::EllipseHyperbola, int(2), int(1), int(3));
    p.k = int(1);
    p.l = int(1);
    let locus = equilibria_on_line_check(&p).map_err(|e| e.to_string())?;
    ensure(locus.vanishes, || "ellipse field does not vanish on y = x".into())?;
    Ok(format!("(2,1,3) recovered; hyperbola system gives (1,-3,2), {labelled:?} like (2,-3,2); {}", locus.description))
}

// 7 ------------------------------------------------------------------------

/// Rank of the 12-unknown log-family system by elimination over `Ratio<i64>`,
/// with coefficients built from exponent arithmetic alone.
fn log_family_oracle() -> (usize, Vec<Vec<num::Rational64>>) {
    use num::Rational64 as Q;
    let exps: [[i32; 2]; 6] = [[2, 0], [1, 1], [0, 2], [1, 0], [0, 1], [0, 0]];
    // y(x-1) = xy - y ; x(y-1) = xy - x
    let mult: [Vec<([i32; 2], i64)>; 2] = [vec![([1, 1], 1), ([0, 1], -1)], vec![([1, 1], 1), ([1, 0], -1)]];
    let mut rows: Vec<[i32; 2]> = Vec::new();
    let mut cols: Vec<Vec<([i32; 2], i64)>> = Vec::new();
    for m in &mult {
        for e in &exps {
            let col: Vec<([i32; 2], i64)> = m.iter().map(|(me, c)| ([me[0] + e[0], me[1] + e[1]], *c)).collect();
            for (mono, _) in &col {
                if !rows.contains(mono) {
                    rows.push(*mono);
                }
            }
            cols.push(col);
        }
    }
    let mut a: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| Q::from_integer(c.iter().filter(|(m, _)| m == r).map(|(_, v)| v).sum())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..12 {
        if let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) {
            a.swap(rank, p);
            for i in 0..a.len() {
                if i != rank && !a[i][col].is_zero() {
                    let f = a[i][col] / a[rank][col];
                    for j in 0..12 {
                        let d = f * a[rank][j];
                        a[i][j] -= d;
                    }
                }
            }
            rank += 1;
        }
    }
    (rank, a)
}

fn lotka_volterra() -> Check {
    let basis = solve_log_family();
    ensure(basis.len() == 1, || format!("solution space has dimension {}", basis.len()))?;
    let lv = PolynomialSystem::parse(&["x", "y"], &["x*y - x", "-x*y + y"]).unwrap();
    ensure(basis[0] == lv, || format!("spanned by {}", basis[0]))?;
    let (rank, reduced) = log_family_oracle();
    ensure(12 - rank == 1, || format!("oracle nullity {}", 12 - rank))?;
    // coefficient vector of the LV system: f1 = xy − x, f2 = −xy + y
    let v: [i64; 12] = [0, 1, 0, -1, 0, 0, 0, -1, 0, 0, 1, 0];
    let in_kernel = reduced
        .iter()
        .all(|row| row.iter().zip(v).map(|(a, b)| *a * num::Rational64::from_integer(b)).sum::<num::Rational64>().is_zero());
    ensure(in_kernel, || "oracle kernel does not contain the LV system".into())?;
    ensure(lotka_volterra_log_check(&lv).unwrap(), || "LV instance fails".into())?;
    Ok("dimension 1, spanned by {bxy - bx, -bxy + by}; independent elimination agrees".into())
}

// 8 ------------------------------------------------------------------------

fn rk4_drift() -> Check {
    let circle_field = PolynomialSystem::parse(&["x", "y"], &["2*y^2 - 3*x*y", "3*x^2 - 2*x*y"]).unwrap();
    let sphere_field = PolynomialSystem::parse(
        &["x", "y", "z"],
        &["2*y^2 + 3*z^2 - 4*x*y - 6*x*z", "4*x^2 + 5*z^2 - 2*x*y - 7*y*z", "6*x^2 + 7*y^2 - 3*x*z - 5*y*z"],
    )
    .unwrap();
    let r = 0.5f64.sqrt();
    let cases = [
        ("planar", circle_field, vec![1.0, 0.0], QuadraticCandidate::diagonal(&[int(1), int(1)])),
        ("spatial", sphere_field, vec![r, r, 0.0], QuadraticCandidate::diagonal(&[int(1), int(1), int(1)])),
    ];
    let mut parts = Vec::new();
    for (label, sys, x0, v) in &cases {
        let drift = |dt: f64| -> Result<f64, String> {
            let traj = integrate(sys, x0, &SimConfig::rk4(dt, 10.0), Some(v)).map_err(|e| e.to_string())?;
            Ok(drift_report(&traj).unwrap().max_abs_drift)
        };
        let d = drift(1e-3)?;
        let half = drift(5e-4)?;
        ensure(d <= DRIFT_BOUND, || format!("{label}: drift {d:e} exceeds {DRIFT_BOUND:e}"))?;
        let ratio = d / half;
        ensure(ratio >= ORDER_WINDOW.0 && ratio <= ORDER_WINDOW.1, || format!("{label}: halving ratio {ratio:.2}"))?;
        parts.push(format!("{label} drift {d:.2e}, halving ratio {ratio:.1}"));
    }
    Ok(parts.join("; "))
}

// 9 ------------------------------------------------------------------------

fn random_complex(rng: &mut ChaCha8Rng, species: usize) -> Complex {
    let n = rng.gen_range(0..=2);
    Complex::from_pairs((0..n).map(|_| (rng.gen_range(0..species), int(rng.gen_range(1..=2)))))
}

/// Random network; half of them only use steps that keep the molecule count,
/// so every species weight 1 conserves.
fn random_network(rng: &mut ChaCha8Rng) -> ReactionNetwork {
    loop {
        let m = rng.gen_range(2..=5);
        let balanced = rng.gen_bool(0.5);
        let r = rng.gen_range(1..=6);
        let mut steps = Vec::new();
        for i in 0..r {
            let reactant = random_complex(rng, m);
            let product = if balanced {
                let total: i64 = reactant.iter().map(|(_, c)| c.to_integer().try_into().unwrap_or(0i64)).sum();
                let mut left = total;
                let mut pairs = Vec::new();
                while left > 0 {
                    let take = rng.gen_range(1..=left);
                    pairs.push((rng.gen_range(0..m), int(take)));
                    left -= take;
                }
                Complex::from_pairs(pairs)
            } else {
                random_complex(rng, m)
            };
            steps.push(ReactionStep { reactant, product, rate: Rate::symbol(format!("k{i}")) });
        }
        let species = (0..m).map(|i| format!("S{i}")).collect();
        if let Ok(net) = ReactionNetwork::new(species, steps) {
            if net.validate().is_ok() {
                return net;
            }
        }
    }
}

fn conservation_implication() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let rates = [frac(1, 3), frac(1, 2), int(1), int(2), frac(7, 3), int(5)];
    let mut conserving = 0;
    for case in 0..RANDOM_NETWORKS {
        let net = random_network(&mut rng);
        let Some(w) = stoichiometric_conservation(&net) else { continue };
        conserving += 1;
        ensure(verify_conservation(&w, Target::Network(&net)).unwrap(), || format!("case {case}: witness fails"))?;
        let kinetic_w = ConservationVector::new(w.rho().to_vec(), Mode::Kinetic).unwrap();
        for _ in 0..BINDINGS_PER_NETWORK {
            let mut binding = ParameterBinding::new();
            for p in net.parameters() {
                binding.set(p, rates[rng.gen_range(0..rates.len())].clone()).unwrap();
            }
            let ode = induced_kinetic_ode(&net, &binding).map_err(|e| e.to_string())?;
            ensure(verify_conservation(&kinetic_w, Target::System(&ode)).unwrap(), || {
                format!("case {case}: {} conserves stoichiometrically but not kinetically", net.render())
            })?;
        }
    }
    ensure(conserving >= RANDOM_NETWORKS / 4, || format!("only {conserving} conserving networks sampled"))?;
    Ok(format!("{RANDOM_NETWORKS} networks, {conserving} conserving, each verified under {BINDINGS_PER_NETWORK} bindings"))
}

// ---------------------------------------------------------------------------

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "two-species network round trip", FAST_BUDGET, two_species_round_trip),
        (2, "cross-effect sign patterns", FAST_BUDGET, cross_effect_signs),
        (3, "Feinberg-Horn kinetic conservation", FAST_BUDGET, feinberg_horn),
        (4, "diagonal first integrals: soundness and grid completeness", GRID_BUDGET, diagonal_search),
        (5, "conservation collapse", GRID_BUDGET, collapse),
        (6, "ellipse and hyperbola systems", FAST_BUDGET, ellipse_and_hyperbola),
        (7, "logarithmic first integral family", FAST_BUDGET, lotka_volterra),
        (8, "RK4 invariant drift", DRIFT_BUDGET, rk4_drift),
        (9, "conservation implication on random networks", NETWORK_BUDGET, conservation_implication),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed <= budget {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.2?}, budget {budget:.0?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS {id} {name} ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {id} {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
