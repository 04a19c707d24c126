//! Command-line front end. [`run`] parses arguments, executes one subcommand
//! and returns the process exit code: 0 when the property holds or the command
//! succeeded, 1 when it does not hold, 2 on errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::conservation::{
    kinetic_conservation, kinetic_residual, stoichiometric_conservation, stoichiometric_residual,
    verify_conservation, ConservationReport, ConservationVector, Mode, Target,
};
use crate::kinetics::{
    canonical_realization, induced_kinetic_ode, negative_cross_effect, no_periodic_orbit_certificate, Verdict,
};
use crate::network::{ParameterBinding, ReactionNetwork};
use crate::poly::{parse_polynomial, Polynomial, PolynomialSystem};
use crate::qfi::{
    find_quadratic_first_integrals, generate_binary_form_system, generate_diagonal_system,
    generate_mixed_sign_system, generate_shifted_system, is_first_integral, lotka_volterra_log_check, BinaryFamily,
    BinaryFormParams, DiagonalParams, GeneratedSystem, MixedSignParams, QuadraticCandidate, SignatureFilter,
};
use crate::rational::{format_rational, frac, int, parse_rational, to_f64, Rational};
use crate::sim::{drift_report, integrate, Method, Projection, SimConfig, SimError};

/// Environment variable that disables ANSI colors when set.
pub const NO_COLOR_ENV: &str = "CRNKIT_NO_COLOR";

#[derive(Debug, Parser)]
#[command(name = "crnkit", version, about = "Mass-action kinetics and quadratic first integrals")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Parameter assignments `name=value`; repeat the flag or separate by
    /// whitespace. Vectors are `1,2`, matrices `0,2;3,0`.
    #[arg(long = "params", global = true, value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Write outputs and a manifest with SHA-256 digests into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Seed for randomized generation.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a network or system and print its normalized form.
    Parse { input: PathBuf },
    /// Print the induced mass-action ODE of a network.
    Odes { input: PathBuf },
    /// Decide one property of a network or system.
    Check {
        input: PathBuf,
        #[arg(long, value_enum)]
        what: CheckKind,
        /// Conservation weights to verify instead of searching, e.g. `1,1,2`.
        #[arg(long)]
        rho: Option<String>,
        /// Signature constraint for the first-integral search.
        #[arg(long, value_enum, default_value = "any")]
        filter: FilterArg,
        /// Quadratic first integral to verify instead of searching.
        #[arg(long)]
        candidate: Option<String>,
    },
    /// Generate a kinetic system with a known quadratic first integral.
    Generate {
        /// diagonal, mixed-sign, shifted, ellipse_hyperbola, parabolic_plus,
        /// parabolic_minus, indefinite or rank_one.
        #[arg(long, required_unless_present = "random")]
        family: Option<String>,
        /// Random diagonal system in this many variables (uses --seed).
        #[arg(long, conflicts_with = "family")]
        random: Option<usize>,
    },
    /// Canonical reaction network realizing a kinetic system.
    Realize { input: PathBuf },
    /// Integrate a system and report invariant drift.
    Simulate {
        input: PathBuf,
        /// Initial state, e.g. `1,0` or `sqrt(1/2),sqrt(1/2),0`.
        #[arg(long)]
        x0: String,
        #[arg(long, value_enum, default_value = "rk4")]
        method: MethodArg,
        #[arg(long, default_value = "1e-3")]
        dt: String,
        #[arg(long, default_value = "1e-9")]
        tol: String,
        #[arg(long = "t-end", default_value = "10")]
        t_end: String,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Quadratic invariant to monitor, e.g. `x^2 + y^2`.
        #[arg(long)]
        invariant: Option<String>,
        /// Project every step onto the invariant's level set.
        #[arg(long)]
        project: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Kinetic,
    ConserveStoich,
    ConserveKinetic,
    Qfi,
    LogLv,
    NoPeriodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    Any,
    PositiveDiagonal,
    Definite,
    Indefinite,
}

impl From<FilterArg> for SignatureFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Any => SignatureFilter::Any,
            FilterArg::PositiveDiagonal => SignatureFilter::PositiveDiagonal,
            FilterArg::Definite => SignatureFilter::Definite,
            FilterArg::Indefinite => SignatureFilter::Indefinite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Rk4,
    Rkf45,
}

/// What a command produced: printable text, a JSON report, whether the checked
/// property holds, and extra files for `--out`.
struct Outcome {
    text: String,
    json: Value,
    holds: bool,
    files: Vec<(String, Vec<u8>)>,
    /// Stdout in text mode when no `--out` is given, if different from `text`.
    stdout_override: Option<String>,
}

impl Outcome {
    fn new(text: String, json: Value, holds: bool) -> Self {
        Outcome { text, json, holds, files: Vec::new(), stdout_override: None }
    }
}

/// Failure that maps to exit code 1 rather than 2.
#[derive(Debug)]
struct Refuted(String);

impl std::fmt::Display for Refuted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Refuted {}

/// Parses `args` (including the program name), runs the command, writes
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let color = std::env::var_os(NO_COLOR_ENV).is_none() && !cli.json;
    match execute(&cli, color) {
        Ok(outcome) => match emit(&cli, &outcome, out) {
            Ok(()) => i32::from(!outcome.holds),
            Err(e) => {
                let _ = writeln!(err, "error: {e:#}");
                2
            }
        },
        Err(e) => {
            if let Some(r) = e.downcast_ref::<Refuted>() {
                let _ = writeln!(err, "{r}");
                return 1;
            }
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome, out: &mut dyn Write) -> Result<()> {
    if cli.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&outcome.json)?)?;
    } else if cli.out.is_none() && outcome.stdout_override.is_some() {
        write!(out, "{}", outcome.stdout_override.as_ref().expect("checked"))?;
    } else {
        write!(out, "{}", outcome.text)?;
    }
    if let Some(dir) = &cli.out {
        write_outputs(cli, outcome, dir)?;
    }
    Ok(())
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn write_outputs(cli: &Cli, outcome: &Outcome, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut files = vec![("report.json".to_string(), {
        let mut b = serde_json::to_vec_pretty(&outcome.json)?;
        b.push(b'\n');
        b
    })];
    files.extend(outcome.files.iter().cloned());
    let mut digests = BTreeMap::new();
    for (name, bytes) in &files {
        fs::write(dir.join(name), bytes).with_context(|| format!("writing {name}"))?;
        digests.insert(name.clone(), sha256_hex(bytes));
    }
    let inputs: Vec<Value> = input_path(&cli.command)
        .into_iter()
        .map(|p| {
            let digest = if p == Path::new("-") { None } else { fs::read(p).ok().map(|b| sha256_hex(&b)) };
            json!({ "path": p.display().to_string(), "sha256": digest })
        })
        .collect();
    let manifest = json!({
        "command": command_name(&cli.command),
        "config": command_config(&cli.command),
        "inputs": inputs,
        "params": split_params(&cli.params),
        "seed": cli.seed,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "outputs": digests,
    });
    let mut bytes = serde_json::to_vec_pretty(&manifest)?;
    bytes.push(b'\n');
    fs::write(dir.join("manifest.json"), bytes).context("writing manifest.json")?;
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Parse { .. } => "parse",
        Command::Odes { .. } => "odes",
        Command::Check { .. } => "check",
        Command::Generate { .. } => "generate",
        Command::Realize { .. } => "realize",
        Command::Simulate { .. } => "simulate",
    }
}

fn input_path(c: &Command) -> Option<&Path> {
    match c {
        Command::Parse { input }
        | Command::Odes { input }
        | Command::Check { input, .. }
        | Command::Realize { input }
        | Command::Simulate { input, .. } => Some(input),
        Command::Generate { .. } => None,
    }
}

fn command_config(c: &Command) -> Value {
    match c {
        Command::Check { what, rho, filter, candidate, .. } => json!({
            "what": format!("{what:?}"), "rho": rho, "filter": format!("{filter:?}"), "candidate": candidate,
        }),
        Command::Generate { family, random } => json!({ "family": family, "random": random }),
        Command::Simulate { x0, method, dt, tol, t_end, stride, invariant, project, .. } => json!({
            "x0": x0, "method": format!("{method:?}"), "dt": dt, "tol": tol, "t_end": t_end,
            "stride": stride, "invariant": invariant, "project": project,
        }),
        _ => Value::Null,
    }
}

fn split_params(raw: &[String]) -> Vec<String> {
    raw.iter().flat_map(|s| s.split_whitespace().map(str::to_string)).collect()
}

fn param_map(raw: &[String]) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for item in split_params(raw) {
        let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("parameter `{item}` is not of the form name=value"))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            bail!("parameter {k} given twice");
        }
    }
    Ok(map)
}

fn binding(raw: &[String]) -> Result<ParameterBinding> {
    Ok(ParameterBinding::parse_assignments(&split_params(raw))?)
}

fn paint(color: bool, holds: bool, word: &str) -> String {
    if color {
        let code = if holds { "32" } else { "31" };
        format!("\x1b[{code}m{word}\x1b[0m")
    } else {
        word.to_string()
    }
}

fn yes_no(color: bool, holds: bool) -> String {
    paint(color, holds, if holds { "yes" } else { "no" })
}

enum Input {
    Network(ReactionNetwork),
    System(PolynomialSystem),
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// JSON (by its keys), the `x' = ...` system format (a line with `'`), or the
/// reaction DSL.
fn load_input(path: &Path) -> Result<Input> {
    let text = read_input(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: Value = serde_json::from_str(trimmed).context("parsing JSON input")?;
        if value.get("species").is_some() {
            return Ok(Input::Network(ReactionNetwork::from_json(trimmed)?));
        }
        if value.get("variables").is_some() {
            return Ok(Input::System(PolynomialSystem::from_json(trimmed)?));
        }
        bail!("JSON input needs a `species` or `variables` key");
    }
    let is_system = text.lines().map(|l| l.split('#').next().unwrap_or("")).any(|l| l.contains('\''));
    if is_system {
        Ok(Input::System(PolynomialSystem::parse_text(&text)?))
    } else {
        Ok(Input::Network(crate::network::parse_network(&text)?))
    }
}

fn load_system(cli: &Cli, path: &Path) -> Result<PolynomialSystem> {
    match load_input(path)? {
        Input::System(s) => Ok(s),
        Input::Network(n) => Ok(induced_kinetic_ode(&n, &binding(&cli.params)?)?),
    }
}

fn execute(cli: &Cli, color: bool) -> Result<Outcome> {
    match &cli.command {
        Command::Parse { input } => cmd_parse(input),
        Command::Odes { input } => cmd_odes(cli, input),
        Command::Check { input, what, rho, filter, candidate } => {
            cmd_check(cli, input, *what, rho.as_deref(), *filter, candidate.as_deref(), color)
        }
        Command::Generate { family, random } => cmd_generate(cli, family.as_deref(), *random, color),
        Command::Realize { input } => cmd_realize(cli, input, color),
        Command::Simulate { input, x0, method, dt, tol, t_end, stride, invariant, project } => {
            let sim = SimArgs { x0, method: *method, dt, tol, t_end, stride: *stride, invariant, project: *project };
            cmd_simulate(cli, input, &sim)
        }
    }
}

fn cmd_parse(input: &Path) -> Result<Outcome> {
    Ok(match load_input(input)? {
        Input::Network(n) => {
            let text = n.render();
            let mut o = Outcome::new(text.clone(), json!({ "kind": "network", "network": n.to_json() }), true);
            o.files.push(("network.txt".into(), text.into_bytes()));
            o
        }
        Input::System(s) => {
            let text = s.to_text();
            let mut o = Outcome::new(text.clone(), json!({ "kind": "system", "system": s.to_json_value() }), true);
            o.files.push(("system.txt".into(), text.into_bytes()));
            o
        }
    })
}

fn cmd_odes(cli: &Cli, input: &Path) -> Result<Outcome> {
    let net = match load_input(input)? {
        Input::Network(n) => n,
        Input::System(_) => bail!("odes expects a reaction network"),
    };
    let sys = induced_kinetic_ode(&net, &binding(&cli.params)?)?;
    let text = format!("{sys}\n");
    let mut o = Outcome::new(text, json!({ "system": sys.to_json_value(), "rendered": sys.to_string() }), true);
    o.files.push(("system.txt".into(), sys.to_text().into_bytes()));
    Ok(o)
}

fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| parse_rational(s).map_err(Into::into)).collect()
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<Rational>>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';').map(parse_vector).collect()
}

fn rationals_text(v: &[Rational]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

fn cmd_check(
    cli: &Cli,
    input: &Path,
    what: CheckKind,
    rho: Option<&str>,
    filter: FilterArg,
    candidate: Option<&str>,
    color: bool,
) -> Result<Outcome> {
    match what {
        CheckKind::Kinetic => {
            let sys = load_system(cli, input)?;
            let report = negative_cross_effect(&sys);
            let mut text = format!("kinetic: {}\n", yes_no(color, report.is_kinetic));
            for v in &report.violations {
                let mono = v.monomial.clone();
                let term = Polynomial::term(sys.dim(), mono, v.coefficient.clone());
                text.push_str(&format!("  {}' has negative cross-effect {}\n", v.variable, term.render(sys.names())));
            }
            Ok(Outcome::new(text, report.to_json(), report.is_kinetic))
        }
        CheckKind::ConserveStoich => {
            let net = match load_input(input)? {
                Input::Network(n) => n,
                Input::System(_) => bail!("stoichiometric conservation needs a reaction network"),
            };
            match rho {
                Some(r) => {
                    let w = ConservationVector::new(parse_vector(r)?, Mode::Stoichiometric)?;
                    let holds = verify_conservation(&w, Target::Network(&net))?;
                    let residual = stoichiometric_residual(w.rho(), &net);
                    let report = ConservationReport {
                        mode: Mode::Stoichiometric,
                        exists: holds,
                        witness: Some(w.rho().iter().map(format_rational).collect()),
                        residual: (!holds).then(|| residual.iter().map(format_rational).collect()),
                    };
                    let mut text = format!("stoichiometric conservation with given rho: {}\n", yes_no(color, holds));
                    if !holds {
                        text.push_str(&format!("rho^T gamma = {}\n", rationals_text(&residual)));
                    }
                    Ok(Outcome::new(text, serde_json::to_value(report)?, holds))
                }
                None => {
                    let w = stoichiometric_conservation(&net);
                    conservation_outcome(Mode::Stoichiometric, w.as_ref(), color)
                }
            }
        }
        CheckKind::ConserveKinetic => {
            let sys = load_system(cli, input)?;
            match rho {
                Some(r) => {
                    let w = ConservationVector::new(parse_vector(r)?, Mode::Kinetic)?;
                    let holds = verify_conservation(&w, Target::System(&sys))?;
                    let residual = kinetic_residual(w.rho(), &sys);
                    let report = ConservationReport {
                        mode: Mode::Kinetic,
                        exists: holds,
                        witness: Some(w.rho().iter().map(format_rational).collect()),
                        residual: (!holds).then(|| vec![residual.render(sys.names())]),
                    };
                    let mut text = format!("kinetic conservation with given rho: {}\n", yes_no(color, holds));
                    if !holds {
                        text.push_str(&format!("sum rho_m f_m = {}\n", residual.render(sys.names())));
                    }
                    Ok(Outcome::new(text, serde_json::to_value(report)?, holds))
                }
                None => {
                    let w = kinetic_conservation(&sys);
                    conservation_outcome(Mode::Kinetic, w.as_ref(), color)
                }
            }
        }
        CheckKind::Qfi => {
            let sys = load_system(cli, input)?;
            let names = sys.names().to_vec();
            if let Some(c) = candidate {
                let v = parse_candidate(c, &names)?;
                let holds = is_first_integral(&v, &sys)?;
                let lie = crate::qfi::lie_derivative_quadratic(&v, &sys)?;
                let text = format!(
                    "first integral {}: {}\nLie derivative = {}\n",
                    v.render(&names),
                    yes_no(color, holds),
                    lie.render(&names)
                );
                let json = json!({
                    "found": holds, "candidate": v.to_json(&names), "lie_derivative": lie.render(&names),
                });
                return Ok(Outcome::new(text, json, holds));
            }
            let report = find_quadratic_first_integrals(&sys, filter.into());
            let mut text = format!("quadratic first integral: {}\n", yes_no(color, report.found));
            if let (Some(c), Some(s)) = (&report.candidate, report.signature) {
                let sig = serde_json::to_value(s)?;
                text.push_str(&format!("V = {} ({})\n", c.render(&names), sig.as_str().unwrap_or("")));
            }
            if !report.witness_basis.is_empty() {
                text.push_str(&format!("solution space dimension {}:\n", report.witness_basis.len()));
                for b in &report.witness_basis {
                    text.push_str(&format!("  {}\n", b.render(&names)));
                }
            }
            Ok(Outcome::new(text, report.to_json(&names), report.found))
        }
        CheckKind::LogLv => {
            let sys = load_system(cli, input)?;
            let holds = lotka_volterra_log_check(&sys)?;
            let text = format!("x + y - ln(x) - ln(y) is a first integral: {}\n", yes_no(color, holds));
            Ok(Outcome::new(text, json!({ "holds": holds }), holds))
        }
        CheckKind::NoPeriodic => {
            let sys = load_system(cli, input)?;
            let names = sys.names().to_vec();
            let v = match candidate {
                Some(c) => Some(parse_candidate(c, &names)?),
                None => find_quadratic_first_integrals(&sys, SignatureFilter::Any).candidate,
            };
            let cert = no_periodic_orbit_certificate(&sys, v.as_ref());
            let holds = cert.verdict == Verdict::Yes;
            let mut text = format!("no periodic orbit in the open orthant: {}\n", yes_no(color, holds));
            text.push_str(&format!("divergence = {}\n", cert.divergence_text));
            if let Some(v) = &v {
                text.push_str(&format!("first integral V = {}\n", v.render(&names)));
            }
            let mut json = serde_json::to_value(&cert)?;
            json["first_integral"] = v.map(|v| Value::String(v.render(&names))).unwrap_or(Value::Null);
            Ok(Outcome::new(text, json, holds))
        }
    }
}

fn conservation_outcome(mode: Mode, w: Option<&ConservationVector>, color: bool) -> Result<Outcome> {
    let label = match mode {
        Mode::Stoichiometric => "stoichiometric",
        Mode::Kinetic => "kinetic",
    };
    let mut text = format!("{label} mass conservation: {}\n", yes_no(color, w.is_some()));
    if let Some(w) = w {
        text.push_str(&format!("rho = {}\n", rationals_text(w.rho())));
    }
    let report = ConservationReport::found(mode, w);
    Ok(Outcome::new(text, serde_json::to_value(report)?, w.is_some()))
}

fn parse_candidate(text: &str, names: &[String]) -> Result<QuadraticCandidate> {
    let p = parse_polynomial(text, names)?;
    Ok(QuadraticCandidate::from_polynomial(&p)?)
}

fn take<'a>(map: &'a BTreeMap<String, String>, key: &str) -> Option<&'a str> {
    map.get(key).map(String::as_str)
}

fn check_keys(map: &BTreeMap<String, String>, allowed: &[&str], family: &str) -> Result<()> {
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => bail!("{family}: unknown parameter {k} (expected one of {})", allowed.join(", ")),
        None => Ok(()),
    }
}

fn cmd_generate(cli: &Cli, family: Option<&str>, random: Option<usize>, color: bool) -> Result<Outcome> {
    let map = param_map(&cli.params)?;
    let (label, generated) = if let Some(m) = random {
        if m == 0 {
            bail!("--random needs at least one variable");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed.unwrap_or(0));
        ("diagonal".to_string(), generate_diagonal_system(&random_diagonal(&mut rng, m))?)
    } else {
        let family = family.expect("clap requires --family without --random").replace('-', "_");
        let g = match family.as_str() {
            "diagonal" => {
                check_keys(&map, &["a", "K"], "diagonal")?;
                let k = parse_matrix(take(&map, "K").ok_or_else(|| anyhow!("diagonal: K is required"))?)?;
                let a = match take(&map, "a") {
                    Some(a) => parse_vector(a)?,
                    None => vec![Rational::one(); k.len()],
                };
                generate_diagonal_system(&DiagonalParams { a, k })?
            }
            "mixed_sign" => {
                check_keys(&map, &["a", "b", "A", "rho_x", "rho_y", "rho_z"], "mixed-sign")?;
                let a = parse_vector(take(&map, "a").unwrap_or("1"))?;
                let b = parse_vector(take(&map, "b").unwrap_or("1"))?;
                let coupling = parse_matrix(take(&map, "A").ok_or_else(|| anyhow!("mixed-sign: A is required"))?)?;
                let coupling = if a.is_empty() || b.is_empty() { vec![Vec::new(); a.len()] } else { coupling };
                let ones = |n: usize| vec![Rational::one(); n];
                let rho_x = take(&map, "rho_x").map(parse_vector).transpose()?.unwrap_or_else(|| ones(a.len()));
                let rho_y = take(&map, "rho_y").map(parse_vector).transpose()?.unwrap_or_else(|| ones(b.len()));
                let rho_z = take(&map, "rho_z").map(parse_rational).transpose()?.unwrap_or_else(Rational::one);
                generate_mixed_sign_system(&MixedSignParams { a, b, coupling, rho_x, rho_y, rho_z })?
            }
            "shifted" => {
                check_keys(&map, &["A", "B", "a", "b"], "shifted")?;
                let get = |k: &str| -> Result<Rational> {
                    Ok(take(&map, k).map(parse_rational).transpose()?.unwrap_or_else(Rational::zero))
                };
                generate_shifted_system(&get("A")?, &get("B")?, &get("a")?, &get("b")?)?
            }
            name => {
                let fam = BinaryFamily::from_name(name).ok_or_else(|| anyhow!("unknown family {name}"))?;
                let mut p = BinaryFormParams::new(fam, Rational::zero(), Rational::zero(), Rational::zero());
                for (k, v) in &map {
                    p.set(k, parse_rational(v)?)?;
                }
                generate_binary_form_system(&p)?
            }
        };
        (family, g)
    };
    generate_outcome(&label, &generated, color)
}

fn random_diagonal(rng: &mut ChaCha8Rng, m: usize) -> DiagonalParams {
    let weights = [frac(1, 2), int(1), int(2), int(3)];
    let couplings = [int(0), frac(1, 2), int(1), int(2), int(3)];
    let a = (0..m).map(|_| weights[rng.gen_range(0..weights.len())].clone()).collect();
    let k = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { int(0) } else { couplings[rng.gen_range(0..couplings.len())].clone() })
                .collect()
        })
        .collect();
    DiagonalParams { a, k }
}

fn generate_outcome(family: &str, g: &GeneratedSystem, color: bool) -> Result<Outcome> {
    let names = g.system.names().to_vec();
    let realization = canonical_realization(&g.system)?;
    let network = realization.network.render();
    let check = paint(color, true, "ok");
    let mut text = format!("family: {family}\n{}\n", g.system);
    text.push_str(&format!("first integral: V = {}\n", g.first_integral.render(&names)));
    text.push_str(&format!("kinetic: {check}\nLie derivative of V vanishes: {check}\n"));
    text.push_str("realization:\n");
    text.push_str(&network);
    let json = json!({
        "family": family,
        "system": g.system.to_json_value(),
        "rendered": g.system.to_string(),
        "first_integral": g.first_integral.to_json(&names),
        "network": realization.network.to_json(),
        "network_text": network,
        "realization_complete": realization.is_valid,
        "verification": { "kinetic": true, "first_integral": true },
    });
    let mut o = Outcome::new(text, json, true);
    o.files.push(("system.txt".into(), g.system.to_text().into_bytes()));
    o.files.push(("network.txt".into(), network.into_bytes()));
    Ok(o)
}

fn cmd_realize(cli: &Cli, input: &Path, color: bool) -> Result<Outcome> {
    let sys = load_system(cli, input)?;
    let report = negative_cross_effect(&sys);
    if !report.is_kinetic {
        let text = format!(
            "kinetic: {}\nno realization exists; {} negative cross-effect term(s)\n",
            yes_no(color, false),
            report.violations.len()
        );
        return Ok(Outcome::new(text, json!({ "realizable": false, "cross_effect": report.to_json() }), false));
    }
    let real = canonical_realization(&sys)?;
    let back = induced_kinetic_ode(&real.network, &ParameterBinding::new())?;
    let roundtrip = back.same_field(&sys);
    let text = real.network.render();
    let json = json!({
        "realizable": true,
        "network": real.network.to_json(),
        "network_text": text,
        "every_species_used": real.is_valid,
        "roundtrip": roundtrip,
    });
    let mut o = Outcome::new(text.clone(), json, roundtrip);
    o.files.push(("network.txt".into(), text.into_bytes()));
    Ok(o)
}

struct SimArgs<'a> {
    x0: &'a str,
    method: MethodArg,
    dt: &'a str,
    tol: &'a str,
    t_end: &'a str,
    stride: usize,
    invariant: &'a Option<String>,
    project: bool,
}

/// A rational literal or `sqrt(<rational>)`.
fn parse_real(text: &str) -> Result<f64> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return Ok(to_f64(&parse_rational(inner)?).sqrt());
    }
    Ok(to_f64(&parse_rational(t)?))
}

fn cmd_simulate(cli: &Cli, input: &Path, a: &SimArgs<'_>) -> Result<Outcome> {
    let sys = load_system(cli, input)?;
    let x0 = a.x0.split(',').map(parse_real).collect::<Result<Vec<f64>>>()?;
    let method = match a.method {
        MethodArg::Rk4 => Method::Rk4 { dt: parse_real(a.dt)? },
        MethodArg::Rkf45 => Method::Rkf45 { tol: parse_real(a.tol)?, initial_step: parse_real(a.dt)? },
    };
    let projection = if a.project { Projection::LevelSet } else { Projection::Off };
    let cfg = SimConfig { method, t_end: parse_real(a.t_end)?, stride: a.stride, projection };
    let v = a.invariant.as_deref().map(|s| parse_candidate(s, sys.names())).transpose()?;
    let traj = match integrate(&sys, &x0, &cfg, v.as_ref()) {
        Ok(t) => t,
        Err(e @ (SimError::BlowUp { .. } | SimError::Positivity { .. } | SimError::StepUnderflow { .. })) => {
            return Err(Refuted(format!("simulation aborted: {e}")).into());
        }
        Err(e) => return Err(e.into()),
    };
    let csv = traj.to_csv_string();
    let drift = drift_report(&traj).ok();
    let mut text = format!("samples: {}\nfinal state: {:?}\n", traj.len(), traj.last_state());
    if let Some(d) = &drift {
        text.push_str(&format!(
            "max |V - V0| = {:e}\nfinal V - V0 = {:e}\npositivity events: {}\n",
            d.max_abs_drift, d.final_drift, d.positivity_events
        ));
    }
    let json = json!({
        "samples": traj.len(),
        "final_time": traj.times.last(),
        "final_state": traj.last_state(),
        "config": cfg,
        "drift": drift,
        "positivity_events": traj.positivity_events,
    });
    let mut o = Outcome::new(text, json, true);
    o.stdout_override = Some(csv.clone());
    o.files.push(("trajectory.csv".into(), csv.into_bytes()));
    Ok(o)
}
