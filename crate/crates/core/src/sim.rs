//! Floating-point integration of polynomial systems with invariant drift
//! monitoring.
//!
//! Exact modules never read simulation output. States stay in the closed
//! nonnegative orthant: overshoot down to `-1e-12` is clamped to zero and
//! recorded, anything below aborts the run.

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::poly::PolynomialSystem;
use crate::qfi::{is_positive_diagonal, QuadraticCandidate};
use crate::rational::to_f64;

/// Largest negative overshoot that is clamped instead of rejected.
pub const POSITIVITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("initial state has {found} entries, system has {expected} variables")]
    DimensionMismatch { found: usize, expected: usize },
    #[error("initial state must be finite and nonnegative (entry {index} is {value})")]
    InvalidInitialState { index: usize, value: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("state became non-finite after t = {last_time}")]
    BlowUp { last_time: f64 },
    #[error("component {component} reached {value} at t = {time}")]
    Positivity { time: f64, component: usize, value: f64 },
    #[error("level-set projection needs a positive diagonal quadratic invariant without linear part")]
    ProjectionUnsupported,
    #[error("step size underflow at t = {time}")]
    StepUnderflow { time: f64 },
    #[error("trajectory has no invariant attached")]
    NoInvariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    /// Classical fourth order Runge–Kutta with constant step.
    Rk4 { dt: f64 },
    /// Runge–Kutta–Fehlberg 4(5) with step control on the mixed error
    /// `|e_i| / (1 + |x_i|)`.
    Rkf45 { tol: f64, initial_step: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Projection {
    #[default]
    Off,
    /// Rescale each accepted state onto `{V = V(x0)}`.
    LevelSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub method: Method,
    pub t_end: f64,
    /// Record every `stride`-th accepted step; the final state is always
    /// recorded.
    pub stride: usize,
    pub projection: Projection,
}

impl SimConfig {
    pub fn rk4(dt: f64, t_end: f64) -> Self {
        SimConfig { method: Method::Rk4 { dt }, t_end, stride: 1, projection: Projection::Off }
    }

    pub fn rkf45(tol: f64, t_end: f64) -> Self {
        SimConfig {
            method: Method::Rkf45 { tol, initial_step: 1e-3 },
            t_end,
            stride: 1,
            projection: Projection::Off,
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    pub fn with_projection(mut self, projection: Projection) -> Self {
        self.projection = projection;
        self
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let positive = |v: f64, what: &str| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(SimError::Config(format!("{what} must be positive")))
            }
        };
        positive(self.t_end, "t_end")?;
        match self.method {
            Method::Rk4 { dt } => positive(dt, "step")?,
            Method::Rkf45 { tol, initial_step } => {
                positive(tol, "tolerance")?;
                positive(initial_step, "initial step")?;
            }
        }
        if self.stride == 0 {
            return Err(SimError::Config("stride must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityEvent {
    pub time: f64,
    pub component: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub names: Vec<String>,
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub invariant_values: Option<Vec<f64>>,
    pub positivity_events: Vec<PositivityEvent>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> &[f64] {
        self.states.last().expect("trajectory holds the initial state")
    }

    /// Header `t,<names>[,V]`, one row per sample, shortest round-trip float
    /// formatting.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string()];
        header.extend(self.names.iter().cloned());
        if self.invariant_values.is_some() {
            header.push("V".into());
        }
        w.write_record(&header)?;
        for (i, (t, x)) in self.times.iter().zip(&self.states).enumerate() {
            let mut row = vec![t.to_string()];
            row.extend(x.iter().map(f64::to_string));
            if let Some(v) = &self.invariant_values {
                row.push(v[i].to_string());
            }
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftReport {
    pub max_abs_drift: f64,
    pub final_drift: f64,
    pub positivity_events: usize,
}

/// Drift of the attached invariant relative to its initial value.
pub fn drift_report(traj: &Trajectory) -> Result<DriftReport, SimError> {
    let values = traj.invariant_values.as_ref().ok_or(SimError::NoInvariant)?;
    let v0 = values[0];
    let max_abs_drift = values.iter().map(|v| (v - v0).abs()).fold(0.0, f64::max);
    let final_drift = values.last().map(|v| v - v0).unwrap_or(0.0);
    Ok(DriftReport { max_abs_drift, final_drift, positivity_events: traj.positivity_events.len() })
}

/// Largest `|ρᵀx(t) − ρᵀx(0)| / |ρᵀx(0)|` along a trajectory.
pub fn linear_drift(traj: &Trajectory, rho: &[f64]) -> f64 {
    let dot = |x: &[f64]| x.iter().zip(rho).map(|(a, b)| a * b).sum::<f64>();
    let m0 = dot(&traj.states[0]);
    let scale = if m0 == 0.0 { 1.0 } else { m0.abs() };
    traj.states.iter().map(|x| (dot(x) - m0).abs() / scale).fold(0.0, f64::max)
}

/// `(c, [(var, e)])`: coefficient and the variables with nonzero exponent.
type CompiledTerm = (f64, Vec<(usize, i32)>);

/// Sparse float copy of a polynomial system, one term list per component.
struct CompiledField {
    components: Vec<Vec<CompiledTerm>>,
}

impl CompiledField {
    fn new(sys: &PolynomialSystem) -> Self {
        let components = sys
            .components()
            .iter()
            .map(|f| {
                f.terms()
                    .map(|(m, c)| {
                        let powers = m
                            .exponents()
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(i, &e)| (i, e as i32))
                            .collect();
                        (to_f64(c), powers)
                    })
                    .collect()
            })
            .collect();
        CompiledField { components }
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        for (o, terms) in out.iter_mut().zip(&self.components) {
            *o = terms
                .iter()
                .map(|(c, powers)| powers.iter().fold(*c, |acc, &(i, e)| acc * x[i].powi(e)))
                .sum();
        }
    }
}

struct Invariant {
    q: Vec<Vec<f64>>,
    linear: Vec<f64>,
    constant: f64,
}

impl Invariant {
    fn new(v: &QuadraticCandidate) -> Self {
        Invariant {
            q: v.q().iter().map(|r| r.iter().map(to_f64).collect()).collect(),
            linear: v.linear().iter().map(to_f64).collect(),
            constant: to_f64(v.constant()),
        }
    }

    fn quadratic(&self, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for (i, row) in self.q.iter().enumerate() {
            for (j, q) in row.iter().enumerate() {
                if *q != 0.0 {
                    s += q * x[i] * x[j];
                }
            }
        }
        s
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.quadratic(x) + self.linear.iter().zip(x).map(|(b, v)| b * v).sum::<f64>() + self.constant
    }
}

struct Stepper<'a> {
    field: &'a CompiledField,
    k: [Vec<f64>; 6],
    tmp: Vec<f64>,
}

impl<'a> Stepper<'a> {
    fn new(field: &'a CompiledField, dim: usize) -> Self {
        Stepper { field, k: std::array::from_fn(|_| vec![0.0; dim]), tmp: vec![0.0; dim] }
    }

    /// Evaluates `f(x + h Σ_j a_j k_j)` into `k[slot]`.
    fn stage(&mut self, x: &[f64], h: f64, a: &[f64], slot: usize) {
        for i in 0..x.len() {
            self.tmp[i] = x[i] + h * a.iter().enumerate().map(|(j, aj)| aj * self.k[j][i]).sum::<f64>();
        }
        let (tmp, k) = (&self.tmp, &mut self.k);
        self.field.eval(tmp, &mut k[slot]);
    }

    fn rk4(&mut self, x: &[f64], h: f64) -> Vec<f64> {
        self.field.eval(x, &mut self.k[0]);
        self.stage(x, h, &[0.5], 1);
        self.stage(x, h, &[0.0, 0.5], 2);
        self.stage(x, h, &[0.0, 0.0, 1.0], 3);
        (0..x.len())
            .map(|i| x[i] + h / 6.0 * (self.k[0][i] + 2.0 * self.k[1][i] + 2.0 * self.k[2][i] + self.k[3][i]))
            .collect()
    }

    /// Fifth-order state and the embedded error estimate.
    fn rkf45(&mut self, x: &[f64], h: f64) -> (Vec<f64>, f64) {
        self.field.eval(x, &mut self.k[0]);
        self.stage(x, h, &[1.0 / 4.0], 1);
        self.stage(x, h, &[3.0 / 32.0, 9.0 / 32.0], 2);
        self.stage(x, h, &[1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0], 3);
        self.stage(x, h, &[439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0], 4);
        self.stage(x, h, &[-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0], 5);
        let b5 = [16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0];
        let b4 = [25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -1.0 / 5.0, 0.0];
        let mut next = vec![0.0; x.len()];
        let mut err: f64 = 0.0;
        for i in 0..x.len() {
            let (mut s5, mut s4) = (0.0, 0.0);
            for j in 0..6 {
                s5 += b5[j] * self.k[j][i];
                s4 += b4[j] * self.k[j][i];
            }
            next[i] = x[i] + h * s5;
            err = err.max((h * (s5 - s4)).abs() / (1.0 + next[i].abs()));
        }
        (next, err)
    }
}

struct Recorder<'a> {
    traj: Trajectory,
    invariant: Option<&'a Invariant>,
}

impl Recorder<'_> {
    fn push(&mut self, t: f64, x: &[f64]) {
        self.traj.times.push(t);
        self.traj.states.push(x.to_vec());
        if let (Some(v), Some(values)) = (self.invariant, self.traj.invariant_values.as_mut()) {
            values.push(v.eval(x));
        }
    }
}

/// Clamps small negative overshoot, rejects non-finite or large negative
/// states and applies the level-set projection.
fn accept(
    x: &mut [f64],
    t: f64,
    last_t: f64,
    events: &mut Vec<PositivityEvent>,
    projection: Option<(&Invariant, f64)>,
) -> Result<(), SimError> {
    for (component, v) in x.iter_mut().enumerate() {
        if !v.is_finite() {
            return Err(SimError::BlowUp { last_time: last_t });
        }
        if *v < -POSITIVITY_TOLERANCE {
            return Err(SimError::Positivity { time: t, component, value: *v });
        }
        if *v < 0.0 {
            log::debug!("clamping component {component} from {v} at t = {t}");
            events.push(PositivityEvent { time: t, component, value: *v });
            *v = 0.0;
        }
    }
    if let Some((inv, target)) = projection {
        let q = inv.quadratic(x);
        if q > 0.0 {
            let s = (target / q).sqrt();
            x.iter_mut().for_each(|v| *v *= s);
        }
    }
    Ok(())
}

/// Integrates `x' = f(x)` from `x0` over `[0, t_end]`.
pub fn integrate(
    sys: &PolynomialSystem,
    x0: &[f64],
    cfg: &SimConfig,
    invariant: Option<&QuadraticCandidate>,
) -> Result<Trajectory, SimError> {
    cfg.validate()?;
    if x0.len() != sys.dim() {
        return Err(SimError::DimensionMismatch { found: x0.len(), expected: sys.dim() });
    }
    if let Some((index, &value)) = x0.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
        return Err(SimError::InvalidInitialState { index, value });
    }
    let inv = invariant.map(Invariant::new);
    let projection = match cfg.projection {
        Projection::Off => None,
        Projection::LevelSet => {
            let v = invariant.ok_or(SimError::ProjectionUnsupported)?;
            if !is_positive_diagonal(v) || v.linear().iter().any(|b| !num::Zero::is_zero(b)) {
                return Err(SimError::ProjectionUnsupported);
            }
            let inv = inv.as_ref().expect("present with the candidate");
            Some((inv, inv.quadratic(x0)))
        }
    };
    let field = CompiledField::new(sys);
    let mut stepper = Stepper::new(&field, sys.dim());
    let mut rec = Recorder {
        traj: Trajectory {
            names: sys.names().to_vec(),
            times: Vec::new(),
            states: Vec::new(),
            invariant_values: inv.as_ref().map(|_| Vec::new()),
            positivity_events: Vec::new(),
        },
        invariant: inv.as_ref(),
    };
    let mut x = x0.to_vec();
    rec.push(0.0, &x);
    let mut events = Vec::new();
    match cfg.method {
        Method::Rk4 { dt } => {
            let full = (cfg.t_end / dt * (1.0 + 1e-12)).floor() as usize;
            let remainder = cfg.t_end - full as f64 * dt;
            let tail = remainder > dt * 1e-9;
            let steps = full + usize::from(tail);
            let mut t_prev = 0.0;
            for n in 1..=steps {
                let (t, h) = if n > full { (cfg.t_end, remainder) } else { (n as f64 * dt, dt) };
                let mut next = stepper.rk4(&x, h);
                accept(&mut next, t, t_prev, &mut events, projection)?;
                x = next;
                t_prev = t;
                if n % cfg.stride == 0 || n == steps {
                    rec.push(if n == steps { cfg.t_end } else { t }, &x);
                }
            }
        }
        Method::Rkf45 { tol, initial_step } => {
            let mut t = 0.0;
            let mut h = initial_step.min(cfg.t_end);
            let mut n = 0usize;
            let min_step = cfg.t_end * 1e-14;
            while t < cfg.t_end {
                let last = t + h >= cfg.t_end;
                if last {
                    h = cfg.t_end - t;
                }
                let (mut next, err) = stepper.rkf45(&x, h);
                if !err.is_finite() || err > tol {
                    let factor = if err.is_finite() { (0.84 * (tol / err).powf(0.25)).max(0.1) } else { 0.1 };
                    h *= factor;
                    if h < min_step {
                        return Err(SimError::StepUnderflow { time: t });
                    }
                    continue;
                }
                let t_next = if last { cfg.t_end } else { t + h };
                accept(&mut next, t_next, t, &mut events, projection)?;
                x = next;
                t = t_next;
                n += 1;
                if n.is_multiple_of(cfg.stride) || last {
                    rec.push(t, &x);
                }
                let grow = if err == 0.0 { 4.0 } else { (0.84 * (tol / err).powf(0.25)).clamp(0.1, 4.0) };
                h *= grow;
            }
        }
    }
    rec.traj.positivity_events = events;
    Ok(rec.traj)
}
