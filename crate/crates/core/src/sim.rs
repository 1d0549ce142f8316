//! Floating-point integration of the classical Calogero-Moser flow
//! `q̇_i = p_i`, `ṗ_i = Σ_{j≠i} 2k²(q_i − q_j)^{-3}`, with conserved-quantity
//! diagnostics from the Lax matrix.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_COLLISION_THRESHOLD: f64 = 1e-8;

/// Relative drift tolerance for the reference run.
pub const DRIFT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("particles {i} and {j} within {sep:e} at t = {t}")]
    Collision { t: f64, i: usize, j: usize, sep: f64 },
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Integrator {
    Rk4,
    Leapfrog,
}

impl FromStr for Integrator {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rk4" => Ok(Integrator::Rk4),
            "leapfrog" => Ok(Integrator::Leapfrog),
            other => Err(SimError::InvalidConfig(format!("unknown integrator {other}"))),
        }
    }
}

impl fmt::Display for Integrator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Integrator::Rk4 => "rk4",
            Integrator::Leapfrog => "leapfrog",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimState {
    pub t: f64,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

impl SimState {
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Self {
        SimState { t: 0.0, q, p }
    }

    /// Smallest pairwise separation with its pair.
    pub fn closest_pair(&self) -> Option<(usize, usize, f64)> {
        let n = self.q.len();
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..n {
            for j in i + 1..n {
                let sep = (self.q[i] - self.q[j]).abs();
                if best.is_none_or(|(_, _, b)| sep < b) {
                    best = Some((i, j, sep));
                }
            }
        }
        best
    }

    fn check(&self, threshold: f64) -> Result<(), SimError> {
        if self.q.iter().chain(&self.p).any(|x| !x.is_finite()) {
            return Err(SimError::NonFinite { t: self.t });
        }
        match self.closest_pair() {
            Some((i, j, sep)) if sep <= threshold => Err(SimError::Collision { t: self.t, i, j, sep }),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub k: f64,
    pub dt: f64,
    pub t_end: f64,
    pub initial: SimState,
    pub integrator: Integrator,
    /// Record diagnostics every this many steps (the final state is always recorded).
    pub cadence: usize,
    pub collision_threshold: f64,
}

impl SimConfig {
    /// The reference run: three particles, `k = 1`, RK4 at `dt = 1e−3` to `t = 10`.
    pub fn reference() -> Self {
        SimConfig {
            n: 3,
            k: 1.0,
            dt: 1e-3,
            t_end: 10.0,
            initial: SimState::new(vec![-1.0, 0.2, 1.5], vec![0.8, 0.1, -0.6]),
            integrator: Integrator::Rk4,
            cadence: 10,
            collision_threshold: DEFAULT_COLLISION_THRESHOLD,
        }
    }

    /// Evenly spaced particles at rest on `[−(n−1)/2, (n−1)/2]` with a small
    /// deterministic velocity profile.
    pub fn spread(n: usize, k: f64) -> Self {
        let q = (0..n).map(|i| i as f64 - (n as f64 - 1.0) / 2.0).collect();
        let p = (0..n).map(|i| 0.3 * ((i as f64) * 1.7).sin()).collect();
        SimConfig {
            n,
            k,
            initial: SimState::new(q, p),
            ..Self::reference()
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: &str| Err(SimError::InvalidConfig(m.to_string()));
        if self.n < 2 {
            return bad("n must be at least 2");
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt must be positive");
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad("t_end must be positive");
        }
        if self.cadence == 0 {
            return bad("cadence must be positive");
        }
        if self.initial.q.len() != self.n || self.initial.p.len() != self.n {
            return bad("initial state does not have n particles");
        }
        self.initial.check(self.collision_threshold)
    }
}

/// `(q̇, ṗ)` at a state.
pub fn rhs(state: &SimState, k: f64, threshold: f64) -> Result<(Vec<f64>, Vec<f64>), SimError> {
    state.check(threshold)?;
    Ok((state.p.clone(), forces(&state.q, k)))
}

fn forces(q: &[f64], k: f64) -> Vec<f64> {
    let n = q.len();
    let mut f = vec![0.0; n];
    let k2 = 2.0 * k * k;
    for i in 0..n {
        for j in i + 1..n {
            let d = q[i] - q[j];
            let t = k2 / (d * d * d);
            f[i] += t;
            f[j] -= t;
        }
    }
    f
}

/// `L_rr = p_r`, `L_rs = ik/(q_r − q_s)`, row-major.
pub fn lax_matrix(q: &[f64], p: &[f64], k: f64) -> Vec<Complex64> {
    let n = q.len();
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    for r in 0..n {
        for s in 0..n {
            l[r * n + s] = if r == s {
                Complex64::new(p[r], 0.0)
            } else {
                Complex64::new(0.0, k / (q[r] - q[s]))
            };
        }
    }
    l
}

/// `tr L^m` for `m = 1..=n`.
pub fn power_traces(q: &[f64], p: &[f64], k: f64) -> Vec<Complex64> {
    let n = q.len();
    let l = lax_matrix(q, p, k);
    let mut power = l.clone();
    let mut out = Vec::with_capacity(n);
    for m in 1..=n {
        if m > 1 {
            let mut next = vec![Complex64::new(0.0, 0.0); n * n];
            for r in 0..n {
                for t in 0..n {
                    let a = power[r * n + t];
                    for s in 0..n {
                        next[r * n + s] += a * l[t * n + s];
                    }
                }
            }
            power = next;
        }
        out.push((0..n).map(|r| power[r * n + r]).sum());
    }
    out
}

/// `I_m = (1/m) Re tr L^m`.
pub fn integrals(q: &[f64], p: &[f64], k: f64) -> Vec<f64> {
    power_traces(q, p, k)
        .iter()
        .enumerate()
        .map(|(idx, t)| t.re / (idx + 1) as f64)
        .collect()
}

/// Closed forms `Σp`, `½Σp² + k²Σ_{i<j} q_ij^{-2}`, and
/// `⅓Σp³ + k² Σ_r p_r Σ_{s≠r} q_rs^{-2}` (the last only for `n ≥ 3`).
pub fn closed_form_integrals(q: &[f64], p: &[f64], k: f64) -> Vec<f64> {
    let n = q.len();
    let k2 = k * k;
    let i1: f64 = p.iter().sum();
    let mut i2: f64 = 0.5 * p.iter().map(|x| x * x).sum::<f64>();
    let mut i3: f64 = p.iter().map(|x| x * x * x).sum::<f64>() / 3.0;
    for r in 0..n {
        for s in 0..n {
            if r != s {
                let inv2 = 1.0 / (q[r] - q[s]).powi(2);
                if r < s {
                    i2 += k2 * inv2;
                }
                i3 += k2 * p[r] * inv2;
            }
        }
    }
    let mut out = vec![i1, i2];
    if n >= 3 {
        out.push(i3);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub integrals: Vec<f64>,
    pub closed_form: Vec<f64>,
    /// Largest `|Im tr L^m|`, zero up to rounding.
    pub trace_imag: f64,
}

impl Sample {
    fn of(state: &SimState, k: f64) -> Self {
        let traces = power_traces(&state.q, &state.p, k);
        Sample {
            t: state.t,
            q: state.q.clone(),
            p: state.p.clone(),
            integrals: traces.iter().enumerate().map(|(i, t)| t.re / (i + 1) as f64).collect(),
            closed_form: closed_form_integrals(&state.q, &state.p, k),
            trace_imag: traces.iter().map(|t| t.im.abs()).fold(0.0, f64::max),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub final_state: SimState,
    pub steps: usize,
}

fn axpy(x: &[f64], a: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(xi, yi)| xi + a * yi).collect()
}

fn rk4_step(s: &SimState, h: f64, k: f64, threshold: f64) -> Result<SimState, SimError> {
    let at = |q: Vec<f64>, p: Vec<f64>, t: f64| SimState { t, q, p };
    let (k1q, k1p) = rhs(s, k, threshold)?;
    let s2 = at(axpy(&s.q, h / 2.0, &k1q), axpy(&s.p, h / 2.0, &k1p), s.t + h / 2.0);
    let (k2q, k2p) = rhs(&s2, k, threshold)?;
    let s3 = at(axpy(&s.q, h / 2.0, &k2q), axpy(&s.p, h / 2.0, &k2p), s.t + h / 2.0);
    let (k3q, k3p) = rhs(&s3, k, threshold)?;
    let s4 = at(axpy(&s.q, h, &k3q), axpy(&s.p, h, &k3p), s.t + h);
    let (k4q, k4p) = rhs(&s4, k, threshold)?;
    let combine = |x: &[f64], a: &[f64], b: &[f64], c: &[f64], d: &[f64]| -> Vec<f64> {
        (0..x.len()).map(|i| x[i] + h / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i])).collect()
    };
    Ok(at(combine(&s.q, &k1q, &k2q, &k3q, &k4q), combine(&s.p, &k1p, &k2p, &k3p, &k4p), s.t + h))
}

/// Kick-drift-kick.
fn leapfrog_step(s: &SimState, h: f64, k: f64, threshold: f64) -> Result<SimState, SimError> {
    s.check(threshold)?;
    let half = axpy(&s.p, h / 2.0, &forces(&s.q, k));
    let q = axpy(&s.q, h, &half);
    let mid = SimState { t: s.t + h, q, p: half };
    mid.check(threshold)?;
    let p = axpy(&mid.p, h / 2.0, &forces(&mid.q, k));
    Ok(SimState { p, ..mid })
}

/// Integrate from `config.initial` to `t_end`; the last step is shortened to land on `t_end`.
pub fn integrate(config: &SimConfig) -> Result<Trajectory, SimError> {
    config.validate()?;
    let step = match config.integrator {
        Integrator::Rk4 => rk4_step,
        Integrator::Leapfrog => leapfrog_step,
    };
    let steps = (config.t_end / config.dt - 1e-9).ceil() as usize;
    let mut state = config.initial.clone();
    let mut samples = vec![Sample::of(&state, config.k)];
    for i in 1..=steps {
        let h = if i == steps { config.t_end - state.t } else { config.dt };
        state = step(&state, h, config.k, config.collision_threshold)?;
        if i == steps {
            state.t = config.t_end;
        }
        state.check(config.collision_threshold)?;
        if i % config.cadence == 0 || i == steps {
            samples.push(Sample::of(&state, config.k));
        }
    }
    Ok(Trajectory {
        samples,
        final_state: state,
        steps,
    })
}

/// Independent trajectories in parallel, results in input order.
pub fn integrate_batch(configs: &[SimConfig]) -> Vec<Result<Trajectory, SimError>> {
    configs.par_iter().map(integrate).collect()
}

/// `max_t |x(t) − x(0)| / max(|x(0)|, 1)`.
fn drift(series: impl Iterator<Item = f64> + Clone) -> f64 {
    let Some(x0) = series.clone().next() else {
        return 0.0;
    };
    let scale = x0.abs().max(1.0);
    series.map(|x| (x - x0).abs() / scale).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    /// Drift of `I_m = (1/m) tr L^m`, `m = 1..=n`.
    pub integrals: Vec<f64>,
    /// Drift of the closed-form `I_1`, `I_2`, `I_3`.
    pub closed_form: Vec<f64>,
    pub total_momentum: f64,
    pub trace_imag: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl DriftReport {
    pub fn max_drift(&self) -> f64 {
        self.integrals.iter().chain(&self.closed_form).copied().fold(0.0, f64::max)
    }
}

pub fn drift_report(traj: &Trajectory, tolerance: f64) -> DriftReport {
    let s = &traj.samples;
    let width = s.first().map_or(0, |x| x.integrals.len());
    let cwidth = s.first().map_or(0, |x| x.closed_form.len());
    let integrals: Vec<f64> = (0..width).map(|m| drift(s.iter().map(move |x| x.integrals[m]))).collect();
    let closed_form: Vec<f64> = (0..cwidth).map(|m| drift(s.iter().map(move |x| x.closed_form[m]))).collect();
    let total_momentum = drift(s.iter().map(|x| x.p.iter().sum::<f64>()));
    let trace_imag = s.iter().map(|x| x.trace_imag).fold(0.0, f64::max);
    let passed = integrals.iter().chain(&closed_form).all(|d| *d < tolerance);
    DriftReport {
        integrals,
        closed_form,
        total_momentum,
        trace_imag,
        tolerance,
        passed,
    }
}

/// Observed order `log2(e(dt) / e(dt/2))` from the `I_2` drift of two runs.
pub fn observed_order(config: &SimConfig, dt: f64) -> Result<f64, SimError> {
    let run = |h: f64| -> Result<f64, SimError> {
        let traj = integrate(&SimConfig { dt: h, ..config.clone() })?;
        Ok(drift_report(&traj, f64::INFINITY).integrals[1])
    };
    let coarse = run(dt)?;
    let fine = run(dt / 2.0)?;
    Ok((coarse / fine).log2())
}

/// Integrate to `t_end`, negate momenta, integrate again; the distance of the
/// end point from the time-reversed initial state.
pub fn time_reversal_error(config: &SimConfig) -> Result<f64, SimError> {
    let forward = integrate(config)?.final_state;
    let back = SimConfig {
        initial: SimState::new(forward.q, forward.p.iter().map(|x| -x).collect()),
        ..config.clone()
    };
    let end = integrate(&back)?.final_state;
    let dq = end.q.iter().zip(&config.initial.q).map(|(a, b)| (a - b).abs());
    let dp = end.p.iter().zip(&config.initial.p).map(|(a, b)| (a + b).abs());
    Ok(dq.chain(dp).fold(0.0, f64::max))
}

/// CSV with columns `t, q1..qn, p1..pn, I1..In`.
pub fn write_csv(traj: &Trajectory, mut out: impl Write) -> io::Result<()> {
    let n = traj.final_state.q.len();
    let mut header = vec!["t".to_string()];
    for prefix in ["q", "p", "I"] {
        header.extend((1..=n).map(|i| format!("{prefix}{i}")));
    }
    writeln!(out, "{}", header.join(","))?;
    for s in &traj.samples {
        let row: Vec<String> = std::iter::once(s.t)
            .chain(s.q.iter().copied())
            .chain(s.p.iter().copied())
            .chain(s.integrals.iter().copied())
            .map(|x| format!("{x:.17e}"))
            .collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
