//! The verification suites, each producing a list of check records.

use std::fmt::Display;
use std::path::Path;
use std::time::Instant;

use calogero::dunkl::classical::{classical_equivariance_check, classical_involution_check, theta_check};
use calogero::dunkl::{
    commute_check, equivariance_check, gauge_check, invariant_generators, res_identity_check, restricted_square_check,
    type_a_potential_check, Dunkl, DunklError, Multiplicity, SweepReport,
};
use calogero::matrix::{Matrix, MatrixEntry};
use calogero::poisson::{self, involution_brackets, third_integral_closed_form, ClassicalLax};
use calogero::quantum::{
    self, integral_commutators, momentum_commutator_residual, third_integral_symmetric_form, Coupling, DiffOp, QuantumLax,
};
use calogero::roots::{RootSystem, RootType};
use calogero::scalar::{Naming, ParamScalar, Poly, RatFunc};
use calogero::sim::{self, drift_report, integrate, observed_order, time_reversal_error, Integrator, SimConfig};
use serde_json::{json, Value};

use crate::report::{CheckResult, Outcome};

/// Entry of `M` whose sign the negative control flips.
pub const PERTURBED_ENTRY: (usize, usize) = (0, 1);

/// Step pair used to measure the observed order of the integrator.
pub const ORDER_DT: f64 = 0.05;

fn matrix_witness<T: MatrixEntry + Display>(m: &Matrix<T>) -> Option<String> {
    m.first_nonzero().map(|(r, s, e)| format!("entry ({}, {}): {e}", r + 1, s + 1))
}

fn equal_or<T: PartialEq + Display>(got: &T, expected: &T, what: &str) -> Outcome {
    if got == expected {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{what}: got {got}, expected {expected}"))
    }
}

fn sweep(rep: SweepReport) -> Outcome {
    Outcome::from_witness(rep.witness)
}

pub fn coupling_slug(c: Coupling) -> &'static str {
    match c {
        Coupling::KMinusOne => "k-minus-1",
        Coupling::KPlusOne => "k-plus-1",
    }
}

pub fn classical_lax(n: usize, perturb: bool) -> Vec<CheckResult> {
    const SUITE: &str = "classical-lax";
    let tag = if perturb { "-perturbed" } else { "" };
    let mut lax = ClassicalLax::new(n, &ParamScalar::k()).expect("n ≥ 2");
    if perturb {
        lax = lax.with_flipped_m(PERTURBED_ENTRY.0, PERTURBED_ENTRY.1);
    }
    vec![
        CheckResult::run(SUITE, format!("{SUITE}/n{n}{tag}/sum-to-zero"), || match lax.check_sum_to_zero() {
            Ok(()) => Outcome::Pass,
            Err(e) => Outcome::Fail(e.to_string()),
        }),
        CheckResult::run(SUITE, format!("{SUITE}/n{n}{tag}/residual"), || {
            Outcome::from_witness(matrix_witness(&lax.residual()))
        }),
    ]
}

pub fn involution(n: usize) -> Vec<CheckResult> {
    const SUITE: &str = "involution";
    let k = ParamScalar::k();
    let lax = ClassicalLax::new(n, &k).expect("n ≥ 2");
    let integrals = lax.integrals();
    let mut out = vec![
        CheckResult::run(SUITE, format!("{SUITE}/n{n}/I1-total-momentum"), || {
            let p: Vec<RatFunc> = (0..n).map(RatFunc::p).collect();
            equal_or(&integrals[0], &RatFunc::sum(&p), "I1")
        }),
        CheckResult::run(SUITE, format!("{SUITE}/n{n}/I2-hamiltonian"), || {
            equal_or(&integrals[1], &poisson::hamiltonian(n, &k), "I2")
        }),
    ];
    if n >= 3 {
        out.push(CheckResult::run(SUITE, format!("{SUITE}/n{n}/I3-closed-form"), || {
            equal_or(&integrals[2], &third_integral_closed_form(n, &k), "I3")
        }));
    }
    let start = Instant::now();
    let brackets = involution_brackets(n, &k).expect("n ≥ 2");
    let share = start.elapsed().as_millis() as u64 / brackets.len().max(1) as u64;
    for b in brackets {
        let outcome = if num_traits::Zero::is_zero(&b.value) {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("{{I{}, I{}}} = {}", b.i, b.j, b.value))
        };
        out.push(CheckResult::new(SUITE, format!("{SUITE}/n{n}/bracket-{}-{}", b.i, b.j), outcome, share));
    }
    out
}

pub fn momentum_commutator() -> Vec<CheckResult> {
    const SUITE: &str = "quantum-lax";
    vec![CheckResult::run(SUITE, format!("{SUITE}/momentum-commutator"), || {
        let k = ParamScalar::k();
        let corpus = vec![
            RatFunc::q(0),
            RatFunc::from_poly(&Poly::q(0) * &Poly::q(1)),
            RatFunc::inv_difference(0, 1, 1),
            RatFunc::inv_difference(0, 2, 3).scale(&k),
            &RatFunc::inv_difference(0, 1, 2) * &RatFunc::inv_difference(1, 2, 1),
            &RatFunc::q(1) * &RatFunc::inv_difference(1, 2, 2),
        ];
        for f in &corpus {
            for i in 0..3 {
                let r = momentum_commutator_residual(f, i);
                if !r.is_empty() {
                    return Outcome::Fail(format!("f = {f}, i = {}: {r}", i + 1));
                }
            }
        }
        Outcome::Pass
    })
    .with_detail("corpus", 6)]
}

pub fn quantum_lax(n: usize, coupling: Coupling, perturb: bool) -> Vec<CheckResult> {
    const SUITE: &str = "quantum-lax";
    let tag = if perturb { "-perturbed" } else { "" };
    let k = ParamScalar::k();
    let mut lax = QuantumLax::new(n, &k).expect("n ≥ 2");
    if perturb {
        lax = lax.with_flipped_m(PERTURBED_ENTRY.0, PERTURBED_ENTRY.1);
    }
    let id = |what: &str| format!("{SUITE}/n{n}{tag}/{}/{what}", coupling_slug(coupling));
    vec![
        CheckResult::run(SUITE, id("sum-to-zero"), || {
            Outcome::from_witness(lax.sum_to_zero_witness())
        }),
        CheckResult::run(SUITE, id("residual"), || {
            Outcome::from_witness(matrix_witness(&lax.residual(&coupling.value(&k))))
        })
        .with_detail("coupling", coupling.label()),
    ]
}

pub fn quantum_commute(n: usize, perturb: bool) -> Vec<CheckResult> {
    const SUITE: &str = "quantum-commute";
    let tag = if perturb { "-perturbed" } else { "" };
    let k = ParamScalar::k();
    let g = Coupling::KMinusOne.value(&k);
    let mut lax = QuantumLax::new(n, &k).expect("n ≥ 2");
    if perturb {
        lax = lax.with_flipped_m(PERTURBED_ENTRY.0, PERTURBED_ENTRY.1);
    }
    let id = |what: String| format!("{SUITE}/n{n}{tag}/{what}");
    let mut out = vec![CheckResult::run(SUITE, id("sum-to-zero".into()), || {
        Outcome::from_witness(lax.sum_to_zero_witness())
    })];
    let j = lax.integrals();
    out.push(CheckResult::run(SUITE, id("J1-total-momentum".into()), || {
        let p: Vec<DiffOp> = (0..n).map(DiffOp::momentum).collect();
        equal_or(&j[0], &DiffOp::sum(&p), "J1")
    }));
    out.push(
        CheckResult::run(SUITE, id("J2-hamiltonian".into()), || {
            equal_or(&j[1], &quantum::hamiltonian(n, &g), "J2")
        })
        .with_detail("coupling", Coupling::KMinusOne.label()),
    );
    if n >= 3 {
        out.push(CheckResult::run(SUITE, id("J3-symmetric-form".into()), || {
            equal_or(&j[2], &third_integral_symmetric_form(n, &g), "J3")
        }));
    }
    let start = Instant::now();
    let comms = integral_commutators(&j);
    let share = start.elapsed().as_millis() as u64 / comms.len().max(1) as u64;
    for c in comms {
        let outcome = if c.value.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("[J{}, J{}] = {}", c.i, c.j, c.value))
        };
        out.push(CheckResult::new(SUITE, id(format!("commutator-{}-{}", c.i, c.j)), outcome, share));
    }
    out
}

/// Build a root system and report its counts, plus the axiom sweep when `check` is set.
pub fn roots(t: RootType, check: bool) -> (Vec<CheckResult>, Option<RootSystem>) {
    const SUITE: &str = "roots";
    let id = |what: &str| format!("{SUITE}/{t}/{what}");
    let start = Instant::now();
    let system = match RootSystem::build_unchecked(t) {
        Ok(s) => s,
        Err(e) => {
            let ms = start.elapsed().as_millis() as u64;
            return (vec![CheckResult::new(SUITE, id("build"), Outcome::Fail(e.to_string()), ms)], None);
        }
    };
    let ms = start.elapsed().as_millis() as u64;
    let count = if system.roots.len() == t.root_count() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{} roots, expected {}", system.roots.len(), t.root_count()))
    };
    let mut out = vec![CheckResult::new(SUITE, id("count"), count, ms)
        .with_detail("roots", system.roots.len())
        .with_detail("positive", system.positive.len())
        .with_detail("simple", system.simple.len())
        .with_detail("rank", system.rank())
        .with_detail("weyl_order", t.weyl_order().to_string())];
    if check {
        out.push(CheckResult::run(SUITE, id("axioms"), || {
            let rep = system.check_axioms();
            Outcome::from_witness(rep.violations.first().cloned())
        }));
        out.push(CheckResult::run(SUITE, id("crystallographic"), || {
            Outcome::from_witness(
                system
                    .crystallographic_violation()
                    .map(|(a, b, v)| format!("<{b}, {a}^v> = {v}")),
            )
        }));
        let mut histogram = Value::Null;
        let mut cox = CheckResult::run(SUITE, id("coxeter-orders"), || match system.coxeter_orders() {
            Ok(h) => {
                histogram = json!(h.iter().map(|(m, c)| (m.to_string(), Value::from(*c))).collect::<serde_json::Map<_, _>>());
                match h.keys().find(|m| ![2, 3, 4, 6].contains(*m)) {
                    Some(m) => Outcome::Fail(format!("pair of order {m}")),
                    None => Outcome::Pass,
                }
            }
            Err(e) => Outcome::Fail(e.to_string()),
        });
        cox.details.insert("histogram".into(), histogram);
        out.push(cox);
    }
    (out, Some(system))
}

/// JSON dump of roots, simple system, Coxeter matrix and multiplicity classes.
pub fn roots_json(system: &RootSystem) -> Value {
    let render = |v: &[calogero::roots::Root]| v.iter().map(|r| r.render()).collect::<Vec<_>>();
    json!({
        "type": system.root_type.to_string(),
        "ambient_dim": system.ambient_dim,
        "roots": render(&system.roots),
        "positive": render(&system.positive),
        "simple": render(&system.simple),
        "coxeter_matrix": system.coxeter_matrix().ok(),
        "multiplicity": system
            .multiplicity
            .iter()
            .map(|(len, p)| (len.to_string(), Value::from(p.name())))
            .collect::<serde_json::Map<_, _>>(),
        "normalized": system.is_normalized(),
    })
}

fn dunkl_for(t: RootType) -> Result<(RootSystem, Dunkl), String> {
    let system = RootSystem::build(t).map_err(|e| e.to_string())?;
    let dunkl = Dunkl::new(&system, &Multiplicity::symbolic(&system));
    Ok((system, dunkl))
}

fn build_failure(suite: &str, t: RootType, e: String) -> Vec<CheckResult> {
    vec![CheckResult::new(suite, format!("{suite}/{t}/build"), Outcome::Fail(e), 0)]
}

fn dunkl_outcome(r: Result<SweepReport, DunklError>) -> Outcome {
    match r {
        Ok(rep) => sweep(rep),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

pub fn dunkl_commute(t: RootType, max_degree: u32) -> Vec<CheckResult> {
    const SUITE: &str = "dunkl-commute";
    let (system, dunkl) = match dunkl_for(t) {
        Ok(x) => x,
        Err(e) => return build_failure(SUITE, t, e),
    };
    let gens = system.simple_reflections();
    vec![
        CheckResult::run(SUITE, format!("{SUITE}/{t}/degree-{max_degree}"), || {
            dunkl_outcome(commute_check(&dunkl, max_degree))
        }),
        CheckResult::run(SUITE, format!("{SUITE}/{t}/equivariance"), || {
            dunkl_outcome(equivariance_check(&dunkl, &gens, max_degree.min(3)))
        }),
    ]
}

pub fn dunkl_restrict(t: RootType) -> Vec<CheckResult> {
    const SUITE: &str = "dunkl-restrict";
    let (system, dunkl) = match dunkl_for(t) {
        Ok(x) => x,
        Err(e) => return build_failure(SUITE, t, e),
    };
    let mut out = vec![CheckResult::run(SUITE, format!("{SUITE}/{t}/operator"), || {
        sweep(restricted_square_check(&dunkl))
    })];
    match invariant_generators(t) {
        Ok(gens) => {
            for (i, p) in gens.iter().enumerate() {
                out.push(
                    CheckResult::run(SUITE, format!("{SUITE}/{t}/invariant-{}", i + 1), || {
                        dunkl_outcome(res_identity_check(&dunkl, &system, p))
                    })
                    .with_detail("invariant", p.render(&Naming::AMBIENT)),
                );
            }
        }
        Err(e) => out.push(CheckResult::new(
            SUITE,
            format!("{SUITE}/{t}/invariants"),
            Outcome::Skipped(e.to_string()),
            0,
        )),
    }
    out
}

pub fn dunkl_gauge(t: RootType) -> Vec<CheckResult> {
    const SUITE: &str = "dunkl-gauge";
    let (_, dunkl) = match dunkl_for(t) {
        Ok(x) => x,
        Err(e) => return build_failure(SUITE, t, e),
    };
    let d = dunkl.dim();
    let test = &(&Poly::q(0).pow(2) * &Poly::q(1)) + &Poly::q(d - 1).pow(3);
    let mut out = vec![CheckResult::run(SUITE, format!("{SUITE}/{t}/shift"), || {
        sweep(gauge_check(&dunkl, &test))
    })];
    if let RootType::A(_) = t {
        out.push(CheckResult::run(SUITE, format!("{SUITE}/{t}/type-a-potential"), || {
            sweep(type_a_potential_check(&dunkl, &ParamScalar::c(1)))
        }));
    }
    out
}

pub fn dunkl_classical(t: RootType) -> Vec<CheckResult> {
    const SUITE: &str = "dunkl-classical";
    let (system, dunkl) = match dunkl_for(t) {
        Ok(x) => x,
        Err(e) => return build_failure(SUITE, t, e),
    };
    let gens = system.simple_reflections();
    vec![
        CheckResult::run(SUITE, format!("{SUITE}/{t}/involution"), || {
            sweep(classical_involution_check(&dunkl))
        }),
        CheckResult::run(SUITE, format!("{SUITE}/{t}/equivariance"), || {
            sweep(classical_equivariance_check(&dunkl, &gens))
        }),
        CheckResult::run(SUITE, format!("{SUITE}/{t}/theta"), || sweep(theta_check(&dunkl))),
    ]
}

/// Lower bound on the observed order accepted for each integrator.
pub fn order_floor(integrator: Integrator) -> f64 {
    match integrator {
        Integrator::Rk4 => 3.8,
        Integrator::Leapfrog => 1.8,
    }
}

pub fn simulate(config: &SimConfig, tolerance: f64, csv: Option<&Path>) -> std::io::Result<Vec<CheckResult>> {
    const SUITE: &str = "simulate";
    let tag = format!("{SUITE}/n{}/{}", config.n, config.integrator);
    let mut trajectory = None;
    let mut drift = CheckResult::run(SUITE, format!("{tag}/drift"), || match integrate(config) {
        Ok(traj) => {
            let rep = drift_report(&traj, tolerance);
            trajectory = Some((traj, rep.clone()));
            if rep.passed {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("max relative drift {:e} ≥ {tolerance:e}", rep.max_drift()))
            }
        }
        Err(e) => Outcome::Fail(e.to_string()),
    });
    drift.details.insert("tolerance".into(), json!(tolerance));
    if let Some((traj, rep)) = &trajectory {
        drift.details.insert("integrals".into(), json!(rep.integrals));
        drift.details.insert("closed_form".into(), json!(rep.closed_form));
        drift.details.insert("total_momentum".into(), json!(rep.total_momentum));
        drift.details.insert("steps".into(), json!(traj.steps));
        if let Some(path) = csv {
            sim::write_csv(traj, std::io::BufWriter::new(std::fs::File::create(path)?))?;
        }
    }
    let floor = order_floor(config.integrator);
    let mut order_value = None;
    let order = CheckResult::run(SUITE, format!("{tag}/observed-order"), || match observed_order(config, ORDER_DT) {
        Ok(o) => {
            order_value = Some(o);
            if o >= floor {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("observed order {o:.3} < {floor}"))
            }
        }
        Err(e) => Outcome::Fail(e.to_string()),
    })
    .with_detail("dt", json!([ORDER_DT, ORDER_DT / 2.0]))
    .with_detail("order", json!(order_value));
    let mut reversal_value = None;
    let reversal = CheckResult::run(SUITE, format!("{tag}/time-reversal"), || match time_reversal_error(config) {
        Ok(err) => {
            reversal_value = Some(err);
            if err < 1e-6 {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("returned within {err:e}"))
            }
        }
        Err(e) => Outcome::Fail(e.to_string()),
    })
    .with_detail("error", json!(reversal_value));
    Ok(vec![drift, order, reversal])
}

/// Operator-level Dunkl identities for `t` are left out of the default matrix.
fn operator_level_skipped(t: RootType) -> Vec<CheckResult> {
    ["dunkl-restrict", "dunkl-gauge", "dunkl-classical"]
        .iter()
        .map(|suite| {
            let why = format!("outside the default budget; run `dunkl {} --type {t}`", &suite[6..]);
            CheckResult::new(suite, format!("{suite}/{t}"), Outcome::Skipped(why), 0)
        })
        .collect()
}

/// The default matrix: three particles everywhere, root types A2, A3, B2, G2
/// and F4, Dunkl degree cap 5. For F4 only the polynomial-level Dunkl checks run.
pub fn all() -> Vec<CheckResult> {
    use rayon::prelude::*;

    type Job = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync>;
    let types = [RootType::A(2), RootType::A(3), RootType::B(2), RootType::G2, RootType::F4];
    let mut jobs: Vec<Job> = vec![
        Box::new(|| classical_lax(3, false)),
        Box::new(|| involution(3)),
        Box::new(momentum_commutator),
        Box::new(|| quantum_lax(3, Coupling::KMinusOne, false)),
        Box::new(|| quantum_commute(3, false)),
    ];
    for t in types {
        jobs.push(Box::new(move || roots(t, true).0));
    }
    for t in types {
        jobs.push(Box::new(move || dunkl_commute(t, 5)));
        if t == RootType::F4 {
            jobs.push(Box::new(|| operator_level_skipped(RootType::F4)));
            continue;
        }
        jobs.push(Box::new(move || dunkl_restrict(t)));
        jobs.push(Box::new(move || dunkl_gauge(t)));
        jobs.push(Box::new(move || dunkl_classical(t)));
    }
    jobs.push(Box::new(|| {
        simulate(&SimConfig::reference(), sim::DRIFT_TOLERANCE, None).expect("no file output")
    }));
    jobs.par_iter().map(|job| job()).collect::<Vec<_>>().into_iter().flatten().collect()
}
