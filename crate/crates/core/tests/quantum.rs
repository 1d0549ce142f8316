use std::time::Instant;

use calogero::quantum::{
    hamiltonian, integral_commutators, momentum_commutator_residual, recursion_constant,
    third_integral_symmetric_form, Coupling, DerivIndex, DiffOp, QuantumLax, RecursionError,
};
use calogero::scalar::{GaussianRational, ParamScalar, Poly, RatFunc, Var};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn slow() -> bool {
    std::env::var_os("CALOGERO_SLOW").is_some()
}

fn k() -> ParamScalar {
    ParamScalar::k()
}

fn i() -> ParamScalar {
    ParamScalar::i()
}

#[test]
fn heisenberg() {
    for a in 0..3 {
        for b in 0..3 {
            let c = DiffOp::position(a).commutator(&DiffOp::momentum(b));
            let expected = if a == b { DiffOp::scalar(i()) } else { DiffOp::zero() };
            assert_eq!(c, expected, "[q{}, p{}]", a + 1, b + 1);
            assert!(DiffOp::momentum(a).commutator(&DiffOp::momentum(b)).is_zero());
            assert!(DiffOp::position(a).commutator(&DiffOp::position(b)).is_zero());
        }
    }
}

#[test]
fn momentum_against_inverse_difference() {
    let f = RatFunc::inv_difference(0, 1, 1);
    let c = DiffOp::momentum(0).commutator(&DiffOp::mul_by(f));
    assert_eq!(c, DiffOp::mul_by(RatFunc::inv_difference(0, 1, 2).scale(&i())));
    assert_eq!(c.to_string(), "i/(q1 - q2)^2");
}

#[test]
fn momentum_commutator_corpus() {
    let corpus = vec![
        RatFunc::q(0),
        RatFunc::from_poly(&Poly::q(0) * &Poly::q(1)),
        RatFunc::inv_difference(0, 1, 1),
        RatFunc::inv_difference(0, 2, 3),
        &RatFunc::inv_difference(0, 1, 2) * &RatFunc::inv_difference(1, 2, 1),
        RatFunc::q(2).pow(4).scale(&k()),
        &RatFunc::q(1) * &RatFunc::inv_difference(1, 2, 2),
    ];
    for f in &corpus {
        for j in 0..3 {
            assert!(momentum_commutator_residual(f, j).is_zero(), "f = {f}, j = {j}");
        }
    }
}

fn small_op() -> impl Strategy<Value = DiffOp> {
    let atom = prop_oneof![
        (0usize..2).prop_map(DiffOp::partial),
        (0usize..2).prop_map(DiffOp::position),
        Just(DiffOp::mul_by(RatFunc::inv_difference(0, 1, 1))),
        (-3i64..=3).prop_map(|c| DiffOp::scalar(ParamScalar::integer(c))),
    ];
    prop::collection::vec(prop::collection::vec(atom, 1..3), 1..3).prop_map(|words| {
        let terms: Vec<DiffOp> = words
            .into_iter()
            .map(|w| w.iter().fold(DiffOp::one(), |acc, x| acc.compose(x)))
            .collect();
        DiffOp::sum(&terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(a in small_op(), b in small_op(), c in small_op()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn composition_distributes(a in small_op(), b in small_op(), c in small_op()) {
        prop_assert_eq!(a.compose(&(&b + &c)), &a.compose(&b) + &a.compose(&c));
    }

    #[test]
    fn jacobi_identity(a in small_op(), b in small_op(), c in small_op()) {
        let total = DiffOp::sum(&[
            a.commutator(&b.commutator(&c)),
            b.commutator(&c.commutator(&a)),
            c.commutator(&a.commutator(&b)),
        ]);
        prop_assert!(total.is_zero());
    }
}

#[test]
fn apply_matches_composition() {
    let op = &DiffOp::partial(0).pow(2) + &DiffOp::mul_by(RatFunc::inv_difference(0, 1, 1)).compose(&DiffOp::partial(1));
    let f = &RatFunc::q(0).pow(3) * &RatFunc::q(1);
    // ∂1² (q1³ q2) = 6 q1 q2, q12⁻¹ ∂2 (q1³ q2) = q1³ / q12
    let expected = &RatFunc::from_poly(&Poly::q(0).scale(&ParamScalar::integer(6)) * &Poly::q(1))
        + &(&RatFunc::q(0).pow(3) * &RatFunc::inv_difference(0, 1, 1));
    assert_eq!(op.apply(&f), expected);
}

#[test]
fn lax_pair_entries() {
    let lax = QuantumLax::new(3, &k()).unwrap();
    let ik = &i() * &k();
    assert_eq!(lax.l.get(0, 0), &DiffOp::momentum(0));
    assert_eq!(lax.l.get(1, 2), &DiffOp::mul_by(RatFunc::inv_difference(1, 2, 1).scale(&ik)));
    assert_eq!(lax.m.get(0, 1), &DiffOp::mul_by(RatFunc::inv_difference(0, 1, 2).scale(&-k())));
    assert!(lax.check_sum_to_zero().is_ok());
    assert!(lax.sum_to_zero_witness().is_none());

    let free = QuantumLax::new(3, &ParamScalar::zero()).unwrap();
    assert!(free.m.is_zero());
}

#[test]
fn flipped_entry_breaks_sum_to_zero() {
    let lax = QuantumLax::new(3, &k()).unwrap().with_flipped_m(0, 1);
    assert!(lax.check_sum_to_zero().is_err());
    assert!(lax.sum_to_zero_witness().unwrap().starts_with("row 1"));
    assert!(!lax.residual(&Coupling::KMinusOne.value(&k())).is_zero());
}

#[test]
fn residual_vanishes_for_k_k_minus_one() {
    let top = if slow() { 4 } else { 3 };
    for n in 2..=top {
        let lax = QuantumLax::new(n, &k()).unwrap();
        let g = Coupling::KMinusOne.value(&k());
        assert!(lax.residual(&g).is_zero(), "n = {n}");
    }
}

#[test]
fn residual_survives_for_k_k_plus_one() {
    for n in 2..=3 {
        let lax = QuantumLax::new(n, &k()).unwrap();
        assert!(!lax.residual(&Coupling::KPlusOne.value(&k())).is_zero(), "n = {n}");
    }
    // the excess potential 2k q12⁻² gives i[2k q12⁻², p̂1] = 4k q12⁻³ on the diagonal
    let lax = QuantumLax::new(2, &k()).unwrap();
    let res = lax.residual(&Coupling::KPlusOne.value(&k()));
    let four_k = k().scale(&GaussianRational::from_integer(4));
    assert_eq!(res.get(0, 0), &DiffOp::mul_by(RatFunc::inv_difference(0, 1, 3).scale(&four_k)));
}

#[test]
fn low_integrals() {
    let lax = QuantumLax::new(3, &k()).unwrap();
    let j = lax.integrals();
    let p_sum: Vec<DiffOp> = (0..3).map(DiffOp::momentum).collect();
    assert_eq!(j[0], DiffOp::sum(&p_sum));
    assert_eq!(j[1], hamiltonian(3, &Coupling::KMinusOne.value(&k())));
    assert_eq!(lax.integral(2).unwrap(), j[1]);
    assert!(lax.integral(4).is_err());
    assert!(lax.integral(0).is_err());
}

#[test]
fn third_integral_against_symmetric_form() {
    let lax = QuantumLax::new(3, &k()).unwrap();
    let j3 = lax.integral(3).unwrap();
    let with_minus = third_integral_symmetric_form(3, &Coupling::KMinusOne.value(&k()));
    let with_plus = third_integral_symmetric_form(3, &Coupling::KPlusOne.value(&k()));
    assert_eq!(j3.order(), Some(3));
    // the two candidates differ, and at most one can match
    assert_ne!(with_minus, with_plus);
    assert_ne!(j3, with_plus);
    assert_eq!(j3, with_minus);
}

#[test]
fn integrals_commute() {
    let t = Instant::now();
    let lax = QuantumLax::new(3, &k()).unwrap();
    let j = lax.integrals();
    for pc in integral_commutators(&j) {
        assert!(pc.value.is_zero(), "[J{}, J{}] = {}", pc.i, pc.j, pc.value);
    }
    assert!(t.elapsed().as_secs() < 120);
}

#[test]
fn hamiltonian_commutes_with_integrals() {
    let lax = QuantumLax::new(3, &k()).unwrap();
    let h = hamiltonian(3, &Coupling::KMinusOne.value(&k()));
    for jm in lax.integrals() {
        assert!(h.commutator(&jm).is_zero());
    }
    let wrong = hamiltonian(3, &Coupling::KPlusOne.value(&k()));
    assert!(!wrong.commutator(&lax.integral(3).unwrap()).is_zero());
}

#[test]
fn leading_symbols() {
    let lax = QuantumLax::new(3, &k()).unwrap();
    for (idx, jm) in lax.integrals().iter().enumerate() {
        let m = idx as u16 + 1;
        let top = jm.principal_part();
        let expected: Vec<DiffOp> = (0..3).map(|r| DiffOp::momentum(r).pow(m as u32)).collect();
        let expected = DiffOp::sum(&expected).scale(&ParamScalar::ratio(1, m as i64));
        assert_eq!(top, expected, "J{m}");
        assert!(top.coeff(&DerivIndex::pow(Var::Q(0), m)).as_constant().is_some());
    }
}

#[test]
fn recursion_constants() {
    assert_eq!(recursion_constant(3, 2, &k()).unwrap(), i());
    assert_eq!(recursion_constant(3, 3, &k()).unwrap(), ParamScalar::constant(GaussianRational::complex(0, 2)));
    assert_eq!(recursion_constant(2, 2, &ParamScalar::zero()).unwrap(), i());
    assert!(matches!(recursion_constant(3, 1, &k()), Err(RecursionError::OutOfRange(1))));
    assert!(matches!(recursion_constant(1, 2, &k()), Err(RecursionError::OutOfRange(2))));
}
