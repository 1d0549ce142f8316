use std::time::Instant;

use calogero::dunkl::{
    act_poly, check_invariant, commute_check, dihedral_cancellation_check, dihedral_sum, directional_derivative,
    equivariance_check, gauge_check, invariant_generators, monomials_up_to, res_identity_check,
    restricted_square_check, rotation_fibers, type_a_potential_check, Dunkl, DunklElem, DunklError, Multiplicity,
};
use calogero::quantum::DiffOp;
use calogero::roots::{GroupElem, Rat, Root, RootSystem, DEFAULT_WEYL_CAP};
use calogero::scalar::{Monomial, Param, ParamScalar, Poly, RatFunc, Var};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn system(s: &str) -> RootSystem {
    RootSystem::build(s.parse().unwrap()).unwrap()
}

fn symbolic(s: &str) -> (RootSystem, Dunkl) {
    let sys = system(s);
    let d = Dunkl::new(&sys, &Multiplicity::symbolic(&sys));
    (sys, d)
}

fn x(j: usize) -> Poly {
    Poly::q(j)
}

fn c1() -> ParamScalar {
    ParamScalar::c(1)
}

#[test]
fn constants_are_killed() {
    let (_, d) = symbolic("B2");
    for j in 0..2 {
        assert!(d.apply_basis(j, &Poly::integer(7)).unwrap().is_zero());
    }
}

#[test]
fn a1_on_x1() {
    let (_, d) = symbolic("A1");
    let out = d.apply_basis(0, &x(0)).unwrap();
    assert_eq!(out, Poly::constant(&ParamScalar::one() - &c1()));
    // D_e2 x1 = 0 − c ⟨α,e2⟩ · 1 = c
    assert_eq!(d.apply_basis(1, &x(0)).unwrap(), Poly::constant(c1()));
}

#[test]
fn zero_multiplicity_is_the_gradient() {
    let sys = system("G2");
    let d = Dunkl::new(&sys, &Multiplicity::zero(&sys));
    for m in monomials_up_to(3, 3) {
        let p = Poly::term(m, ParamScalar::one());
        for j in 0..3 {
            let a = d.basis(j);
            assert_eq!(d.apply(&a, &p).unwrap(), directional_derivative(&p, &a));
        }
    }
}

#[test]
fn degree_drops_by_one() {
    let (_, d) = symbolic("B2");
    for m in monomials_up_to(2, 5) {
        let p = Poly::term(m.clone(), ParamScalar::one());
        let out = d.apply_basis(0, &p).unwrap();
        if !out.is_zero() {
            assert_eq!(out.degree(), Some(m.degree() - 1));
        }
    }
}

#[test]
fn operator_matches_direct_application() {
    let (_, d) = symbolic("B2");
    let op = d.operator(&d.basis(0));
    assert_eq!(op.len(), 1 + 3);
    for m in monomials_up_to(2, 3) {
        let p = Poly::term(m, ParamScalar::one());
        let direct = RatFunc::from_poly(d.apply_basis(0, &p).unwrap());
        assert_eq!(op.apply(&RatFunc::from_poly(p)), direct);
    }
}

#[test]
fn semidirect_relations() {
    let s = GroupElem::reflection(&Root::from_ints(&[1, -1, 0]).unwrap());
    let f = RatFunc::q(0);
    // σ ∘ x1 = x2 ∘ σ, σ ∘ ∂1 = ∂2 ∘ σ
    let lhs = DunklElem::group(s.clone()).mul(&DunklElem::term(DiffOp::mul_by(f), GroupElem::identity(3)));
    assert_eq!(lhs, DunklElem::term(DiffOp::position(1), s.clone()));
    let lhs = DunklElem::group(s.clone()).mul(&DunklElem::term(DiffOp::partial(0), GroupElem::identity(3)));
    assert_eq!(lhs, DunklElem::term(DiffOp::partial(1), s.clone()));
    assert_eq!(DunklElem::group(s.clone()).mul(&DunklElem::group(s)), DunklElem::group(GroupElem::identity(3)));
}

#[test]
fn commutativity() {
    let t = Instant::now();
    for label in ["A2", "A3", "B2", "G2"] {
        let (_, d) = symbolic(label);
        let rep = commute_check(&d, 5).unwrap();
        assert!(rep.passed(), "{label}: {:?}", rep.witness);
        assert!(rep.checked > 0);
    }
    assert!(t.elapsed().as_secs() < 120);
    let sys = system("A2");
    let free = Dunkl::new(&sys, &Multiplicity::zero(&sys));
    assert!(commute_check(&free, 3).unwrap().passed());
    assert!(matches!(commute_check(&free, 0), Err(DunklError::DegreeCap)));
}

#[test]
fn commutativity_fails_for_non_invariant_multiplicity() {
    // giving two A2 roots different weights breaks W-invariance of c
    let sys = system("A2");
    let mut d = Dunkl::new(&sys, &Multiplicity::symbolic(&sys));
    let tweaked = {
        let mut roots = d.positive_roots().to_vec();
        roots[0].c = ParamScalar::c(2);
        roots
    };
    d = Dunkl::from_roots(d.dim(), tweaked);
    assert!(!commute_check(&d, 3).unwrap().passed());
}

#[test]
fn equivariance() {
    let (sys, d) = symbolic("A2");
    let id = [GroupElem::identity(3)];
    assert!(equivariance_check(&d, &id, 4).unwrap().passed());
    let s12 = [GroupElem::reflection(&Root::from_ints(&[1, -1, 0]).unwrap())];
    assert!(equivariance_check(&d, &s12, 4).unwrap().passed());
    let w = sys.weyl_group(DEFAULT_WEYL_CAP).unwrap();
    assert!(equivariance_check(&d, &w, 3).unwrap().passed());
    let (b2, db) = symbolic("B2");
    assert!(equivariance_check(&db, &b2.simple_reflections(), 4).unwrap().passed());
}

#[test]
fn equivariance_by_hand() {
    // σ = σ_{e1−e2}, a = e1, p = x1²: w(D_a p) and D_{wa}(w p) expanded independently
    let (_, d) = symbolic("A2");
    let s = GroupElem::reflection(&Root::from_ints(&[1, -1, 0]).unwrap());
    let p = x(0).pow(2);
    let lhs = act_poly(&s, &d.apply_basis(0, &p).unwrap());
    let rhs = d.apply_basis(1, &act_poly(&s, &p)).unwrap();
    // D_e1 x1² = 2x1 − c[(x1² − x2²)/(x1 − x2) + (x1² − x3²)/(x1 − x3)] = 2x1 − c(2x1 + x2 + x3)
    let mut expected = x(1).scale(&ParamScalar::integer(2));
    let mut inner = x(1).scale(&ParamScalar::integer(2));
    inner.add_assign_ref(&x(0));
    inner.add_assign_ref(&x(2));
    expected.sub_assign_ref(&inner.scale(&c1()));
    assert_eq!(lhs, expected);
    assert_eq!(rhs, expected);
}

#[test]
fn dihedral_cancellation() {
    for label in ["A2", "B2", "G2"] {
        let (_, d) = symbolic(label);
        let rep = dihedral_cancellation_check(&d, 4).unwrap();
        assert!(rep.passed(), "{label}: {:?}", rep.witness);
    }
    let (_, d) = symbolic("B2");
    assert!(dihedral_sum(&d, &[], &x(0)).unwrap().is_zero());
    // B2 has four positive roots; products of distinct reflections give three nontrivial rotations
    assert_eq!(rotation_fibers(&d).len(), 3);
}

#[test]
fn restriction_two_paths() {
    for label in ["A1", "A2", "A3", "B2", "B3"] {
        let (sys, d) = symbolic(label);
        for p in invariant_generators(sys.root_type).unwrap() {
            let rep = res_identity_check(&d, &sys, &p).unwrap();
            assert!(rep.passed(), "{label}: {:?}", rep.witness);
        }
        assert!(res_identity_check(&d, &sys, &Poly::integer(1)).unwrap().passed());
    }
    let (sys, d) = symbolic("A2");
    assert!(matches!(res_identity_check(&d, &sys, &x(0)), Err(DunklError::InputNotInvariant(_))));
    assert!(check_invariant(&sys, &x(0).pow(4)).is_err());
    assert!(matches!(invariant_generators(system("G2").root_type), Err(DunklError::NoInvariants(_))));
}

#[test]
fn restricted_square_is_l_bar() {
    for label in ["A1", "A2", "B2"] {
        let (_, d) = symbolic(label);
        let rep = restricted_square_check(&d);
        assert!(rep.passed(), "{label}: {:?}", rep.witness);
    }
}

#[test]
fn gauge() {
    for label in ["A1", "A2", "B2"] {
        let (_, d) = symbolic(label);
        let rep = gauge_check(&d, &x(0).pow(3));
        assert!(rep.passed(), "{label}: {:?}", rep.witness);
    }
}

#[test]
fn gauge_a1_by_hand() {
    // L = ∂1² + ∂2² − 2c(c+1)/(x1 − x2)²
    let (_, d) = symbolic("A1");
    let shifted = d.gauge_conjugate(&d.restricted_laplacian());
    let cc = &c1() * &(&c1() + &ParamScalar::one());
    let pot = RatFunc::inv_difference(0, 1, 2).scale(&(&cc * &ParamScalar::integer(2)));
    let expected = DiffOp::sum(&[DiffOp::partial(0).pow(2), DiffOp::partial(1).pow(2), DiffOp::mul_by(-pot)]);
    assert_eq!(shifted, expected);
}

#[test]
fn gauge_is_identity_at_zero() {
    let sys = system("A2");
    let d = Dunkl::new(&sys, &Multiplicity::zero(&sys));
    let bar = d.restricted_laplacian();
    assert_eq!(bar, d.laplacian());
    assert_eq!(d.gauge_conjugate(&bar), d.laplacian());
    assert_eq!(d.op_operator(), d.laplacian());
}

#[test]
fn type_a_potential() {
    for label in ["A1", "A2", "A3"] {
        let (_, d) = symbolic(label);
        assert!(type_a_potential_check(&d, &c1()).passed(), "{label}");
    }
}

#[test]
fn partial_numeric_multiplicity() {
    let sys = system("B2");
    let c = Multiplicity::symbolic(&sys).with(Param::C(2), ParamScalar::ratio(1, 2));
    let d = Dunkl::new(&sys, &c);
    assert!(commute_check(&d, 3).unwrap().passed());
    assert!(gauge_check(&d, &Poly::one()).passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dunkl_output_is_polynomial_of_lower_degree(e in prop::collection::vec(0u16..4, 3), j in 0usize..3) {
        let (_, d) = symbolic("G2");
        let m = Monomial::from_pairs(e.iter().enumerate().map(|(i, &k)| (Var::Q(i as u16), k)));
        let p = Poly::term(m.clone(), ParamScalar::one());
        let out = d.apply_basis(j, &p).unwrap();
        prop_assert!(out.is_zero() || out.degree() == Some(m.degree() - 1));
    }

    #[test]
    fn group_action_is_a_homomorphism(e in prop::collection::vec(0u16..3, 3)) {
        let sys = system("A2");
        let (s, t) = (&sys.simple_reflections()[0], &sys.simple_reflections()[1]);
        let m = Monomial::from_pairs(e.iter().enumerate().map(|(i, &k)| (Var::Q(i as u16), k)));
        let p = Poly::term(m, ParamScalar::one());
        prop_assert_eq!(act_poly(&s.mul(t), &p), act_poly(s, &act_poly(t, &p)));
        let v = vec![Rat::from_integer(1), Rat::from_integer(2), Rat::from_integer(3)];
        prop_assert_eq!(s.mul(t).apply(&v), s.apply(&t.apply(&v)));
    }
}
