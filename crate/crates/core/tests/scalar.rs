use calogero::scalar::{
    GaussianRational, LinearForm, Monomial, Param, ParamMono, ParamScalar, Poly, RatFunc, ScalarError, Var,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(j: usize) -> Poly {
    Poly::q(j)
}

fn mono(pairs: &[(Var, u16)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

#[test]
fn poly_cancellation() {
    let sum = &(&q(0) + &q(1)) + &(&q(0) - &q(1));
    assert_eq!(sum, Poly::term(Monomial::var(Var::Q(0)), ParamScalar::integer(2)));
}

#[test]
fn parameter_exponents_add() {
    let kq1 = Poly::q(0).scale(&ParamScalar::k());
    let sq = &kq1 * &kq1;
    let expected = Poly::term(
        Monomial::pow(Var::Q(0), 2),
        ParamScalar::term(ParamMono::pow(Param::K, 2), GaussianRational::one()),
    );
    assert_eq!(sq, expected);
    assert_eq!(sq.to_string(), "k^2*q1^2");
}

#[test]
fn difference_of_squares_by_distribution() {
    let prod = &(&q(0) - &q(1)) * &(&q(0) + &q(1));
    // distribute by hand: q1*q1 + q1*q2 - q2*q1 - q2*q2
    let expected = Poly::from_terms([
        (mono(&[(Var::Q(0), 2)]), ParamScalar::integer(1)),
        (mono(&[(Var::Q(0), 1), (Var::Q(1), 1)]), ParamScalar::integer(1)),
        (mono(&[(Var::Q(1), 1), (Var::Q(0), 1)]), ParamScalar::integer(-1)),
        (mono(&[(Var::Q(1), 2)]), ParamScalar::integer(-1)),
    ]);
    assert_eq!(prod, expected);
}

#[test]
fn ratfunc_examples() {
    let a = RatFunc::inv_difference(0, 1, 1);
    assert!((&a + &RatFunc::inv_difference(1, 0, 1)).is_zero());
    let f = RatFunc::from_poly(&q(0) - &q(1));
    assert_eq!(&a * &f, RatFunc::one());

    let sum = &a + &RatFunc::inv_difference(0, 2, 1);
    let num = &(&q(0).scale(&ParamScalar::integer(2)) - &q(1)) - &q(2);
    let den = [(LinearForm::new(&[1, -1]).unwrap(), 1), (LinearForm::new(&[1, 0, -1]).unwrap(), 1)];
    assert_eq!(sum, RatFunc::new(num, den.into_iter().collect()));
}

#[test]
fn exact_divide_examples() {
    let f = LinearForm::new(&[1, -1]).unwrap();
    assert_eq!((&q(0) - &q(1)).exact_divide(&f), Ok(Poly::one()));
    let p = &(&q(0) * &q(0)) - &(&q(1) * &q(1));
    assert_eq!(p.exact_divide(&f), Ok(&q(0) + &q(1)));
    assert_eq!(q(0).exact_divide(&f), Err(ScalarError::NotDivisible));
}

#[test]
fn partial_derivative_examples() {
    let d = RatFunc::inv_difference(0, 1, 1).partial(Var::Q(0));
    // d/dq1 (q1 - q2)^{-1} = -(q1 - q2)^{-2}
    let expected = RatFunc::inv_form(&LinearForm::new(&[1, -1]).unwrap(), 2).scale_int(-1);
    assert_eq!(d, expected);
    assert!(RatFunc::q(0).partial(Var::P(0)).is_zero());
    let sq = RatFunc::from_poly(&q(0) * &q(0));
    assert_eq!(sq.partial(Var::Q(0)), RatFunc::from_poly(q(0).scale(&ParamScalar::integer(2))));
}

#[test]
fn rendering_is_deterministic() {
    let f = &RatFunc::inv_difference(0, 1, 2).scale(&ParamScalar::k().pow(2)) + &RatFunc::p(0);
    assert_eq!(f.to_string(), "(q1^2*p1 - 2*q1*q2*p1 + q2^2*p1 + k^2)/(q1 - q2)^2");
}

fn scalar_strategy() -> impl Strategy<Value = ParamScalar> {
    prop::collection::vec((0u16..3, 0u16..2, -3i64..4, -2i64..3), 1..3).prop_map(|terms| {
        let mut out = ParamScalar::zero();
        for (ek, ec, re, im) in terms {
            let m = ParamMono::from_pairs([(Param::K, ek), (Param::C(1), ec)]);
            out.add_term(&m, &GaussianRational::complex(re, im));
        }
        out
    })
}

fn var_strategy() -> impl Strategy<Value = Var> {
    prop_oneof![(0u16..3).prop_map(Var::Q), (0u16..2).prop_map(Var::P)]
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec((var_strategy(), 1u16..3), 0..3), scalar_strategy()), 0..4)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(m, c)| (Monomial::from_pairs(m), c))))
}

fn form_strategy() -> impl Strategy<Value = LinearForm> {
    prop_oneof![
        Just(LinearForm::new(&[1, -1]).unwrap()),
        Just(LinearForm::new(&[1, 0, -1]).unwrap()),
        Just(LinearForm::new(&[0, 1, -1]).unwrap()),
        Just(LinearForm::new(&[1, 1]).unwrap()),
        Just(LinearForm::new(&[0, 0, 1]).unwrap()),
        Just(LinearForm::new(&[2, -1, -1]).unwrap()),
    ]
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(), prop::collection::vec((form_strategy(), 1u32..3), 0..3))
        .prop_map(|(num, den)| {
            let mut d = calogero::scalar::Denominator::new();
            for (f, p) in den {
                *d.entry(f).or_insert(0) += p;
            }
            RatFunc::new(num, d)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn ratfunc_ring_axioms(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(RatFunc::sum([&a, &b, &c]), &(&a + &b) + &c);
    }

    #[test]
    fn divide_inverts_multiply(p in poly_strategy(), f in form_strategy()) {
        let prod = &p * &f.to_poly();
        prop_assert_eq!(prod.exact_divide(&f), Ok(p));
    }

    #[test]
    fn leibniz_rule(a in ratfunc_strategy(), b in ratfunc_strategy(), v in var_strategy()) {
        let lhs = (&a * &b).partial(v);
        let rhs = &(&a.partial(v) * &b) + &(&a * &b.partial(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip(a in ratfunc_strategy()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: RatFunc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, a);
    }
}
