use std::collections::BTreeSet;
use std::time::Instant;

use calogero::roots::{
    conjugation_violation, coxeter_order, e8_simple_roots, simple_system, GroupElem, Rat, Root, RootSystem,
    RootType, RootsError, DEFAULT_WEYL_CAP,
};
use calogero::scalar::Param;
use proptest::prelude::*;

fn root(c: &[i64]) -> Root {
    Root::from_ints(c).unwrap()
}

fn half(c: &[i64]) -> Root {
    Root::new(c.iter().map(|&x| Rat::new(x, 2)).collect()).unwrap()
}

fn system(s: &str) -> RootSystem {
    RootSystem::build(s.parse().unwrap()).unwrap()
}

fn as_set(v: &[Root]) -> BTreeSet<Root> {
    v.iter().cloned().collect()
}

#[test]
fn a2_by_enumeration() {
    let mut expected = BTreeSet::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let mut v = [0i64; 3];
            v[i] = 1;
            v[j] = -1;
            expected.insert(root(&v));
            expected.insert(root(&v).neg());
        }
    }
    let a2 = system("A2");
    assert_eq!(as_set(&a2.roots), expected);
    assert_eq!(a2.simple, vec![root(&[1, -1, 0]), root(&[0, 1, -1])]);
    assert!(a2.crystallographic_violation().is_none());
    assert!(a2.is_normalized());
}

#[test]
fn counts() {
    let expected = [
        ("A1", 2),
        ("A2", 6),
        ("A3", 12),
        ("B2", 8),
        ("B3", 18),
        ("C3", 18),
        ("D4", 24),
        ("G2", 12),
        ("F4", 48),
        ("E6", 72),
        ("E7", 126),
        ("E8", 240),
    ];
    let t = Instant::now();
    for (label, n) in expected {
        let t: RootType = label.parse().unwrap();
        let sys = RootSystem::build(t).unwrap();
        assert_eq!(sys.roots.len(), n, "{label}");
        assert_eq!(t.root_count(), n, "{label}");
        assert_eq!(sys.positive.len(), n / 2, "{label}");
        assert_eq!(sys.rank(), t.rank(), "{label}");
        let rep = sys.check_axioms();
        assert!(rep.passed(), "{label}: {:?}", rep.violations);
        assert_eq!(rep.decompositions, n / 2);
    }
    assert!(t.elapsed().as_secs() < 30);
}

#[test]
fn parsing_and_ranges() {
    assert_eq!("b3".parse::<RootType>().unwrap(), RootType::B(3));
    for bad in ["A0", "B1", "D3", "E5", "E9", "F3", "G3", "H3", "", "A"] {
        assert!(matches!(bad.parse::<RootType>(), Err(RootsError::Unsupported(_))), "{bad}");
    }
    assert_eq!(RootType::E(6).to_string(), "E6");
}

#[test]
fn simple_systems_match_standard_displays() {
    assert_eq!(system("B2").simple, vec![root(&[1, -1]), root(&[0, 1])]);
    assert_eq!(as_set(&system("C3").simple), as_set(&[root(&[1, -1, 0]), root(&[0, 1, -1]), root(&[0, 0, 2])]));
    assert_eq!(
        as_set(&system("D4").simple),
        as_set(&[root(&[1, -1, 0, 0]), root(&[0, 1, -1, 0]), root(&[0, 0, 1, -1]), root(&[0, 0, 1, 1])])
    );
    assert_eq!(
        as_set(&system("F4").simple),
        as_set(&[root(&[0, 1, -1, 0]), root(&[0, 0, 1, -1]), root(&[0, 0, 0, 1]), half(&[1, -1, -1, -1])])
    );
    let e8 = e8_simple_roots();
    assert_eq!(as_set(&system("E8").simple), as_set(&e8));
    assert_eq!(as_set(&system("E7").simple), as_set(&e8[..7]));
    assert_eq!(as_set(&system("E6").simple), as_set(&e8[..6]));
}

#[test]
fn g2_positive_roots_over_simple_basis() {
    let g2 = system("G2");
    let long = g2.simple.iter().find(|r| r.norm2() == Rat::from_integer(6)).unwrap().clone();
    let short = g2.simple.iter().find(|r| r.norm2() == Rat::from_integer(2)).unwrap().clone();
    let basis = [long, short];
    let coords: BTreeSet<(i64, i64)> = g2
        .positive
        .iter()
        .map(|r| {
            let c = calogero::roots::solve_in_basis(&basis, r).unwrap();
            (c[0].to_integer(), c[1].to_integer())
        })
        .collect();
    let expected = BTreeSet::from([(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)]);
    assert_eq!(coords, expected);
    assert!(g2.roots.iter().all(|r| r.coords().iter().sum::<Rat>() == Rat::from_integer(0)));
}

#[test]
fn e7_matches_explicit_description() {
    let mut expected = BTreeSet::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = [0i64; 8];
                v[i] = a;
                v[j] = b;
                expected.insert(root(&v));
            }
        }
    }
    let mut e78 = [0i64; 8];
    e78[6] = 1;
    e78[7] = -1;
    expected.insert(root(&e78));
    expected.insert(root(&e78).neg());
    for mask in 0..64u32 {
        if mask.count_ones() % 2 == 1 {
            let mut v = [0i64; 8];
            for (l, x) in v.iter_mut().enumerate().take(6) {
                *x = if mask >> l & 1 == 1 { -1 } else { 1 };
            }
            v[6] = 1;
            v[7] = -1;
            expected.insert(half(&v));
            expected.insert(half(&v).neg());
        }
    }
    assert_eq!(as_set(&system("E7").roots), expected);
}

#[test]
fn e6_matches_explicit_description() {
    // pairs among the first five coordinates, half vectors with an even number of minus signs there
    let mut expected = BTreeSet::new();
    for i in 0..5 {
        for j in i + 1..5 {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = [0i64; 8];
                v[i] = a;
                v[j] = b;
                expected.insert(root(&v));
            }
        }
    }
    for mask in 0..32u32 {
        if mask.count_ones() % 2 == 0 {
            let mut v = [0i64; 8];
            for (l, x) in v.iter_mut().enumerate().take(5) {
                *x = if mask >> l & 1 == 1 { -1 } else { 1 };
            }
            v[5] = -1;
            v[6] = -1;
            v[7] = 1;
            expected.insert(half(&v));
            expected.insert(half(&v).neg());
        }
    }
    assert_eq!(expected.len(), 72);
    assert_eq!(as_set(&system("E6").roots), expected);
}

#[test]
fn reflection_basics() {
    let a = root(&[1, -1]);
    let s = GroupElem::reflection(&a);
    assert_eq!(s.apply_root(&root(&[1, 0])), root(&[0, 1]));
    assert_eq!(s.apply_root(&root(&[0, 1])), root(&[1, 0]));
    assert_eq!(s.apply_root(&a), a.neg());
    assert!(s.mul(&s).is_identity());
    assert!(s.is_orthogonal());
    assert_eq!(a.coroot_pairing(&a), Rat::from_integer(2));
}

#[test]
fn coxeter_orders() {
    let g2 = system("G2");
    assert_eq!(coxeter_order(&g2.simple[0], &g2.simple[1]).unwrap(), 6);
    let b3 = system("B3");
    assert_eq!(coxeter_order(&root(&[0, 1, -1]), &root(&[0, 0, 1])).unwrap(), 4);
    assert_eq!(coxeter_order(&root(&[1, -1, 0]), &root(&[0, 0, 1])).unwrap(), 2);
    assert_eq!(coxeter_order(&root(&[1, 0, 0]), &root(&[1, 0, 0])).unwrap(), 1);
    assert_eq!(b3.coxeter_matrix().unwrap(), vec![vec![1, 3, 2], vec![3, 1, 4], vec![2, 4, 1]]);
    for label in ["A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"] {
        let hist = system(label).coxeter_orders().unwrap();
        assert!(hist.keys().all(|m| [2, 3, 4, 6].contains(m)), "{label}: {hist:?}");
    }
}

#[test]
fn weyl_groups() {
    for (label, order) in [("A2", 6), ("G2", 12), ("B2", 8), ("A3", 24), ("B3", 48), ("F4", 1152)] {
        let sys = system(label);
        let w = sys.weyl_group(DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(w.len(), order, "{label}");
        assert_eq!(w.len() as u128, sys.root_type.weyl_order());
        assert!(w.iter().all(GroupElem::is_orthogonal));
        assert!(conjugation_violation(&sys, &w, 8, 7).is_none(), "{label}");
    }
    assert!(matches!(system("E7").weyl_group(DEFAULT_WEYL_CAP), Err(RootsError::CapExceeded { .. })));
    assert!(matches!(system("E8").weyl_group(DEFAULT_WEYL_CAP), Err(RootsError::CapExceeded { .. })));
    assert!(matches!(system("A3").weyl_group(10), Err(RootsError::CapExceeded { .. })));
}

#[test]
fn multiplicity_classes() {
    assert_eq!(system("A2").params(), vec![Param::C(1)]);
    let b2 = system("B2");
    assert_eq!(b2.param_of(&root(&[1, 1])), Param::C(1));
    assert_eq!(b2.param_of(&root(&[0, 1])), Param::C(2));
    assert!(!b2.is_normalized());
    assert!(system("E8").is_normalized());
}

#[test]
fn degenerate_ordering_rejected() {
    let a2 = system("A2");
    let flat = vec![Rat::from_integer(1); 3];
    assert!(matches!(simple_system(&a2.roots, &flat), Err(RootsError::DegenerateOrdering(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_orthogonal_involutions(c in prop::collection::vec(-4i64..=4, 3)) {
        prop_assume!(c.iter().any(|x| *x != 0));
        let a = root(&c);
        let s = GroupElem::reflection(&a);
        prop_assert!(s.mul(&s).is_identity());
        prop_assert!(s.is_orthogonal());
        prop_assert_eq!(s.apply_root(&a), a.neg());
    }

    #[test]
    fn random_orderings_give_valid_simple_systems(w in prop::collection::vec(-1000i64..=1000, 4)) {
        let b4 = system("B4");
        let v: Vec<Rat> = w.iter().map(|&x| Rat::from_integer(x)).collect();
        if let Ok((pos, simple)) = simple_system(&b4.roots, &v) {
            prop_assert_eq!(pos.len(), 16);
            prop_assert_eq!(simple.len(), 4);
            for r in &pos {
                let c = calogero::roots::solve_in_basis(&simple, r).unwrap();
                prop_assert!(c.iter().all(|x| x.is_integer() && *x >= Rat::from_integer(0)));
            }
        }
    }
}
