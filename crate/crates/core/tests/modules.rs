use num_rational::BigRational;
use qflag::scalar::Field;
use qflag::uqmod::*;
use qflag::{RootSystem, TypeLetter, Weight};
use qflag_oracles::Datum;
use std::collections::BTreeMap;
use std::sync::Arc;

fn rs(t: TypeLetter, n: usize) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(t, n).unwrap())
}

fn letter(t: TypeLetter) -> char {
    t.to_string().chars().next().unwrap()
}

fn character<T: Field>(m: &UqModule<T>) -> BTreeMap<Vec<i64>, u64> {
    m.weight_spaces()
        .iter()
        .map(|(w, idx)| (w.to_ints().unwrap(), idx.len() as u64))
        .collect()
}

#[test]
fn float_characters_match_freudenthal() {
    let cases: &[(TypeLetter, usize, &[i64])] = &[
        (TypeLetter::A, 2, &[2, 1]),
        (TypeLetter::A, 3, &[1, 0, 1]),
        (TypeLetter::B, 2, &[1, 1]),
        (TypeLetter::B, 3, &[0, 0, 1]),
        (TypeLetter::C, 3, &[0, 1, 0]),
        (TypeLetter::D, 4, &[0, 1, 0, 0]),
        (TypeLetter::G, 2, &[0, 1]),
        (TypeLetter::G, 2, &[1, 1]),
        (TypeLetter::F, 4, &[0, 0, 0, 1]),
        (TypeLetter::E, 6, &[1, 0, 0, 0, 0, 0]),
    ];
    for &(t, n, lam) in cases {
        let r = rs(t, n);
        let m = build_irreducible_float(&r, &Weight::from_ints(lam), 0.5, 2000).unwrap();
        let oracle = Datum::of_type(letter(t), n).freudenthal(lam);
        assert_eq!(character(&m), oracle, "{t}{n} {lam:?}");
        let rep = m.check_relations();
        assert!(rep.max() < 1e-9, "{t}{n} {lam:?}: {rep:?}");
    }
}

#[test]
fn exact_characters_and_relations() {
    let q = BigRational::from_ratio(1, 2);
    let cases: &[(TypeLetter, usize, &[i64])] = &[
        (TypeLetter::A, 2, &[1, 1]),
        (TypeLetter::A, 2, &[2, 0]),
        (TypeLetter::B, 2, &[1, 1]),
        (TypeLetter::C, 3, &[1, 0, 0]),
        (TypeLetter::G, 2, &[1, 0]),
    ];
    for &(t, n, lam) in cases {
        let r = rs(t, n);
        let m = build_irreducible_exact(&r, &Weight::from_ints(lam), &q, 2000).unwrap();
        assert_eq!(character(&m), Datum::of_type(letter(t), n).freudenthal(lam));
        assert_eq!(m.check_relations().max(), 0.0, "{t}{n} {lam:?}");
    }
}

#[test]
fn duals_have_opposite_highest_weight_and_unitary_form() {
    let r = rs(TypeLetter::A, 2);
    let m = build_irreducible_float(&r, &Weight::from_ints(&[1, 0]), 0.5, 100).unwrap();
    let d = dual_module(&m).unwrap();
    assert_eq!(d.highest_weight(), Some(&Weight::from_ints(&[0, 1])));
    assert!(d.check_relations().max() < 1e-12);
    let e = build_irreducible_exact(&r, &Weight::from_ints(&[1, 1]), &BigRational::from_ratio(1, 2), 100).unwrap();
    let de = dual_module(&e).unwrap();
    assert_eq!(de.check_relations().max(), 0.0);
    let b = rs(TypeLetter::B, 2);
    let m = build_irreducible_float(&b, &Weight::from_ints(&[1, 1]), 0.3, 100).unwrap();
    assert!(dual_module(&m).unwrap().check_relations().max() < 1e-9);
}

#[test]
fn tensor_decomposition_matches_brauer_klimyk() {
    let cases: &[(TypeLetter, usize, &[i64], &[i64])] = &[
        (TypeLetter::A, 2, &[1, 0], &[0, 1]),
        (TypeLetter::A, 2, &[1, 1], &[1, 0]),
        (TypeLetter::B, 2, &[1, 0], &[0, 1]),
        (TypeLetter::G, 2, &[1, 0], &[1, 0]),
    ];
    for &(t, n, l1, l2) in cases {
        let r = rs(t, n);
        let a = build_irreducible_float(&r, &Weight::from_ints(l1), 0.5, 500).unwrap();
        let b = build_irreducible_float(&r, &Weight::from_ints(l2), 0.5, 500).unwrap();
        let tp = tensor(&a, &b).unwrap();
        assert!(tp.check_relations().max() < 1e-9);
        let got: BTreeMap<Vec<i64>, u64> = decompose_highest_weights(&tp)
            .into_iter()
            .map(|(w, k)| (w.to_ints().unwrap(), k as u64))
            .collect();
        assert_eq!(got, Datum::of_type(letter(t), n).tensor_decompose(l1, l2), "{t}{n}");
    }
}

#[test]
fn branching_matches_oracle() {
    let r = rs(TypeLetter::B, 3);
    let lam = [1, 0, 1];
    let m = build_irreducible_float(&r, &Weight::from_ints(&lam), 0.5, 2000).unwrap();
    for s in [vec![0usize], vec![1, 2], vec![0, 2]] {
        let got: BTreeMap<Vec<i64>, u64> = branch_to_levi(&m, &s)
            .unwrap()
            .into_iter()
            .map(|e| (e.weight.to_ints().unwrap(), e.multiplicity as u64))
            .collect();
        assert_eq!(got, Datum::of_type('B', 3).branch(&lam, &s), "S = {s:?}");
    }
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = cache::ModuleCache::new(dir.path());
    let r = rs(TypeLetter::A, 2);
    let lam = Weight::from_ints(&[1, 1]);
    let a = cache.irreducible_exact(&r, &lam, 0.5, 100).unwrap();
    let b = cache.irreducible_exact(&r, &lam, 0.5, 100).unwrap();
    assert_eq!(a.e(0), b.e(0));
    assert_eq!(a.gram(), b.gram());
    let f = cache.irreducible_float(&r, &lam, 0.5, 100).unwrap();
    let g = cache.irreducible_float(&r, &lam, 0.5, 100).unwrap();
    assert!(f.f(1).lin_comb(&1.0, g.f(1), &-1.0).max_abs() < 1e-15);
}

#[test]
fn rejects_invalid_input() {
    let r = rs(TypeLetter::A, 2);
    assert!(build_irreducible_float(&r, &Weight::from_ints(&[-1, 0]), 0.5, 100).is_err());
    assert!(build_irreducible_float(&r, &Weight::from_ints(&[1, 0]), 1.5, 100).is_err());
    assert!(matches!(
        build_irreducible_float(&r, &Weight::from_ints(&[9, 9]), 0.5, 100),
        Err(qflag::Error::ResourceExceeded(_))
    ));
}

#[test]
fn float_modules_with_large_multiplicities() {
    for (t, n, lam, q) in [
        (TypeLetter::C, 3, vec![1, 1, 1], 0.5),
        (TypeLetter::C, 3, vec![3, 1, 0], 0.8),
        (TypeLetter::G, 2, vec![2, 1], 0.3),
        (TypeLetter::B, 3, vec![1, 1, 1], 0.5),
    ] {
        let r = rs(t, n);
        let w = Weight::from_ints(&lam);
        let m = build_irreducible_float(&r, &w, q, 5000).unwrap();
        assert_eq!(m.dim() as u64, r.weyl_dimension(&w).unwrap());
        let rel = m.check_relations();
        assert!(rel.max() < 1e-9, "{t}{n} {lam:?} q={q}: {rel:?}");
    }
}
