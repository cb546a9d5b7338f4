use qflag::classify::*;
use qflag::coeffalg::FunctionAlgebra;
use qflag::flagalg::FlagContext;
use qflag::fockrep::{FockSpace, TorusPoint};
use qflag::{RootSystem, TypeLetter, Weight, WeylWord};
use std::sync::Arc;

fn setup(t: TypeLetter, n: usize, q: f64, levels: usize) -> (Arc<RootSystem>, FockSpace) {
    let rs = Arc::new(RootSystem::new(t, n).unwrap());
    let fs = FockSpace::new(Arc::new(FunctionAlgebra::new(rs.clone(), q).unwrap()), levels).unwrap();
    (rs, fs)
}

fn word(rs: &Arc<RootSystem>, l: &[usize]) -> WeylWord {
    WeylWord::from_letters(rs, l).unwrap()
}

#[test]
fn vanishing_patterns() {
    let (rs, fs) = setup(TypeLetter::A, 1, 0.5, 5);
    let v = check_vanishing(&fs, &word(&rs, &[]), &Weight::from_ints(&[1])).unwrap();
    assert!(v.passed(), "{v}");
    let (rs, fs) = setup(TypeLetter::A, 2, 0.5, 5);
    for l in [vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1, 0]] {
        for lam in [[1, 0], [0, 1]] {
            let v = check_vanishing(&fs, &word(&rs, &l), &Weight::from_ints(&lam)).unwrap();
            assert!(v.passed(), "{v}");
        }
    }
    let v = check_vanishing(&fs, &word(&rs, &[0]), &Weight::from_ints(&[1, 0])).unwrap();
    assert!(v.to_string().contains("outside=1"), "{v}");
    let v = check_vanishing(&fs, &WeylWord::longest(&rs), &Weight::from_ints(&[1, 0])).unwrap();
    assert!(v.to_string().contains("outside=0"), "{v}");
}

#[test]
fn h1_and_preconditions() {
    let (rs, fs) = setup(TypeLetter::A, 2, 0.5, 6);
    let ctx = FlagContext::new(rs.clone(), &[0]).unwrap();
    let w2 = Weight::from_ints(&[0, 1]);
    assert!(check_h1(&fs, &ctx, &word(&rs, &[1]), &w2).unwrap().passed());
    assert!(check_h1(&fs, &ctx, &word(&rs, &[0, 1]), &w2).unwrap().passed());
    assert!(check_h1(&fs, &ctx, &word(&rs, &[1]), &Weight::from_ints(&[1, 0])).is_err());
    assert!(check_h1(&fs, &ctx, &word(&rs, &[1, 0]), &w2).is_err());
}

#[test]
fn inequivalence_for_all_pairs() {
    for (t, q) in [(TypeLetter::A, 0.5), (TypeLetter::B, 0.6)] {
        let (rs, fs) = setup(t, 2, q, 5);
        for s in [vec![], vec![0], vec![1]] {
            let ctx = FlagContext::new(rs.clone(), &s).unwrap();
            let reps = ctx.minimal_reps().to_vec();
            for (i, a) in reps.iter().enumerate() {
                for b in &reps[i + 1..] {
                    let v = check_inequivalence(&fs, &ctx, a, b).unwrap();
                    assert!(v.passed(), "{v}");
                }
            }
            assert!(check_inequivalence(&fs, &ctx, &reps[0], &reps[0]).is_err());
        }
    }
}

#[test]
fn restriction_factorization() {
    let (rs, fs) = setup(TypeLetter::A, 2, 0.5, 5);
    let ctx = FlagContext::new(rs.clone(), &[0]).unwrap();
    let t = TorusPoint::root_of_unity(&[1, 2], 5);
    for l in [vec![0], vec![1, 0], vec![0, 1, 0], vec![1]] {
        let v = check_restriction_factorization(&fs, &ctx, &word(&rs, &l), &t).unwrap();
        assert!(v.passed(), "{v}");
    }
}

#[test]
fn gns_moments() {
    let (rs, fs) = setup(TypeLetter::A, 2, 0.5, 5);
    let ctx = FlagContext::new(rs.clone(), &[0]).unwrap();
    for sigma in ctx.minimal_reps() {
        let v = check_gns_pattern(&fs, &ctx, sigma, &Weight::from_ints(&[0, 1])).unwrap();
        assert!(v.passed(), "{v}");
    }
    let full = FlagContext::new(rs.clone(), &[]).unwrap();
    let v = check_gns_pattern(&fs, &full, &word(&rs, &[1, 0]), &Weight::from_ints(&[1, 1])).unwrap();
    assert!(v.passed(), "{v}");
}

#[test]
fn ladder_relation() {
    let (rs, fs) = setup(TypeLetter::A, 2, 0.5, 6);
    for l in [vec![0], vec![0, 1], vec![0, 1, 0]] {
        let v = check_ladder(&fs, &word(&rs, &l), &Weight::from_ints(&[1, 1]), 10, 7).unwrap();
        assert!(v.passed(), "{v}");
    }
    let (rs, fs) = setup(TypeLetter::B, 2, 0.6, 5);
    let v = check_ladder(&fs, &word(&rs, &[1, 0]), &Weight::from_ints(&[1, 1]), 10, 3).unwrap();
    assert!(v.passed(), "{v}");
}

#[test]
fn verdict_lines_are_single_records() {
    let (rs, fs) = setup(TypeLetter::A, 1, 0.5, 4);
    let v = check_vanishing(&fs, &word(&rs, &[0]), &Weight::from_ints(&[1])).unwrap();
    let s = v.to_string();
    assert!(!s.contains('\n'));
    assert!(s.starts_with("claim=check_vanishing anchor=kernel-pattern status=pass"));
}
