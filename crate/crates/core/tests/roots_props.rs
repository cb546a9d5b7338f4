use proptest::prelude::*;
use qflag::weyl::{enumerate_group, enumerate_subgroup, minimal_coset_reps, stabilizer, WeylWord, DEFAULT_GROUP_CAP};
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::{Arc, OnceLock};

const TYPES: [(TypeLetter, usize); 9] = [
    (TypeLetter::A, 1),
    (TypeLetter::A, 2),
    (TypeLetter::A, 3),
    (TypeLetter::B, 2),
    (TypeLetter::B, 3),
    (TypeLetter::C, 2),
    (TypeLetter::C, 3),
    (TypeLetter::G, 2),
    (TypeLetter::D, 4),
];

fn systems() -> &'static Vec<Arc<RootSystem>> {
    static S: OnceLock<Vec<Arc<RootSystem>>> = OnceLock::new();
    S.get_or_init(|| TYPES.iter().map(|&(t, n)| Arc::new(RootSystem::new(t, n).unwrap())).collect())
}

fn groups() -> &'static Vec<Vec<WeylWord>> {
    static G: OnceLock<Vec<Vec<WeylWord>>> = OnceLock::new();
    G.get_or_init(|| systems().iter().map(|r| enumerate_group(r, DEFAULT_GROUP_CAP).unwrap()).collect())
}

fn weight(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(lo..=hi, n)
}

#[test]
fn group_orders() {
    let orders: Vec<usize> = groups().iter().map(|g| g.len()).collect();
    assert_eq!(orders, vec![2, 6, 24, 8, 48, 8, 48, 12, 192]);
}

#[test]
fn root_lengths_and_coroots() {
    for r in systems() {
        for (root, w) in r.positive_roots().iter().zip(r.positive_root_weights()) {
            let len = r.inner(w, w).unwrap();
            assert!(*len.denom() == 1 && [2, 4, 6].contains(len.numer()), "{} {root:?}", r.label());
            for j in 0..r.rank() {
                let p = r.coroot_pairing(&Weight::fundamental(r.rank(), j), root);
                assert!(p.is_integer());
            }
        }
    }
}

#[test]
fn stabilizers_of_regular_weights_are_parabolic() {
    for r in systems().iter().filter(|r| r.rank() <= 3) {
        let n = r.rank();
        for mask in 0..(1usize << n) - 1 {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let lam = Weight::from_ints(&(0..n).map(|j| if s.contains(&j) { 0 } else { 2 }).collect::<Vec<_>>());
            let stab: std::collections::HashSet<_> = stabilizer(r, &lam, DEFAULT_GROUP_CAP).unwrap().into_iter().collect();
            let ws: std::collections::HashSet<_> = enumerate_subgroup(r, &s, DEFAULT_GROUP_CAP).unwrap().into_iter().collect();
            assert_eq!(stab, ws, "{} S={s:?}", r.label());
        }
    }
}

#[test]
fn inversions_of_minimal_reps_avoid_levi_roots() {
    for r in systems() {
        let n = r.rank();
        for mask in 0..(1usize << n) - 1 {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            for w in minimal_coset_reps(r, &s).unwrap().minimal_reps {
                for g in w.gamma_sequence() {
                    let in_levi = g.iter().enumerate().all(|(j, &c)| c == 0 || s.contains(&j));
                    assert!(!in_levi, "{} S={s:?} w={w} gamma={g:?}", r.label());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn form_is_weyl_invariant(k in 0usize..TYPES.len(), wi in any::<prop::sample::Index>(), mu in weight(4, -4, 4), nu in weight(4, -4, 4)) {
        let r = &systems()[k];
        let n = r.rank();
        let w = wi.get(&groups()[k]);
        let (mu, nu) = (Weight::from_ints(&mu[..n]), Weight::from_ints(&nu[..n]));
        prop_assert_eq!(r.inner(&w.act(&mu), &w.act(&nu)).unwrap(), r.inner(&mu, &nu).unwrap());
    }

    #[test]
    fn weyl_dimension_is_a_positive_integer(k in 0usize..TYPES.len(), lam in weight(4, 0, 4)) {
        let r = &systems()[k];
        let lam = Weight::from_ints(&lam[..r.rank()]);
        let d = r.weyl_dimension(&lam).unwrap();
        prop_assert!(d >= 1);
        prop_assert_eq!(d == 1, lam.is_zero());
    }

    #[test]
    fn words_act_like_their_matrices(k in 0usize..TYPES.len(), letters in proptest::collection::vec(0usize..4, 0..12), mu in weight(4, -3, 3)) {
        let r = &systems()[k];
        let n = r.rank();
        let letters: Vec<usize> = letters.into_iter().map(|i| i % n).collect();
        let w = WeylWord::from_letters(r, &letters).unwrap();
        let mut v = Weight::from_ints(&mu[..n]);
        for &i in letters.iter().rev() {
            v = WeylWord::simple(r, i).unwrap().act(&v);
        }
        prop_assert_eq!(w.act(&Weight::from_ints(&mu[..n])), v);
        prop_assert!(w.length() <= letters.len());
        prop_assert_eq!(w.length() % 2, letters.len() % 2);
    }
}
