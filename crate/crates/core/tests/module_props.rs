use proptest::prelude::*;
use qflag::classify::check_ladder;
use qflag::coeffalg::FunctionAlgebra;
use qflag::fockrep::FockSpace;
use qflag::uqmod::{build_irreducible_float, weight_multiplicities};
use qflag::weyl::WeylWord;
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::Arc;

const SMALL: [(TypeLetter, usize); 6] = [
    (TypeLetter::A, 1),
    (TypeLetter::A, 2),
    (TypeLetter::A, 3),
    (TypeLetter::B, 2),
    (TypeLetter::C, 2),
    (TypeLetter::G, 2),
];

fn fock(t: TypeLetter, n: usize, q: f64, levels: usize) -> FockSpace {
    let rs = Arc::new(RootSystem::new(t, n).unwrap());
    FockSpace::new(Arc::new(FunctionAlgebra::new(rs, q).unwrap()), levels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_modules_satisfy_relations(k in 0usize..SMALL.len(), lam in proptest::collection::vec(0i64..=2, 3), q in 0.25f64..0.9) {
        let (t, n) = SMALL[k];
        let r = Arc::new(RootSystem::new(t, n).unwrap());
        let lam = Weight::from_ints(&lam[..n]);
        prop_assume!(r.weyl_dimension(&lam).unwrap() <= 200);
        let m = build_irreducible_float(&r, &lam, q, 2000).unwrap();
        let rel = m.check_relations();
        prop_assert!(rel.max() < 1e-9, "{} {lam:?} q={q}: {}", r.label(), rel.max());
        let want = weight_multiplicities(&r, &lam).unwrap();
        prop_assert_eq!(m.dim(), want.values().sum::<usize>());
        for (w, idx) in m.weight_spaces() {
            prop_assert_eq!(want.get(&w.to_ints().unwrap()).copied(), Some(idx.len()));
        }
    }

    #[test]
    fn representation_is_a_star_homomorphism(
        a in (0usize..2, 0usize..3, 0usize..3),
        b in (0usize..2, 0usize..3, 0usize..3),
        word in 0usize..4,
    ) {
        let s = fock(TypeLetter::A, 2, 0.45, 4);
        let alg = s.algebra().clone();
        let fund = [Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, 1])];
        let x = alg.coeff(&fund[a.0], a.1, a.2).unwrap();
        let y = alg.coeff(&fund[b.0], b.1, b.2).unwrap();
        let letters: &[usize] = [&[0usize][..], &[1], &[1, 0], &[0, 1, 0]][word];
        let lhs = s.pi_word(letters, &(&x * &y)).unwrap();
        let rhs = s.pi_word(letters, &x).unwrap().mul(&s.pi_word(letters, &y).unwrap()).unwrap();
        prop_assert!(lhs.window_distance(&rhs).unwrap() < 1e-9);
        let st = s.pi_word(letters, &alg.star(&x).unwrap()).unwrap();
        prop_assert!(st.window_distance(&s.pi_word(letters, &x).unwrap().adjoint()).unwrap() < 1e-9);
    }

    #[test]
    fn ladder_holds_for_any_seed(seed in any::<u64>(), sigma in 0usize..3) {
        let s = fock(TypeLetter::A, 2, 0.5, 4);
        let rs = s.algebra().root_system().clone();
        let letters: &[usize] = [&[0usize][..], &[1, 0], &[0, 1, 0]][sigma];
        let w = WeylWord::from_letters(&rs, letters).unwrap();
        let v = check_ladder(&s, &w, &Weight::from_ints(&[1, 1]), 3, seed).unwrap();
        prop_assert!(v.passed(), "{v}");
    }
}
