use num_complex::Complex64 as C;
use proptest::prelude::*;
use qflag::coeffalg::{coproduct_word, AlgebraElement, FunctionAlgebra};
use qflag::uqmod::Generator;
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::{Arc, OnceLock};

fn alg() -> &'static FunctionAlgebra {
    static A: OnceLock<FunctionAlgebra> = OnceLock::new();
    A.get_or_init(|| {
        let rs = Arc::new(RootSystem::new(TypeLetter::A, 2).unwrap());
        FunctionAlgebra::new(rs, 0.55).unwrap()
    })
}

fn fundamental(i: usize) -> Weight {
    Weight::fundamental(2, i)
}

/// Random combination of at most three fundamental coefficients.
fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((0usize..2, 0usize..3, 0usize..3, -2.0f64..2.0, -2.0f64..2.0), 1..4).prop_map(|ts| {
        let a = alg();
        let mut e = AlgebraElement::zero();
        for (i, b, k, re, im) in ts {
            e = &e + &a.coeff(&fundamental(i), b, k).unwrap().scale(C::new(re, im));
        }
        e
    })
}

fn generator() -> impl Strategy<Value = Generator> {
    (0usize..4, 0usize..2).prop_map(|(g, i)| match g {
        0 => Generator::E(i),
        1 => Generator::F(i),
        2 => Generator::K(i),
        _ => Generator::KInv(i),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn product_is_associative(x in element(), y in element(), z in element()) {
        let a = alg();
        prop_assert!(a.equals(&(&(&x * &y) * &z), &(&x * &(&y * &z))).unwrap());
    }

    #[test]
    fn star_reverses_products(x in element(), y in element()) {
        let a = alg();
        let lhs = a.star(&(&x * &y)).unwrap();
        let rhs = &a.star(&y).unwrap() * &a.star(&x).unwrap();
        prop_assert!(a.equals(&lhs, &rhs).unwrap());
        prop_assert!(a.equals(&a.star(&a.star(&x).unwrap()).unwrap(), &x).unwrap());
    }

    #[test]
    fn unit_law(x in element()) {
        let a = alg();
        prop_assert!(a.equals(&(&AlgebraElement::one() * &x), &x).unwrap());
    }

    #[test]
    fn right_action_preserves_highest_columns(b in 0usize..3, i in 0usize..2, g in generator()) {
        let a = alg();
        let lam = fundamental(i);
        let id = a.irreducible(&lam).unwrap();
        let top = a.highest_index(id).unwrap();
        let phi = a.coeff(&lam, b, top).unwrap();
        let col: Vec<AlgebraElement> = (0..3).map(|v| a.coeff(&lam, v, top).unwrap()).collect();
        prop_assert!(a.in_span(&a.right_act(&phi, g), &col).unwrap().in_span);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn product_evaluates_through_coproduct(
        x in element(),
        y in element(),
        word in prop::collection::vec(generator(), 0..4),
    ) {
        let a = alg();
        let lhs = a.evaluate_word(&(&x * &y), &word);
        let mut rhs = C::new(0.0, 0.0);
        for (w1, w2) in coproduct_word(&word) {
            rhs += a.evaluate_word(&x, &w1) * a.evaluate_word(&y, &w2);
        }
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()), "{} vs {}", lhs, rhs);
    }
}
