use num_complex::Complex64 as C;
use qflag::coeffalg::relations::Variant;
use qflag::coeffalg::{AlgebraElement, FunctionAlgebra, PbwMonomial};
use qflag::uqmod::Generator;
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::Arc;

const Q: f64 = 0.6;

fn su2() -> (FunctionAlgebra, [[AlgebraElement; 2]; 2]) {
    let rs = Arc::new(RootSystem::new(TypeLetter::A, 1).unwrap());
    let alg = FunctionAlgebra::new(rs, Q).unwrap();
    let w = Weight::from_ints(&[1]);
    let t = |i, j| alg.coeff(&w, i, j).unwrap();
    let ts = [[t(0, 0), t(0, 1)], [t(1, 0), t(1, 1)]];
    (alg, ts)
}

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

#[test]
fn su2_relations() {
    let (alg, t) = su2();
    let det = &(&t[0][0] * &t[1][1]) - &(&t[0][1] * &t[1][0]).scale_re(Q);
    assert!(alg.equals(&det, &AlgebraElement::one()).unwrap());
    assert!((alg.counit(&det) - c(1.0)).norm() < 1e-12);
    assert!(alg.equals(&(&t[0][1] * &t[1][0]), &(&t[1][0] * &t[0][1])).unwrap());
    assert!(alg.equals(&(&t[0][0] * &t[0][1]), &(&t[0][1] * &t[0][0]).scale_re(Q)).unwrap());
    let lhs = &(&t[0][0] * &t[1][1]) - &(&t[1][1] * &t[0][0]);
    let rhs = (&t[0][1] * &t[1][0]).scale_re(Q - 1.0 / Q);
    assert!(alg.equals(&lhs, &rhs).unwrap());
    assert!(!alg.equals(&t[0][0], &t[1][1]).unwrap());
    assert!(!alg.equals(&(&t[0][0] * &t[0][1]), &(&t[0][1] * &t[0][0])).unwrap());
}

#[test]
fn su2_star_and_evaluation() {
    let (alg, t) = su2();
    assert!(alg.equals(&alg.star(&t[0][0]).unwrap(), &t[1][1]).unwrap());
    assert!(alg.equals(&alg.star(&t[0][1]).unwrap(), &t[1][0].scale_re(-Q)).unwrap());
    let k = PbwMonomial { k_exponents: vec![1], ..Default::default() };
    assert!((alg.evaluate(&t[0][0], &k) - c(Q)).norm() < 1e-12);
    let f = PbwMonomial { f_word: vec![0], ..Default::default() };
    assert!((alg.evaluate(&t[1][0], &f).norm() - 1.0).abs() < 1e-12);
    // left action of E kills the highest ket
    assert!(alg.is_zero(&alg.left_act(Generator::E(0), &t[0][0])).unwrap());
    // right action moves the bra by X^*: F^* is a multiple of K^{-1}E
    assert!(alg.is_zero(&alg.right_act(&t[0][0], Generator::F(0))).unwrap());
    let r = alg.right_act(&t[0][0], Generator::E(0));
    assert!(alg.in_span(&r, &[t[1][0].clone()]).unwrap().in_span);
    assert!(!alg.is_zero(&r).unwrap());
    let r = alg.right_act(&t[1][0], Generator::F(0));
    assert!(alg.in_span(&r, &[t[0][0].clone()]).unwrap().in_span);
    assert!(!alg.is_zero(&r).unwrap());
    // (phi.X)(Y) = phi(XY)
    let phi = &t[1][0] * &t[0][1];
    let x = [Generator::E(0), Generator::K(0)];
    let y = [Generator::F(0), Generator::F(0), Generator::E(0)];
    let lhs = alg.evaluate_word(&alg.right_act(&alg.right_act(&phi, x[0]), x[1]), &y);
    let rhs = alg.evaluate_word(&phi, &[&x[..], &y[..]].concat());
    assert!((lhs - rhs).norm() < 1e-12, "{lhs} {rhs}");
    let lhs = alg.evaluate_word(&alg.left_act(x[0], &alg.left_act(x[1], &phi)), &y);
    let rhs = alg.evaluate_word(&phi, &[&y[..], &x[..]].concat());
    assert!((lhs - rhs).norm() < 1e-12, "{lhs} {rhs}");
}

#[test]
fn star_matches_antipode_definition() {
    let rs = Arc::new(RootSystem::new(TypeLetter::B, 2).unwrap());
    let alg = FunctionAlgebra::new(rs.clone(), 0.7).unwrap();
    let lam = Weight::from_ints(&[0, 1]);
    let phi = &alg.coeff(&lam, 1, 0).unwrap() * &alg.coeff(&lam, 2, 3).unwrap();
    let phi = &phi + &alg.coeff(&lam, 3, 3).unwrap().scale(C::new(0.0, 2.0));
    let star = alg.star(&phi).unwrap();
    let words: Vec<Vec<Generator>> = vec![
        vec![],
        vec![Generator::E(0)],
        vec![Generator::F(1), Generator::K(0)],
        vec![Generator::E(1), Generator::F(0), Generator::E(1)],
        vec![Generator::F(0), Generator::F(1), Generator::KInv(1)],
    ];
    for w in words {
        let mut coef = 1.0;
        let mut sw = Vec::new();
        for g in &w {
            let qi = 0.7f64.powi(rs.symmetrizer()[g.node()] as i32);
            let (s, h) = qflag::coeffalg::antipode_star(*g, qi);
            coef *= s;
            sw.push(h);
        }
        // S(XY)^* = S(Y)^* S(X)^*... S is an anti-homomorphism and * too, so order is kept
        let expect = (alg.evaluate_word(&phi, &sw) * coef).conj();
        let got = alg.evaluate_word(&star, &w);
        assert!((expect - got).norm() < 1e-10, "{w:?}: {expect} vs {got}");
    }
    assert!(alg.equals(&alg.star(&star).unwrap(), &phi).unwrap());
}

#[test]
fn unitarity() {
    let (alg, _) = su2();
    let w = Weight::from_ints(&[1]);
    assert!(alg.unitarity_check(&w, 0, 0).unwrap());
    assert!(alg.unitarity_check(&w, 0, 1).unwrap());
    let rs = Arc::new(RootSystem::new(TypeLetter::A, 2).unwrap());
    let a2 = FunctionAlgebra::new(rs, 0.5).unwrap();
    let lam = Weight::from_ints(&[1, 0]);
    for a in 0..3 {
        for b in 0..3 {
            assert!(a2.unitarity_check(&lam, a, b).unwrap(), "{a} {b}");
        }
    }
}

#[test]
fn commutation_relations_a2() {
    let rs = Arc::new(RootSystem::new(TypeLetter::A, 2).unwrap());
    let alg = FunctionAlgebra::new(rs, 0.5).unwrap();
    let (l1, l2) = (Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, 1]));
    for v in 0..3 {
        for w in 0..3 {
            for var in [Variant::N, Variant::NRev, Variant::O] {
                let rep = alg.commutation_defect(&l1, &l2, v, w, var).unwrap();
                assert!(rep.holds(), "{v} {w} {var:?}: {rep:?}");
            }
        }
    }
}

#[test]
fn commutation_relations_su2() {
    let (alg, _) = su2();
    let w = Weight::from_ints(&[1]);
    let rep = alg.commutation_defect(&w, &w, 0, 0, Variant::N).unwrap();
    assert!(rep.defect_norm < 1e-12 && rep.holds());
    // a nontrivial relation modulo a one-element span
    let rep = alg.commutation_defect(&w, &w, 1, 0, Variant::N).unwrap();
    assert_eq!(rep.span_size, 1);
    assert!(rep.holds());
    assert!(rep.defect_norm > 1e-3);
    // without the correct power of q the defect leaves the span
    let t = |i, j| alg.coeff(&w, i, j).unwrap();
    let bad = &(&t(1, 0) * &t(0, 0)) - &(&t(0, 0) * &t(1, 0));
    assert!(!alg.in_span(&bad, &[AlgebraElement::zero()]).unwrap().in_span);
}
