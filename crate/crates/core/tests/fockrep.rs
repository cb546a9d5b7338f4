use qflag::coeffalg::{AlgebraElement, FunctionAlgebra, C64};
use qflag::fockrep::*;
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::Arc;

fn space(t: TypeLetter, n: usize, q: f64, levels: usize) -> FockSpace {
    let rs = Arc::new(RootSystem::new(t, n).unwrap());
    FockSpace::new(Arc::new(FunctionAlgebra::new(rs, q).unwrap()), levels).unwrap()
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[test]
fn pi_su2_generators() {
    let q = 0.6;
    let t21 = pi_su2(&[TGen::T21], 4, q).unwrap();
    for j in 0..4 {
        assert!((t21.entry(j, j) - re(q.powi(j as i32))).norm() < 1e-15);
    }
    assert_eq!(t21.window(), 4);
    let t12 = pi_su2(&[TGen::T12], 3, q).unwrap();
    assert!((t12.entry(2, 2) + re(q.powi(3))).norm() < 1e-15);
    let p = pi_su2(&[TGen::T11, TGen::T22], 5, q).unwrap();
    assert!((p.entry(0, 0) - re(1.0 - q * q)).norm() < 1e-15);
    assert_eq!(p.window(), 3);
    assert!(pi_su2(&[TGen::T11], 1, q).is_err());
}

#[test]
fn su2_relations_on_window() {
    for q in [0.2, 0.5, 0.9] {
        for (name, r) in su2_relation_residuals(32, q).unwrap() {
            assert!(r < 1e-12, "{name}: {r:e} at q = {q}");
        }
    }
}

#[test]
fn operator_algebra() {
    let a = pi_su2(&[TGen::T11], 4, 0.5).unwrap();
    let b = pi_su2(&[TGen::T22], 4, 0.5).unwrap();
    let k = a.kron(&b).unwrap();
    assert_eq!(k.dim(), 16);
    assert_eq!(k.digits(k.index_of(&[1, 3])), vec![1, 3]);
    assert!((k.entry(k.index_of(&[0, 2]), k.index_of(&[1, 1])) - a.entry(0, 1) * b.entry(2, 1)).norm() < 1e-15);
    let m = a.mul(&b).unwrap();
    assert_eq!(m.window(), 2);
    assert!(a.adjoint().window_distance(&b).unwrap() < 1e-15);
    assert!(matches!(TruncatedOperator::identity(7, 10), Err(qflag::Error::ResourceExceeded(_))));
}

#[test]
fn projection_to_su2() {
    let s = space(TypeLetter::A, 1, 0.5, 6);
    let alg = s.algebra().clone();
    let w1 = Weight::from_ints(&[1]);
    let t11 = alg.coeff(&w1, 0, 0).unwrap();
    let e = s.project_su2(&t11, 0).unwrap();
    assert_eq!(e.terms.len(), 1);
    assert_eq!(e.terms[0].0, vec![TGen::T11]);
    assert!((e.terms[0].1 - re(1.0)).norm() < 1e-10);

    let s = space(TypeLetter::A, 2, 0.5, 6);
    let alg = s.algebra().clone();
    let c = alg.coeff(&Weight::from_ints(&[1, 0]), 0, 0).unwrap();
    let e2 = s.project_su2(&c, 1).unwrap();
    assert_eq!(e2.terms.len(), 1);
    assert!(e2.terms[0].0.is_empty());
    assert!((e2.terms[0].1 - re(1.0)).norm() < 1e-10);
    let e1 = s.project_su2(&c, 0).unwrap();
    assert_eq!(e1.terms.len(), 1);
    assert_eq!(e1.terms[0].0, vec![TGen::T11]);
}

#[test]
fn sigma_examples() {
    let q = 0.5;
    let s = space(TypeLetter::A, 1, q, 5);
    let alg = s.algebra().clone();
    let w1 = Weight::from_ints(&[1]);
    let t21 = alg.coeff(&w1, 1, 0).unwrap();
    let op = s.pi_word(&[0], &t21).unwrap();
    for j in 0..5 {
        assert!((op.entry(j, j).norm() - q.powi(j as i32)).abs() < 1e-12);
    }
    let pe = s.pi_word(&[], &alg.coeff(&w1, 0, 0).unwrap()).unwrap();
    assert_eq!(pe.dim(), 1);
    assert!((pe.entry(0, 0) - re(1.0)).norm() < 1e-14);
    assert_eq!(s.pi_word(&[], &t21).unwrap().entry(0, 0), re(0.0));
    assert!(s.pi_word(&[0, 0], &t21).is_err());
}

#[test]
fn tau_characters() {
    let s = space(TypeLetter::A, 1, 0.5, 4);
    let alg = s.algebra().clone();
    let w1 = Weight::from_ints(&[1]);
    let t = TorusPoint::root_of_unity(&[1], 8);
    let t11 = alg.coeff(&w1, 0, 0).unwrap();
    assert!((s.tau(&t11, &t) - t.coords()[0]).norm() < 1e-15);
    assert_eq!(s.tau(&alg.coeff(&w1, 0, 1).unwrap(), &t), re(0.0));
    assert_eq!(s.tau(&AlgebraElement::one(), &t), re(1.0));
    let t22 = alg.coeff(&w1, 1, 1).unwrap();
    assert!((s.tau(&(&t11 * &t22), &t) - re(1.0)).norm() < 1e-15);
}

#[test]
fn l_operator_spectra() {
    let q = 0.5;
    let s = space(TypeLetter::A, 1, q, 4);
    let l = s.l_operator(&[0], &Weight::from_ints(&[1])).unwrap();
    assert!(l.is_diagonal(1e-12));
    for j in 0..4 {
        assert!((l.entry(j, j) - re(q.powi(2 * j as i32))).norm() < 1e-12);
    }
    let s = space(TypeLetter::A, 2, q, 5);
    let lam = Weight::from_ints(&[1, 1]);
    let l = s.l_operator(&[0, 1], &lam).unwrap();
    let pred = s.predicted_l_diagonal(&[0, 1], &lam, false).unwrap();
    assert!(l.is_diagonal(1e-12));
    for (i, p) in pred.iter().enumerate() {
        assert!((l.entry(i, i) - re(*p)).norm() < 1e-12);
    }
    let (d, idx) = s.h1_eigenspace(&[0, 1], &Weight::from_ints(&[1, 0])).unwrap();
    assert_eq!(d, 5);
    assert!(idx.contains(&0));
    assert_eq!(s.h1_eigenspace(&[1], &Weight::from_ints(&[0, 1])).unwrap().0, 1);
    assert_eq!(s.h1_eigenspace(&[], &lam).unwrap().0, 1);
}

#[test]
fn b2_l_operator_uses_node_parameters() {
    let q = 0.6;
    let s = space(TypeLetter::B, 2, q, 4);
    let lam = Weight::from_ints(&[1, 1]);
    let l = s.l_operator(&[1, 0], &lam).unwrap();
    let pred = s.predicted_l_diagonal(&[1, 0], &lam, false).unwrap();
    assert!(l.is_diagonal(1e-12));
    for (i, p) in pred.iter().enumerate() {
        assert!((l.entry(i, i) - re(*p)).norm() < 1e-12, "{i}: {} vs {p}", l.entry(i, i));
    }
}

#[test]
fn homomorphism_and_star_on_window() {
    let s = space(TypeLetter::A, 2, 0.45, 5);
    let alg = s.algebra().clone();
    let mut gens = Vec::new();
    for lam in [[1, 0], [0, 1]] {
        for a in 0..3 {
            for c in 0..3 {
                gens.push(alg.coeff(&Weight::from_ints(&lam), a, c).unwrap());
            }
        }
    }
    for letters in [vec![0], vec![1, 0], vec![0, 1, 0]] {
        for (k, x) in gens.iter().enumerate().step_by(3) {
            let y = &gens[(k * 7 + 5) % gens.len()];
            let lhs = s.pi_word(&letters, &(x * y)).unwrap();
            let rhs = s.pi_word(&letters, x).unwrap().mul(&s.pi_word(&letters, y).unwrap()).unwrap();
            assert!(lhs.window_distance(&rhs).unwrap() < 1e-9);
            let st = s.pi_word(&letters, &alg.star(x).unwrap()).unwrap();
            let adj = s.pi_word(&letters, x).unwrap().adjoint();
            assert!(st.window_distance(&adj).unwrap() < 1e-9, "{letters:?} {k}");
        }
    }
}

#[test]
fn reduced_words_share_graded_spectra() {
    let s = space(TypeLetter::A, 2, 0.5, 6);
    let alg = s.algebra().clone();
    let w1 = Weight::from_ints(&[1, 0]);
    let w2 = Weight::from_ints(&[0, 1]);
    let gens = [
        alg.coeff(&w1, 0, 0).unwrap(),
        alg.coeff(&w1, 1, 0).unwrap(),
        alg.coeff(&w1, 2, 0).unwrap(),
        alg.coeff(&w2, 1, 0).unwrap(),
        alg.coeff(&w2, 2, 0).unwrap(),
    ];
    for a in &gens {
        let x = &alg.star(a).unwrap() * a;
        let sa = s.graded_spectra(&[0, 1, 0], &s.pi_word(&[0, 1, 0], &x).unwrap()).unwrap();
        let sb = s.graded_spectra(&[1, 0, 1], &s.pi_word(&[1, 0, 1], &x).unwrap()).unwrap();
        assert!(sa.off_grade < 1e-12 && sb.off_grade < 1e-12, "{} {}", sa.off_grade, sb.off_grade);
        let shared = sa.blocks.keys().filter(|b| sb.blocks.contains_key(*b)).count();
        assert!(shared >= 4, "only {shared} shared grades");
        for (b, ev) in &sa.blocks {
            let Some(other) = sb.blocks.get(b) else { continue };
            assert_eq!(ev.len(), other.len());
            for (x, y) in ev.iter().zip(other) {
                assert!((x - y).abs() < 1e-8, "grade {b:?}: {ev:?} vs {other:?}");
            }
        }
    }
}
