use qflag::coeffalg::FunctionAlgebra;
use qflag::flagalg::*;
use qflag::weyl::descent_to_dominant;
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::Arc;
use std::time::Instant;

fn rs(t: TypeLetter, n: usize) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(t, n).unwrap())
}

#[test]
fn b_lambda_and_invariance() {
    let r = rs(TypeLetter::A, 2);
    let alg = FunctionAlgebra::new(r.clone(), 0.5).unwrap();
    let ctx = FlagContext::new(r.clone(), &[1]).unwrap();
    let w1 = Weight::from_ints(&[1, 0]);
    let b = b_lambda_basis(&alg, &ctx, &w1).unwrap();
    assert_eq!(b.len(), 3);
    assert!(b_lambda_basis(&alg, &ctx, &Weight::from_ints(&[0, 1])).is_err());
    for x in &b {
        for i in 0..2 {
            assert!(alg.is_zero(&alg.left_act(qflag::uqmod::Generator::E(i), x)).unwrap());
        }
        assert!(alg.is_zero(&alg.left_act(qflag::uqmod::Generator::F(1), x)).unwrap());
        let k = alg.left_act(qflag::uqmod::Generator::K(0), x);
        assert!(alg.equals(&k, &x.scale_re(0.5)).unwrap());
    }
    let gens = a_s_generators(&alg, &ctx, None).unwrap();
    assert_eq!(gens.len(), 9);
    assert_eq!(zero_weight_generators(&alg, &ctx, None).unwrap().len(), 3);
    for g in &gens {
        assert!(is_invariant(&alg, &ctx, &g.element).unwrap());
    }
    assert!(is_invariant(&alg, &ctx, &qflag::coeffalg::AlgebraElement::one()).unwrap());

    let r1 = rs(TypeLetter::A, 1);
    let a1 = FunctionAlgebra::new(r1.clone(), 0.5).unwrap();
    let c1 = FlagContext::new(r1, &[]).unwrap();
    let t11 = a1.coeff(&Weight::from_ints(&[1]), 0, 0).unwrap();
    assert!(!is_invariant(&a1, &c1, &t11).unwrap());
    assert_eq!(b_lambda_basis(&a1, &c1, &Weight::from_ints(&[1])).unwrap().len(), 2);
}

#[test]
fn a_s_generators_invariant_across_types() {
    for (t, n, s) in [
        (TypeLetter::A, 1, vec![]),
        (TypeLetter::A, 2, vec![0]),
        (TypeLetter::A, 3, vec![0, 2]),
        (TypeLetter::B, 2, vec![1]),
    ] {
        let r = rs(t, n);
        let alg = FunctionAlgebra::new(r.clone(), 0.6).unwrap();
        let ctx = FlagContext::new(r, &s).unwrap();
        for g in a_s_generators(&alg, &ctx, None).unwrap().iter().step_by(2) {
            assert!(is_invariant(&alg, &ctx, &g.element).unwrap(), "{t}{n}");
        }
    }
}

#[test]
fn full_flag_zero_weight_span() {
    for (t, n) in [(TypeLetter::A, 2), (TypeLetter::B, 2)] {
        let r = rs(t, n);
        let alg = FunctionAlgebra::new(r.clone(), 0.5).unwrap();
        let ctx = FlagContext::new(r.clone(), &[]).unwrap();
        for lam in ctx.fundamental_weights() {
            let g = zero_weight_generators(&alg, &ctx, Some(&[lam.clone()])).unwrap();
            let refs: Vec<_> = g.iter().map(|x| &x.element).collect();
            let v = alg.evaluation_vectors(&refs).unwrap();
            let m = nalgebra::DMatrix::from_fn(v[0].len(), v.len(), |i, j| v[j][i]);
            let rank = m.svd(false, false).rank(1e-9);
            assert_eq!(rank as u64, r.weyl_dimension(&lam).unwrap(), "{t}{n} {lam}");
        }
    }
}

#[test]
fn gelfand_table() {
    let nodes = |t, n| -> Vec<usize> { gelfand_nodes(t, n).unwrap().iter().map(|c| c.node + 1).collect() };
    assert_eq!(nodes(TypeLetter::A, 3), vec![1, 2, 3]);
    assert_eq!(nodes(TypeLetter::B, 2), vec![1, 2]);
    assert_eq!(nodes(TypeLetter::C, 3), vec![1, 3]);
    assert_eq!(nodes(TypeLetter::D, 5), vec![1, 4, 5]);
    assert!(nodes(TypeLetter::G, 2).is_empty());
    assert_eq!(nodes(TypeLetter::E, 7), vec![7]);
}

#[test]
fn prv_and_sphericals() {
    let r = rs(TypeLetter::D, 5);
    let ctx = FlagContext::new(r.clone(), &[0, 1, 2, 3]).unwrap();
    let w = prv_witness(&ctx, &Weight::from_ints(&[0, 1, 0, 0, 0]), 4000).unwrap().unwrap();
    let varpi = ctx.node_weight().unwrap();
    let (_, dom) = descent_to_dominant(&r, &(&varpi - &w.act(&varpi)));
    assert_eq!(dom, Weight::from_ints(&[0, 1, 0, 0, 0]));
    // sigma_1 (negating eps_1 and eps_2) is another valid witness
    let mut e = r.to_epsilon(&varpi).unwrap();
    e[0] = -e[0];
    e[1] = -e[1];
    let (_, dom) = descent_to_dominant(&r, &(&varpi - &r.from_epsilon(&e).unwrap()));
    assert_eq!(dom, Weight::from_ints(&[0, 1, 0, 0, 0]));
    assert_eq!(prv_witness(&ctx, &Weight::zero(5), 4000).unwrap().unwrap().length(), 0);

    let t0 = Instant::now();
    let a2 = FlagContext::new(rs(TypeLetter::A, 2), &[1]).unwrap();
    assert_eq!(spherical_weights(&a2, 2, 5000).unwrap(), vec![Weight::from_ints(&[1, 1])]);
    let a1 = FlagContext::new(rs(TypeLetter::A, 1), &[]).unwrap();
    assert_eq!(spherical_weights(&a1, 2, 5000).unwrap(), vec![Weight::from_ints(&[2])]);
    let a3 = FlagContext::new(rs(TypeLetter::A, 3), &[0, 2]).unwrap();
    let mut got = spherical_weights(&a3, 2, 5000).unwrap();
    got.sort();
    let mut want = vec![Weight::from_ints(&[1, 0, 1]), Weight::from_ints(&[0, 2, 0])];
    want.sort();
    assert_eq!(got, want);
    eprintln!("sphericals {:?}", t0.elapsed());
}

#[test]
fn factorization_reports() {
    let ctx = FlagContext::new(rs(TypeLetter::A, 2), &[1]).unwrap();
    let rep = factorization_evidence(&ctx, 2, 5000).unwrap();
    assert!(rep.sphericals_occur && rep.multiplicity_free && rep.characters_match);
    assert_eq!(rep.components, vec![(Weight::from_ints(&[0, 0]), 1), (Weight::from_ints(&[1, 1]), 1)]);
    let c2 = FlagContext::new(rs(TypeLetter::C, 2), &[1]).unwrap();
    let rep = factorization_evidence(&c2, 2, 5000).unwrap();
    assert!(rep.sphericals_occur, "{rep:?}");
    assert!(rep.witnesses.iter().all(|(_, w)| w.is_some()));
}
