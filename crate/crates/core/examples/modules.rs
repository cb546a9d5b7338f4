//! Irreducible U_q(g)-modules: construction, relations, tensor products
//! and branching to a Levi factor.

use qflag::uqmod::{
    branch_to_levi, build_irreducible_float, decompose_highest_weights, tensor, tensor_multiplicities,
};
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::Arc;

fn main() -> qflag::Result<()> {
    let rs = Arc::new(RootSystem::new(TypeLetter::B, 2)?);
    let q = 0.5;
    let lam = Weight::from_ints(&[1, 1]);
    let m = build_irreducible_float(&rs, &lam, q, 2000)?;
    println!("V({}) for {}: dim {} (Weyl formula {})", lam.pretty(), rs.label(), m.dim(), rs.weyl_dimension(&lam)?);
    for (w, idx) in m.weight_spaces() {
        print!(" {}:{}", w.pretty(), idx.len());
    }
    println!();
    println!("worst relation residual {:.2e}", m.check_relations().max());

    let v1 = build_irreducible_float(&rs, &Weight::from_ints(&[1, 0]), q, 2000)?;
    let prod = tensor(&m, &v1)?;
    println!("V(w1+w2) x V(w1), dim {}:", prod.dim());
    for (w, mult) in decompose_highest_weights(&prod) {
        println!("  {} x{mult}", w.pretty());
    }
    let bk = tensor_multiplicities(&rs, &lam, &Weight::from_ints(&[1, 0]))?;
    println!("Brauer-Klimyk agrees: {}", bk.into_iter().collect::<Vec<_>>() == decompose_highest_weights(&prod));

    println!("restriction to the Levi factor of node 1:");
    for e in branch_to_levi(&m, &[0])? {
        println!("  {} x{} (dim {})", e.weight.pretty(), e.multiplicity, e.levi_dim);
    }
    Ok(())
}
