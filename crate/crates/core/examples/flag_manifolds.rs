//! Flag manifold data: Gel'fand nodes, PRV witnesses and the factorization
//! evidence at a Gel'fand node.

use qflag::flagalg::{factorization_evidence, gelfand_nodes, prv_witness, FlagContext};
use qflag::weyl::DEFAULT_GROUP_CAP;
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::Arc;

fn main() -> qflag::Result<()> {
    for (t, n) in [(TypeLetter::A, 3), (TypeLetter::B, 3), (TypeLetter::C, 3), (TypeLetter::D, 4), (TypeLetter::G, 2)] {
        let nodes: Vec<String> = gelfand_nodes(t, n)?.iter().map(|c| format!("{} ({:?})", c.node + 1, c.family)).collect();
        println!("{t}{n}: Gel'fand nodes {}", if nodes.is_empty() { "none".into() } else { nodes.join(", ") });
    }

    let rs = Arc::new(RootSystem::new(TypeLetter::D, 5)?);
    let ctx = FlagContext::new(rs, &[0, 1, 2, 3])?;
    for mu in [[0, 1, 0, 0, 0], [0, 0, 0, 1, 1]] {
        let mu = Weight::from_ints(&mu);
        match prv_witness(&ctx, &mu, DEFAULT_GROUP_CAP)? {
            Some(w) => println!("D5 node 5: PRV witness for {} is {w}", mu.pretty()),
            None => println!("D5 node 5: no witness for {}", mu.pretty()),
        }
    }

    let rs = Arc::new(RootSystem::new(TypeLetter::C, 2)?);
    let ctx = FlagContext::new(rs, &[1])?;
    let rep = factorization_evidence(&ctx, 2, 5000)?;
    println!(
        "C2 node 1: sphericals {:?}, multiplicity free {}, all spherical {}",
        rep.fundamental_sphericals.iter().map(|w| w.pretty()).collect::<Vec<_>>(),
        rep.multiplicity_free,
        rep.all_components_spherical
    );
    Ok(())
}
