//! The classification checks on A2 with S = {1}: vanishing pattern,
//! eigenvalue-1 eigenspaces, inequivalence and the ladder relation.

use qflag::classify::{check_h1, check_inequivalence, check_ladder, check_vanishing};
use qflag::coeffalg::FunctionAlgebra;
use qflag::flagalg::FlagContext;
use qflag::fockrep::FockSpace;
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::Arc;

fn main() -> qflag::Result<()> {
    let rs = Arc::new(RootSystem::new(TypeLetter::A, 2)?);
    let fs = FockSpace::new(Arc::new(FunctionAlgebra::new(rs.clone(), 0.5)?), 6)?;
    let ctx = FlagContext::new(rs, &[0])?;
    let lam = Weight::from_ints(&[0, 1]);
    let reps = ctx.minimal_reps().to_vec();
    for sigma in &reps {
        println!("{}", check_vanishing(&fs, sigma, &lam)?);
        println!("{}", check_h1(&fs, &ctx, sigma, &lam)?);
        println!("{}", check_ladder(&fs, sigma, &lam, 4, 1)?);
    }
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            println!("{}", check_inequivalence(&fs, &ctx, a, b)?);
        }
    }
    Ok(())
}
