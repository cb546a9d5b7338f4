//! Root data and parabolic quotients W/W_S for a few types.

use qflag::weyl::{minimal_coset_reps, parabolic_decompose, WeylWord};
use qflag::{RootSystem, TypeLetter};
use std::sync::Arc;

fn main() -> qflag::Result<()> {
    for (t, n, s) in [(TypeLetter::A, 3, vec![0, 2]), (TypeLetter::B, 3, vec![1, 2]), (TypeLetter::G, 2, vec![0])] {
        let rs = Arc::new(RootSystem::new(t, n)?);
        println!("{}: {} positive roots, rho = {}", rs.label(), rs.positive_roots().len(), rs.rho().pretty());
        let par = minimal_coset_reps(&rs, &s)?;
        let reps: Vec<String> = par.minimal_reps.iter().map(|w| w.to_string()).collect();
        println!("  |W_S| = {}, |W^S| = {}: {}", par.w_s_order, reps.len(), reps.join(" "));

        let w0 = WeylWord::longest(&rs);
        let (u, v) = parabolic_decompose(&w0, &s)?;
        println!("  w0 = {w0} = ({u}) ({v}), lengths {} = {} + {}", w0.length(), u.length(), v.length());
    }
    Ok(())
}
