//! The Fock-space representation of C_q[SU(2)] and the operators
//! L_{sigma lambda; lambda} for a rank-two example.

use qflag::coeffalg::FunctionAlgebra;
use qflag::fockrep::{pi_su2, FockSpace, TGen};
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::Arc;

fn main() -> qflag::Result<()> {
    let q = 0.5;
    let t21 = pi_su2(&[TGen::T21], 6, q)?;
    let diag: Vec<String> = t21.diagonal().iter().map(|z| format!("{:.4}", z.re)).collect();
    println!("pi(t21) diagonal: {}", diag.join(" "));

    let rs = Arc::new(RootSystem::new(TypeLetter::B, 2)?);
    let fs = FockSpace::new(Arc::new(FunctionAlgebra::new(rs, q)?), 5)?;
    let lam = Weight::from_ints(&[1, 1]);
    let letters = [1, 0];
    let l = fs.l_operator(&letters, &lam)?;
    let pred = fs.predicted_l_diagonal(&letters, &lam, false)?;
    let worst = l.window_indices().iter().map(|&i| (l.entry(i, i).re - pred[i]).abs()).fold(0.0, f64::max);
    println!("L for s2s1 on B2, lambda = {}: diagonal {}, product formula residual {worst:.2e}", lam.pretty(), l.is_diagonal(1e-12));
    let mut spec: Vec<f64> = l.diagonal().iter().map(|z| z.re).collect();
    spec.sort_by(|a, b| b.partial_cmp(a).unwrap());
    spec.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    println!("distinct eigenvalues: {:?}", &spec[..spec.len().min(8)]);
    let (dim, _) = fs.h1_eigenspace(&letters, &lam)?;
    println!("eigenvalue-1 eigenspace dimension: {dim}");
    Ok(())
}
