//! Matrix coefficients of C_q[SU(3)]: commutation relations, unitarity
//! and the star operation.

use qflag::coeffalg::relations::Variant;
use qflag::coeffalg::FunctionAlgebra;
use qflag::{RootSystem, TypeLetter, Weight};
use std::sync::Arc;

fn main() -> qflag::Result<()> {
    let alg = FunctionAlgebra::new(Arc::new(RootSystem::new(TypeLetter::A, 2)?), 0.5)?;
    let (w1, w2) = (Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, 1]));

    for var in [Variant::N, Variant::NRev, Variant::O] {
        let mut worst = 0.0f64;
        let mut held = 0;
        for a in 0..3 {
            for b in 0..3 {
                let rep = alg.commutation_defect(&w1, &w2, a, b, var)?;
                worst = worst.max(rep.residual);
                held += rep.holds() as usize;
            }
        }
        println!("{var:?}: {held}/9 relations hold, worst residual {worst:.2e}");
    }

    let ok = (0..3).all(|a| (0..3).all(|c| alg.unitarity_check(&w1, a, c).unwrap_or(false)));
    println!("unitarity for V(w1): {ok}");

    let c = alg.coeff(&w1, 2, 0)?;
    let star = alg.star(&c)?;
    println!("C(2,0) has {} terms; its star has {} terms", c.len(), star.len());
    println!("star(star(C)) == C: {}", alg.equals(&alg.star(&star)?, &c)?);
    Ok(())
}
