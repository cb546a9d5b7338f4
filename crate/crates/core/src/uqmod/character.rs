//! Weight multiplicities of irreducible modules by Freudenthal's formula.

use crate::error::{invalid, Result};
use crate::rootdata::{RootSystem, Weight, Q};
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

/// `dim V(lambda)_mu` for every weight `mu`, keyed by fundamental coordinates.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Vec<i64>, usize>> {
    if !lambda.is_integral() || !lambda.is_dominant() || lambda.rank() != rs.rank() {
        return invalid(format!("{} is not a dominant integral weight", lambda.pretty()));
    }
    let r = rs.rank();
    let a = rs.cartan();
    let lam = lambda.to_ints().expect("integral");
    let rho = rs.rho();
    let lr = lambda + rho;
    let top = rs.form_unchecked(&lr, &lr);
    let roots: Vec<(Vec<i64>, i64)> = rs
        .positive_root_weights()
        .iter()
        .zip(rs.positive_roots())
        .map(|(w, c)| (w.to_ints().expect("integral root"), c.iter().sum()))
        .collect();
    let mut mult: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut depth: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    mult.insert(lam.clone(), 1);
    depth.insert(lam.clone(), 0);
    let mut layer = vec![lam];
    let mut d = 0i64;
    while !layer.is_empty() {
        d += 1;
        let mut next: Vec<Vec<i64>> = Vec::new();
        for mu in &layer {
            for j in 0..r {
                let nu: Vec<i64> = (0..r).map(|k| mu[k] - a[k][j]).collect();
                if !depth.contains_key(&nu) && !next.contains(&nu) {
                    next.push(nu);
                }
            }
        }
        let mut kept = Vec::new();
        for nu in next {
            let nw = Weight::from_ints(&nu);
            let nr = &nw + rho;
            let denom = top - rs.form_unchecked(&nr, &nr);
            if denom.is_zero() {
                continue;
            }
            let mut acc = Q::zero();
            for (al, ht) in &roots {
                let mut k = 1i64;
                while d - k * ht >= 0 {
                    let x: Vec<i64> = nu.iter().zip(al).map(|(p, s)| p + k * s).collect();
                    if let Some(&m) = mult.get(&x) {
                        let xw = Weight::from_ints(&x);
                        acc += Q::from_integer(m as i64) * rs.form_unchecked(&xw, &Weight::from_ints(al));
                    }
                    k += 1;
                }
            }
            let m = Q::from_integer(2) * acc / denom;
            let m = m.to_integer().to_usize().unwrap_or(0);
            depth.insert(nu.clone(), d);
            if m > 0 {
                mult.insert(nu.clone(), m);
                kept.push(nu);
            }
        }
        layer = kept;
    }
    Ok(mult)
}

/// Highest weights of `V(lambda) (x) V(mu)` with multiplicities, by the
/// Brauer-Klimyk rule: each weight `kappa` of `V(mu)` contributes
/// `sign(w) m_mu(kappa)` at `w(lambda + kappa + rho) - rho` when that is dominant.
pub fn tensor_multiplicities(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, usize>> {
    if !lambda.is_integral() || !lambda.is_dominant() || lambda.rank() != rs.rank() {
        return invalid(format!("{} is not a dominant integral weight", lambda.pretty()));
    }
    let rho = rs.rho();
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (kappa, m) in weight_multiplicities(rs, mu)? {
        let shifted = &(lambda + &Weight::from_ints(&kappa)) + rho;
        let (letters, dom) = crate::weyl::descent_to_dominant(rs, &shifted);
        if !dom.is_regular_dominant() {
            continue;
        }
        let sign = if letters.len() % 2 == 0 { 1 } else { -1 };
        *acc.entry(&dom - rho).or_insert(0) += sign * m as i64;
    }
    let mut out = BTreeMap::new();
    for (w, c) in acc {
        if c < 0 {
            return Err(crate::Error::Internal(format!("negative multiplicity at {}", w.pretty())));
        }
        if c > 0 {
            out.insert(w, c as usize);
        }
    }
    Ok(out)
}
