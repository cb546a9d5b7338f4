//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Each criterion runs its claim from the verification suite. Criteria 8, 9
//! and 13 are also cross-checked against the independent oracle crate.

use qflag::classify::{run_claim, SuiteConfig, Verdict, ANCHORS};
use qflag::flagalg::{factorization_evidence, FlagContext};
use qflag::uqmod::{build_irreducible_float, decompose_highest_weights, tensor};
use qflag::weyl::{descent_to_dominant, minimal_coset_reps};
use qflag::{RootSystem, TypeLetter, Weight};
use qflag_oracles::Datum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

const TIME_LIMITS: [(usize, f64); 2] = [(1, 1.0), (2, 60.0)];

fn letter_char(t: TypeLetter) -> char {
    format!("{t}").chars().next().unwrap()
}

fn oracle(t: TypeLetter, n: usize) -> Datum {
    Datum::of_type(letter_char(t), n)
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..(1usize << n) - 1).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// W^S as action matrices against the oracle's brute-force filter.
fn oracle_cosets() -> Result<String, String> {
    use TypeLetter::*;
    let mut cases = 0;
    for (t, n) in [(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3), (G, 2), (D, 4)] {
        let r = Arc::new(RootSystem::new(t, n).map_err(|e| e.to_string())?);
        let d = oracle(t, n);
        for s in subsets(n) {
            let ours: BTreeSet<(Vec<Vec<i64>>, usize)> = minimal_coset_reps(&r, &s)
                .map_err(|e| e.to_string())?
                .minimal_reps
                .iter()
                .map(|w| (w.action().clone(), w.length()))
                .collect();
            let theirs: BTreeSet<(Vec<Vec<i64>>, usize)> = d.min_coset_reps(&s).into_iter().collect();
            if ours != theirs {
                return Err(format!("{}{n} S={s:?}: {} vs {} representatives", letter_char(t), ours.len(), theirs.len()));
            }
            cases += 1;
        }
    }
    Ok(format!("oracle_subsets={cases}"))
}

/// Every PRV witness found for the small cases is a component of
/// V(varpi)^* (x) V(varpi) according to the oracle.
fn oracle_prv() -> Result<String, String> {
    let mut confirmed = 0;
    for (t, n, node) in [(TypeLetter::A, 2, 0usize), (TypeLetter::A, 3, 1), (TypeLetter::C, 2, 0)] {
        let r = Arc::new(RootSystem::new(t, n).map_err(|e| e.to_string())?);
        let s: Vec<usize> = (0..n).filter(|&i| i != node).collect();
        let ctx = FlagContext::new(r.clone(), &s).map_err(|e| e.to_string())?;
        let rep = factorization_evidence(&ctx, 2, 5000).map_err(|e| e.to_string())?;
        let varpi = ctx.node_weight().map_err(|e| e.to_string())?;
        let dual = descent_to_dominant(&r, &varpi.scale(-1)).1;
        let bk = oracle(t, n).tensor_decompose(&dual.to_ints().unwrap(), &varpi.to_ints().unwrap());
        let mut found = 0;
        for (mu, wit) in &rep.witnesses {
            if wit.is_none() {
                continue;
            }
            found += 1;
            if bk.get(&mu.to_ints().unwrap()).copied().unwrap_or(0) < 1 {
                return Err(format!("{}{n} node {}: {} has multiplicity 0", letter_char(t), node + 1, mu.pretty()));
            }
        }
        if found == 0 {
            return Err(format!("{}{n}: no witnesses", letter_char(t)));
        }
        confirmed += found;
    }
    Ok(format!("oracle_confirmed={confirmed}"))
}

/// Fresh random pairs, decomposed by highest vectors and by the oracle.
fn oracle_tensors(seed: u64, q: f64) -> Result<String, String> {
    use TypeLetter::*;
    let types = [(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3), (G, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < 20 {
        let (t, n) = types[rng.gen_range(0..types.len())];
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let r = Arc::new(RootSystem::new(t, n).map_err(|e| e.to_string())?);
        let (wa, wb) = (Weight::from_ints(&a), Weight::from_ints(&b));
        let dim = r.weyl_dimension(&wa).unwrap() * r.weyl_dimension(&wb).unwrap();
        if dim > 300 {
            continue;
        }
        let ma = build_irreducible_float(&r, &wa, q, 2000).map_err(|e| e.to_string())?;
        let mb = build_irreducible_float(&r, &wb, q, 2000).map_err(|e| e.to_string())?;
        let prod = tensor(&ma, &mb).map_err(|e| e.to_string())?;
        let got: BTreeMap<Vec<i64>, u64> = decompose_highest_weights(&prod)
            .into_iter()
            .map(|(w, m)| (w.to_ints().unwrap(), m as u64))
            .collect();
        let want = oracle(t, n).tensor_decompose(&a, &b);
        if got != want {
            return Err(format!("{}{n} {a:?} x {b:?}: {got:?} vs {want:?}", letter_char(t)));
        }
        done += 1;
    }
    Ok(format!("oracle_pairs={done}"))
}

fn summarize(k: usize, verdicts: &[Verdict], secs: f64, extra: Option<Result<String, String>>) -> bool {
    let total = verdicts.len();
    let passed = verdicts.iter().filter(|v| v.passed()).count();
    let worst = verdicts.iter().map(|v| v.max_residual()).fold(0.0, f64::max);
    let mut ok = total > 0 && passed == total;
    let mut detail = format!("verdicts={passed}/{total} max_residual={worst:.2e} secs={secs:.2}");
    if let Some((_, limit)) = TIME_LIMITS.iter().find(|(c, _)| *c == k) {
        detail.push_str(&format!(" limit={limit}s"));
        ok &= secs < *limit;
    }
    if k == 5 {
        let dev = verdicts
            .iter()
            .filter_map(|v| v.evidence.iter().find(|(n, _)| n == "uniform_q_deviation").map(|(_, x)| format!("{x:.4}")))
            .collect::<Vec<_>>()
            .join(",");
        detail.push_str(&format!(" uniform_q_deviation={dev}"));
    }
    match extra {
        Some(Ok(s)) => detail.push_str(&format!(" {s}")),
        Some(Err(e)) => {
            ok = false;
            detail.push_str(&format!(" oracle_failure=\"{e}\""));
        }
        None => {}
    }
    for v in verdicts.iter().filter(|v| !v.passed()).take(3) {
        detail.push_str(&format!("\n    {v}"));
    }
    println!("criterion {k:2} {:<15} {} {detail}", ANCHORS[k - 1], if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for k in 1..=13 {
        let t0 = Instant::now();
        let verdicts = run_claim(k, &cfg);
        let secs = t0.elapsed().as_secs_f64();
        let extra = match k {
            8 => Some(oracle_cosets()),
            9 => Some(oracle_prv()),
            13 => Some(oracle_tensors(cfg.seed + 1, cfg.q)),
            _ => None,
        };
        if !summarize(k, &verdicts, secs, extra) {
            failed.push(k);
        }
    }
    if failed.is_empty() {
        println!("acceptance: 13/13 criteria pass");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
