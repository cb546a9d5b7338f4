//! Runs the verification matrix and prints one record per verdict.

use qflag::classify::{run_claim, SuiteConfig, ANCHORS};
use std::time::Instant;

fn main() {
    let cfg = SuiteConfig::default();
    for k in 1..=ANCHORS.len() {
        let t0 = Instant::now();
        let vs = run_claim(k, &cfg);
        let pass = vs.iter().filter(|v| v.passed()).count();
        for v in &vs {
            if !v.passed() {
                println!("{v}");
            }
        }
        println!("# {:>2} {:<16} {pass}/{} passed in {:.2?}", k, ANCHORS[k - 1], vs.len(), t0.elapsed());
    }
}
