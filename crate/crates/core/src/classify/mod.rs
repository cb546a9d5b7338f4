//! Executable checks of the structural results on `pi_sigma`: kernel
//! patterns, the eigenvalue-1 eigenspace of `L`, inequivalence, restriction
//! factorization, GNS moments and the `q`-exponent ladder of `L`.
//!
//! Every check returns a [`Verdict`]; precondition violations are errors.

mod suite;

pub use suite::{run_claim, run_suite, SuiteConfig, ANCHORS};

use crate::coeffalg::{AlgebraElement, C64};
use crate::error::{invalid, Error, Result};
use crate::flagalg::{a_s_generators, FlagContext};
use crate::fockrep::{FockSpace, TorusPoint, TruncatedOperator};
use crate::rootdata::Weight;
use crate::uqmod::Generator;
use crate::weyl::{is_minimal_rep_by_roots, parabolic_decompose, WeylWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;

/// Exact-diagonal claims.
pub const DIAG_TOL: f64 = 1e-12;
/// Claims on assembled operators.
pub const OP_TOL: f64 = 1e-9;
/// Vanishing of assembled operators.
pub const ZERO_TOL: f64 = 1e-10;
/// Operators counted as nonzero must exceed this.
pub const NONZERO_FLOOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        })
    }
}

/// Outcome of one check. `residuals` must all be at most `tolerance` for a
/// pass; `evidence` holds further numbers that are reported but not bounded.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub anchor: String,
    pub params: Vec<(String, String)>,
    pub status: Status,
    pub residuals: Vec<(String, f64)>,
    pub evidence: Vec<(String, f64)>,
    pub tolerance: f64,
    pub window: Option<usize>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(claim: &str, anchor: &str, tolerance: f64) -> Self {
        Verdict {
            claim: claim.into(),
            anchor: anchor.into(),
            params: Vec::new(),
            status: Status::Fail,
            residuals: Vec::new(),
            evidence: Vec::new(),
            tolerance,
            window: None,
            note: None,
        }
    }

    pub fn param(mut self, k: &str, v: impl fmt::Display) -> Self {
        self.params.push((k.into(), v.to_string()));
        self
    }

    pub fn residual(&mut self, k: &str, v: f64) {
        self.residuals.push((k.into(), v));
    }

    pub fn evidence(&mut self, k: &str, v: f64) {
        self.evidence.push((k.into(), v));
    }

    pub fn with_window(mut self, w: usize) -> Self {
        self.window = Some(w);
        self
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.note = Some(s.into());
    }

    /// Settles the status: pass iff `ok` and every residual is within tolerance.
    pub fn finish(mut self, ok: bool) -> Self {
        let within = self.residuals.iter().all(|(_, r)| r.is_finite() && *r <= self.tolerance);
        self.status = if ok && within { Status::Pass } else { Status::Fail };
        self
    }

    /// Verdict for a check that could not be decided (caps, frame limits).
    pub fn indeterminate(claim: &str, anchor: &str, err: &Error) -> Self {
        let mut v = Verdict::new(claim, anchor, 0.0);
        v.status = Status::Indeterminate;
        v.note = Some(err.to_string());
        v
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }
}

impl fmt::Display for Verdict {
    /// One `key=value` record; values never contain spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "claim={} anchor={} status={}", self.claim, self.anchor, self.status)?;
        for (k, v) in &self.params {
            write!(f, " {k}={}", v.replace(' ', ""))?;
        }
        write!(f, " tol={:e} max_residual={:.3e}", self.tolerance, self.max_residual())?;
        if let Some(w) = self.window {
            write!(f, " window={w}")?;
        }
        for (k, v) in self.residuals.iter().chain(&self.evidence) {
            write!(f, " {k}={v:.3e}")?;
        }
        if let Some(n) = &self.note {
            write!(f, " note={:?}", n)?;
        }
        Ok(())
    }
}

fn word_label(w: &WeylWord) -> String {
    w.to_string().replace(' ', "")
}

fn check_rank(fs: &FockSpace, lambda: &Weight) -> Result<()> {
    let rs = fs.algebra().root_system();
    if lambda.rank() != rs.rank() || !lambda.is_integral() || !lambda.is_dominant() {
        return invalid(format!("{} is not a dominant integral weight of {}", lambda.pretty(), rs.label()));
    }
    Ok(())
}

fn check_context(fs: &FockSpace, ctx: &FlagContext) -> Result<()> {
    if ctx.root_system().as_ref() != fs.algebra().root_system().as_ref() {
        return invalid("flag context and algebra use different root systems");
    }
    Ok(())
}

fn require_minimal(ctx: &FlagContext, sigma: &WeylWord) -> Result<()> {
    if !is_minimal_rep_by_roots(sigma, ctx.s()) {
        return invalid(format!("{} is not a minimal coset representative", word_label(sigma)));
    }
    Ok(())
}

/// Orthonormal basis of `U_q(b_+) v` inside the module `id`, `v` a basis index.
fn raising_orbit(fs: &FockSpace, id: usize, start: usize) -> Vec<Vec<f64>> {
    let m = fs.algebra().module(id);
    let d = m.dim();
    let r = fs.algebra().root_system().rank();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut queue = Vec::new();
    let mut e = vec![0.0; d];
    e[start] = 1.0;
    queue.push(e);
    while let Some(mut v) = queue.pop() {
        let n0 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n0 == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for b in &basis {
                let c: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n <= 1e-10 * n0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= n);
        for i in 0..r {
            queue.push(m.apply(Generator::E(i), &v));
        }
        basis.push(v);
    }
    basis
}

/// Kernel pattern of `pi_sigma` on the column `C^lambda_{v; v_lambda}`: the
/// operator vanishes exactly for basis vectors orthogonal to
/// `U_q(b_+) v_{sigma lambda}`, and not at `v = v_{sigma lambda}`.
pub fn check_vanishing(fs: &FockSpace, sigma: &WeylWord, lambda: &Weight) -> Result<Verdict> {
    check_rank(fs, lambda)?;
    let alg = fs.algebra();
    let id = alg.irreducible(lambda)?;
    let top = alg.highest_index(id)?;
    let sv = alg.vectors_of_weight(id, &sigma.act(lambda));
    let &[s] = sv.as_slice() else {
        return Err(Error::Internal("extreme weight space is not one-dimensional".into()));
    };
    let orbit = raising_orbit(fs, id, s);
    let d = alg.module(id).dim();
    let mut zero_max = 0.0f64;
    let mut nonzero_min = f64::INFINITY;
    let mut mismatches = 0usize;
    let mut outside = 0usize;
    for a in 0..d {
        let overlap = orbit.iter().map(|b| b[a] * b[a]).sum::<f64>().sqrt();
        let op = fs.pi_sigma(sigma, &alg.coeff_in(id, a, top)?)?;
        let norm = op.window_norm();
        if overlap < 1e-9 {
            outside += 1;
            zero_max = zero_max.max(norm);
        } else {
            nonzero_min = nonzero_min.min(norm);
            if norm < NONZERO_FLOOR {
                mismatches += 1;
            }
        }
    }
    let ext = fs.pi_sigma(sigma, &alg.coeff_in(id, s, top)?)?;
    let ext_norm = ext.window_norm();
    let mut v = Verdict::new("check_vanishing", "kernel-pattern", ZERO_TOL)
        .param("type", alg.root_system().label())
        .param("sigma", word_label(sigma))
        .param("lambda", lambda.pretty())
        .param("orbit_dim", orbit.len())
        .param("outside", outside)
        .with_window(ext.window());
    v.residual("zero_norm", zero_max);
    v.evidence("nonzero_min", if nonzero_min.is_finite() { nonzero_min } else { 0.0 });
    v.evidence("extreme_norm", ext_norm);
    Ok(v.finish(mismatches == 0 && ext_norm >= NONZERO_FLOOR))
}

/// `H_1(lambda)` of `L_{sigma lambda; lambda}` is spanned by `e_0^{(x) l(sigma)}`.
pub fn check_h1(fs: &FockSpace, ctx: &FlagContext, sigma: &WeylWord, lambda: &Weight) -> Result<Verdict> {
    check_context(fs, ctx)?;
    require_minimal(ctx, sigma)?;
    if !ctx.in_p_plus_plus(lambda) {
        return invalid(format!("{} is not regular on the complement of S", lambda.pretty()));
    }
    let (dim, idx) = fs.h1_eigenspace(sigma.letters(), lambda)?;
    let v = Verdict::new("check_h1", "eigenvalue-one", DIAG_TOL)
        .param("type", ctx.root_system().label())
        .param("S", crate::cli::node_list(ctx.s()))
        .param("sigma", word_label(sigma))
        .param("lambda", lambda.pretty())
        .param("h1_dim", dim)
        .with_window(fs.levels());
    Ok(v.finish(dim == 1 && idx == [0]))
}

/// `pi_sigma` and `pi_sigma'` are inequivalent on `A_S`: for some
/// `lambda` in `P_++(S^c)` with `sigma lambda` not above `sigma' lambda`,
/// `pi_sigma'` kills `(C_{sigma lambda; lambda})^* C_{sigma lambda; lambda}`
/// while its image under `pi_sigma` has the eigenvalue 1.
pub fn check_inequivalence(fs: &FockSpace, ctx: &FlagContext, sigma: &WeylWord, sigma2: &WeylWord) -> Result<Verdict> {
    check_context(fs, ctx)?;
    require_minimal(ctx, sigma)?;
    require_minimal(ctx, sigma2)?;
    if sigma == sigma2 {
        return invalid("the two coset representatives coincide");
    }
    let rs = ctx.root_system();
    let lambda = crate::weyl::rho_complement(rs, ctx.s());
    let (a, b) = (sigma.act(&lambda), sigma2.act(&lambda));
    if a == b {
        return Err(Error::Internal("distinct minimal representatives fix the same weight".into()));
    }
    // orient so that x lambda is not above y lambda
    let (x, y) = if rs.dominance_leq(&b, &a)? { (sigma2, sigma) } else { (sigma, sigma2) };
    let c = fs.extreme_coefficient(x.letters(), &lambda)?;
    let cc = &fs.algebra().star(&c)? * &c;
    let killed = fs.pi_sigma(y, &cc)?;
    let l = fs.pi_sigma(x, &cc)?;
    let mut v = Verdict::new("check_inequivalence", "inequivalence", OP_TOL)
        .param("type", rs.label())
        .param("S", crate::cli::node_list(ctx.s()))
        .param("sigma", word_label(sigma))
        .param("sigma_prime", word_label(sigma2))
        .param("lambda", lambda.pretty())
        .param("witness", word_label(x))
        .with_window(fs.levels());
    v.residual("killed_norm", killed.window_norm());
    v.residual("unit_eigenvalue_defect", (l.entry(0, 0) - C64::new(1.0, 0.0)).norm());
    Ok(v.finish(true))
}

/// `(pi_sigma (x) tau_t)(a) = pi_u(a) (x) id` on the generators of `A_S`
/// (fundamental weights of `S^c`), `sigma = u v` with `u` in `W^S`.
pub fn check_restriction_factorization(
    fs: &FockSpace,
    ctx: &FlagContext,
    sigma: &WeylWord,
    t: &TorusPoint,
) -> Result<Verdict> {
    check_context(fs, ctx)?;
    let (u, w) = parabolic_decompose(sigma, ctx.s())?;
    let letters: Vec<usize> = u.letters().iter().chain(w.letters()).copied().collect();
    let gens = a_s_generators(fs.algebra(), ctx, None)?;
    let id = TruncatedOperator::identity(w.length(), fs.levels())?;
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for g in &gens {
        let lhs = fs.pi_word_tau(&letters, &g.element, t)?;
        let rhs = fs.pi_word(u.letters(), &g.element)?.kron(&id)?;
        worst = worst.max(lhs.window_distance(&rhs)?);
        scale = scale.max(rhs.window_norm());
    }
    let mut v = Verdict::new("check_restriction_factorization", "restriction", OP_TOL)
        .param("type", ctx.root_system().label())
        .param("S", crate::cli::node_list(ctx.s()))
        .param("sigma", word_label(sigma))
        .param("u", word_label(&u))
        .param("v", word_label(&w))
        .param("generators", gens.len())
        .with_window(fs.levels());
    v.residual("residual", worst);
    v.evidence("max_norm", scale);
    Ok(v.finish(!gens.is_empty()))
}

/// `<pi_sigma((C_a)^* C_b) e_0, e_0> = delta_{a,s} delta_{b,s}` for all basis
/// labels `a, b` of `V(lambda)`, with `C_a = C^lambda_{a; v_lambda}` and `s`
/// the extreme vector of weight `sigma lambda`.
pub fn check_gns_pattern(fs: &FockSpace, ctx: &FlagContext, sigma: &WeylWord, lambda: &Weight) -> Result<Verdict> {
    check_context(fs, ctx)?;
    require_minimal(ctx, sigma)?;
    if !ctx.in_p_plus(lambda) {
        return invalid(format!("{} is not a dominant weight supported off S", lambda.pretty()));
    }
    let alg = fs.algebra();
    let id = alg.irreducible(lambda)?;
    let top = alg.highest_index(id)?;
    let sv = alg.vectors_of_weight(id, &sigma.act(lambda));
    let &[s] = sv.as_slice() else {
        return Err(Error::Internal("extreme weight space is not one-dimensional".into()));
    };
    let d = alg.module(id).dim();
    let col: Vec<AlgebraElement> = (0..d).map(|a| alg.coeff_in(id, a, top)).collect::<Result<_>>()?;
    let stars: Vec<AlgebraElement> = col.iter().map(|c| alg.star(c)).collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for (a, sa) in stars.iter().enumerate() {
        for (b, cb) in col.iter().enumerate() {
            let op = fs.pi_sigma(sigma, &(sa * cb))?;
            let want = if a == s && b == s { 1.0 } else { 0.0 };
            worst = worst.max((op.entry(0, 0) - C64::new(want, 0.0)).norm());
        }
    }
    let mut v = Verdict::new("check_gns_pattern", "gns-moments", OP_TOL)
        .param("type", ctx.root_system().label())
        .param("S", crate::cli::node_list(ctx.s()))
        .param("sigma", word_label(sigma))
        .param("lambda", lambda.pretty())
        .param("pairs", d * d)
        .with_window(fs.levels());
    v.residual("moment_defect", worst);
    Ok(v.finish(true))
}

/// `L pi(a) = q^{2(sigma lambda, mu) - 2(lambda, nu)} pi(a) L` for products
/// `a` of one or two matrix coefficients of fundamental modules, where `mu`
/// and `nu` are the total bra and ket weights of `a`. Samples are drawn
/// with a seeded generator.
pub fn check_ladder(fs: &FockSpace, sigma: &WeylWord, lambda: &Weight, samples: usize, seed: u64) -> Result<Verdict> {
    check_rank(fs, lambda)?;
    let alg = fs.algebra();
    let rs = alg.root_system();
    let r = rs.rank();
    let l = fs.l_operator(sigma.letters(), lambda)?;
    let sl = sigma.act(lambda);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let factors = rng.gen_range(1..=2);
        let mut a = AlgebraElement::one();
        let mut mu = Weight::zero(r);
        let mut nu = Weight::zero(r);
        for _ in 0..factors {
            let fw = Weight::fundamental(r, rng.gen_range(0..r));
            let id = alg.irreducible(&fw)?;
            let d = alg.module(id).dim();
            let (b, k) = (rng.gen_range(0..d), rng.gen_range(0..d));
            a = &a * &alg.coeff_in(id, b, k)?;
            mu = &mu + alg.module(id).weight(b);
            nu = &nu + alg.module(id).weight(k);
        }
        let e = 2.0 * (rs.inner_f64(&sl, &mu) - rs.inner_f64(lambda, &nu));
        let p = fs.pi_sigma(sigma, &a)?;
        let lhs = l.mul(&p)?;
        let rhs = p.mul(&l)?.scale(C64::new(alg.q().powf(e), 0.0));
        let scale = p.window_norm().max(1.0);
        worst = worst.max(lhs.window_distance(&rhs)? / scale);
    }
    let mut v = Verdict::new("check_ladder", "l-ladder", OP_TOL)
        .param("type", rs.label())
        .param("sigma", word_label(sigma))
        .param("lambda", lambda.pretty())
        .param("samples", samples)
        .param("seed", seed)
        .with_window(l.window());
    v.residual("relative_residual", worst);
    Ok(v.finish(true))
}
