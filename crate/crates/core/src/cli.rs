//! Command-line front end. Every command prints `key=value` records, one
//! per line, in a fixed order.
//!
//! Exit codes: 0 all verdicts pass, 1 a verdict fails, 2 a verdict is
//! indeterminate or a cap was hit, 3 the configuration is invalid.

use crate::classify::{self, Status, SuiteConfig, Verdict, ANCHORS};
use crate::coeffalg::relations::Variant;
use crate::coeffalg::FunctionAlgebra;
use crate::error::{invalid, Error, Result};
use crate::flagalg::{factorization_evidence, gelfand_nodes, prv_witness, FlagContext};
use crate::fockrep::{FockSpace, TorusPoint, DEFAULT_TRUNCATION};
use crate::rootdata::{RootSystem, TypeLetter, Weight};
use crate::scalar::Backend;
use crate::uqmod::{
    build_irreducible, decompose_highest_weights, tensor, tensor_multiplicities, DEFAULT_DIM_CAP,
};
use crate::uqmod::cache::ModuleCache;
use crate::weyl::{enumerate_group, minimal_coset_reps, DEFAULT_GROUP_CAP};
use crate::WeylWord;
use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

/// `{1,3}` style display of 0-based nodes.
pub fn node_list(s: &[usize]) -> String {
    let v: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

#[derive(Parser, Debug)]
#[command(name = "qflag", version, about = "Quantized flag manifolds: constructions and verification suites")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Cartan type letter A..G
    #[arg(long = "type", global = true, default_value = "A")]
    pub type_letter: String,
    #[arg(long, global = true, default_value_t = 2)]
    pub rank: usize,
    /// Nodes of S, 1-based and comma separated
    #[arg(long = "S", global = true, default_value = "")]
    pub s: String,
    /// Deformation parameter in (0,1), e.g. 1/2 or 0.5
    #[arg(long, global = true, default_value = "1/2")]
    pub q: String,
    #[arg(long, global = true, default_value = "float")]
    pub backend: String,
    /// Fock-space levels per tensor factor
    #[arg(long = "N", global = true, default_value_t = DEFAULT_TRUNCATION)]
    pub n: usize,
    /// Extra tolerance every residual must also meet
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Cartan data and positive roots
    Roots,
    /// Weyl group order and the minimal coset representatives W^S
    Weyl,
    /// Weights of V(lambda)
    Module {
        #[arg(long)]
        lambda: String,
    },
    /// Highest weights of V(lambda) (x) V(mu)
    Tensor {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Commutation relations between highest-weight columns
    VerifyCommutation {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        /// N, N_rev or O; all three when omitted
        #[arg(long)]
        variant: Option<String>,
    },
    /// Unitarity relation for every label pair of V(lambda)
    VerifyUnitarity {
        #[arg(long)]
        lambda: String,
    },
    /// Spectrum of L_{sigma lambda; lambda}
    Spectrum {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        lambda: String,
    },
    /// Kernel pattern of pi_sigma on the highest-weight column
    VerifyPart1 {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        lambda: String,
    },
    /// Eigenvalue-1 eigenspace of L; all of W^S x P_++ window when omitted
    VerifyH1 {
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Inequivalence of pi_sigma on A_S; all pairs of W^S when omitted
    VerifyInequivalence {
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        sigma2: Option<String>,
    },
    /// (pi_sigma (x) tau_t)(a) = pi_u(a) (x) id on A_S; all of W when omitted
    VerifyRestriction {
        #[arg(long)]
        sigma: Option<String>,
        /// torus point exp(2 pi i k / n): comma separated k, then /n
        #[arg(long, default_value = "")]
        torus: String,
    },
    /// Gel'fand nodes of the type
    Gelfand,
    /// PRV witness w with [varpi - w varpi] = mu, varpi the node outside S
    Prv {
        #[arg(long)]
        mu: String,
    },
    /// Evidence for the factorization at the node outside S
    Factorize {
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Every claim over the declared matrix of contexts
    Suite {
        /// Restrict to these anchors (comma separated)
        #[arg(long, default_value = "")]
        only: String,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub rs: Arc<RootSystem>,
    pub s: Vec<usize>,
    pub q: f64,
    pub backend: Backend,
    pub n: usize,
    pub tol: Option<f64>,
    pub output: Option<PathBuf>,
}

fn parse_q(s: &str) -> Result<f64> {
    let q = if let Ok(r) = s.trim().parse::<Ratio<i64>>() {
        r.to_f64().unwrap_or(f64::NAN)
    } else {
        s.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("cannot parse q = {s:?}")))?
    };
    if !(q > 0.0 && q < 1.0) {
        return invalid(format!("q = {s} is not in (0,1)"));
    }
    Ok(q)
}

/// 1-based comma list to 0-based nodes.
fn parse_nodes(s: &str, rank: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for p in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = p.parse().map_err(|_| Error::InvalidInput(format!("bad node {p:?}")))?;
        if i == 0 || i > rank {
            return invalid(format!("node {i} outside 1..={rank}"));
        }
        out.push(i - 1);
    }
    Ok(out)
}

/// `e`, `s1s2` or `1,2` (1-based letters).
pub fn parse_letters(s: &str, rank: usize) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    if t.starts_with('s') {
        let nodes: Vec<&str> = t.split('s').filter(|p| !p.is_empty()).collect();
        return parse_nodes(&nodes.join(","), rank);
    }
    parse_nodes(t, rank)
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> Result<Self> {
        let letter: TypeLetter = a.type_letter.parse()?;
        let rs = Arc::new(RootSystem::new(letter, a.rank)?);
        let s = parse_nodes(&a.s, a.rank)?;
        let q = parse_q(&a.q)?;
        let backend: Backend = a.backend.parse()?;
        if a.n < 2 {
            return invalid("--N must be at least 2");
        }
        if let Some(t) = a.tol {
            if !(t > 0.0) {
                return invalid("--tol must be positive");
            }
        }
        Ok(RunConfig { rs, s, q, backend, n: a.n, tol: a.tol, output: a.output.clone() })
    }

    fn weight(&self, s: &str) -> Result<Weight> {
        let w = Weight::parse(s, self.rs.rank())?;
        if !w.is_integral() || !w.is_dominant() {
            return invalid(format!("{s} is not a dominant integral weight"));
        }
        Ok(w)
    }

    fn word(&self, s: &str) -> Result<WeylWord> {
        WeylWord::from_letters(&self.rs, &parse_letters(s, self.rs.rank())?)
    }

    fn algebra(&self) -> Result<Arc<FunctionAlgebra>> {
        Ok(Arc::new(FunctionAlgebra::new(self.rs.clone(), self.q)?))
    }

    fn fock(&self) -> Result<FockSpace> {
        FockSpace::new(self.algebra()?, self.n)
    }

    fn context(&self) -> Result<FlagContext> {
        FlagContext::new(self.rs.clone(), &self.s)
    }

    fn module(&self, lambda: &Weight) -> Result<crate::uqmod::FloatModule> {
        match (ModuleCache::from_env(), self.backend) {
            (Some(c), Backend::Float) => c.irreducible_float(&self.rs, lambda, self.q, DEFAULT_DIM_CAP),
            (Some(c), Backend::Exact) => Ok(c.irreducible_exact(&self.rs, lambda, self.q, DEFAULT_DIM_CAP)?.to_float()),
            (None, b) => build_irreducible(&self.rs, lambda, self.q, b, DEFAULT_DIM_CAP),
        }
    }
}

/// Report lines plus the verdicts that decide the exit status.
#[derive(Default)]
struct Report {
    lines: Vec<String>,
    verdicts: Vec<Verdict>,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn verdict(&mut self, mut v: Verdict, tol: Option<f64>) {
        if let Some(t) = tol {
            v.tolerance = t;
            if v.status != Status::Indeterminate {
                let within = v.residuals.iter().all(|(_, r)| *r <= t);
                if v.status == Status::Pass && !within {
                    v.status = Status::Fail;
                }
            }
        }
        self.lines.push(v.to_string());
        self.verdicts.push(v);
    }

    fn status(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.status == Status::Fail) {
            1
        } else if self.verdicts.iter().any(|v| v.status == Status::Indeterminate) {
            2
        } else {
            0
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => 3,
        Error::Indeterminate(_) | Error::ResourceExceeded(_) => 2,
        _ => 1,
    }
}

/// Parses `args` and runs the command; returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match RunConfig::from_args(&cli.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("status=config_error message={:?}", e.to_string());
            return 3;
        }
    };
    let (text, code) = match run(&cli.command, &cfg) {
        Ok(r) => (r.0, r.1),
        Err(e) => (format!("status=error message={:?}\n", e.to_string()), exit_code(&e)),
    };
    match &cfg.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("status=io_error message={:?}", e.to_string());
                return 3;
            }
        }
        None => print!("{text}"),
    }
    code
}

/// Runs one command; returns the report text and exit status.
pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<(String, i32)> {
    let mut r = Report::default();
    let rs = &cfg.rs;
    match cmd {
        Command::Roots => {
            r.line(format!("type={} rank={} positive_roots={}", rs.label(), rs.rank(), rs.positive_roots().len()));
            for (i, row) in rs.cartan().iter().enumerate() {
                let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                r.line(format!("cartan_row={} entries={} d={}", i + 1, row.join(","), rs.symmetrizer()[i]));
            }
            for (root, wt) in rs.positive_roots().iter().zip(rs.positive_root_weights()) {
                let c: Vec<String> = root.iter().map(|x| x.to_string()).collect();
                r.line(format!("root simple={} weight={}", c.join(","), wt.pretty().replace(' ', "")));
            }
            r.line(format!("rho={}", rs.rho().pretty().replace(' ', "")));
        }
        Command::Weyl => {
            let order = enumerate_group(rs, DEFAULT_GROUP_CAP)?.len();
            let pd = minimal_coset_reps(rs, &cfg.s)?;
            r.line(format!(
                "type={} S={} order={} w_s_order={} cosets={}",
                rs.label(),
                node_list(&pd.s),
                order,
                pd.w_s_order,
                pd.minimal_reps.len()
            ));
            for (k, w) in pd.minimal_reps.iter().enumerate() {
                r.line(format!("rep={} word={} length={}", k, w, w.length()));
            }
        }
        Command::Module { lambda } => {
            let lam = cfg.weight(lambda)?;
            let m = cfg.module(&lam)?;
            r.line(format!(
                "type={} lambda={} dim={} weyl_dim={} relation_residual={:.3e}",
                rs.label(),
                lam.pretty().replace(' ', ""),
                m.dim(),
                rs.weyl_dimension(&lam)?,
                m.check_relations().max()
            ));
            for (w, idx) in m.weight_spaces() {
                r.line(format!("weight={} multiplicity={}", w.pretty().replace(' ', ""), idx.len()));
            }
        }
        Command::Tensor { lambda, mu } => {
            let (a, b) = (cfg.weight(lambda)?, cfg.weight(mu)?);
            let t = tensor(&cfg.module(&a)?, &cfg.module(&b)?)?;
            let got: BTreeMap<Weight, usize> = decompose_highest_weights(&t).into_iter().collect();
            let want = tensor_multiplicities(rs, &a, &b)?;
            for (w, m) in &got {
                r.line(format!("component={} multiplicity={}", w.pretty().replace(' ', ""), m));
            }
            let v = Verdict::new("tensor_oracle", "tensor-oracle", 0.0)
                .param("type", rs.label())
                .param("lambda", a.pretty())
                .param("mu", b.pretty())
                .param("dim", t.dim());
            r.verdict(v.finish(got == want), cfg.tol);
        }
        Command::VerifyCommutation { lambda, mu, variant } => {
            let (a, b) = (cfg.weight(lambda)?, cfg.weight(mu)?);
            let variants = match variant {
                Some(v) => vec![v.parse::<Variant>()?],
                None => vec![Variant::N, Variant::NRev, Variant::O],
            };
            let alg = cfg.algebra()?;
            let da = alg.module(alg.irreducible(&a)?).dim();
            let db = alg.module(alg.irreducible(&b)?).dim();
            for var in variants {
                for x in 0..da {
                    for y in 0..db {
                        let rep = alg.commutation_defect(&a, &b, x, y, var)?;
                        let mut v = Verdict::new("commutation", "commutation", classify::OP_TOL)
                            .param("type", rs.label())
                            .param("variant", format!("{var:?}"))
                            .param("v", x)
                            .param("w", y)
                            .param("span", rep.span_size);
                        let scale = rep.defect_norm.max(1.0);
                        v.residual("lsq_residual", rep.residual.max(rep.residual_opp) / scale);
                        v.evidence("defect_norm", rep.defect_norm);
                        r.verdict(v.finish(rep.holds()), cfg.tol);
                    }
                }
            }
        }
        Command::VerifyUnitarity { lambda } => {
            let lam = cfg.weight(lambda)?;
            let alg = cfg.algebra()?;
            let d = alg.module(alg.irreducible(&lam)?).dim();
            for a in 0..d {
                for c in 0..d {
                    let ok = alg.unitarity_check(&lam, a, c)?;
                    let v = Verdict::new("unitarity", "unitarity", 0.0)
                        .param("type", rs.label())
                        .param("lambda", lam.pretty())
                        .param("a", a)
                        .param("c", c);
                    r.verdict(v.finish(ok), cfg.tol);
                }
            }
        }
        Command::Spectrum { sigma, lambda } => {
            let letters = parse_letters(sigma, rs.rank())?;
            let lam = cfg.weight(lambda)?;
            let fs = cfg.fock()?;
            let l = fs.l_operator(&letters, &lam)?;
            let pred = fs.predicted_l_diagonal(&letters, &lam, false)?;
            let mut ev: Vec<(f64, f64, usize)> =
                l.window_indices().into_iter().map(|i| (l.entry(i, i).re, pred[i], i)).collect();
            ev.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.2.cmp(&b.2)));
            r.line(format!(
                "type={} sigma={} lambda={} N={} window={} diagonal={}",
                rs.label(),
                WeylWord::from_letters(rs, &letters)?,
                lam.pretty().replace(' ', ""),
                cfg.n,
                l.window(),
                l.is_diagonal(classify::DIAG_TOL)
            ));
            for (x, p, i) in &ev {
                let digits: Vec<String> = l.digits(*i).iter().map(|d| d.to_string()).collect();
                r.line(format!("eigenvalue={x:.15e} predicted={p:.15e} index={}", digits.join(",")));
            }
            let mut v = Verdict::new("l_spectrum", "l-spectrum", classify::DIAG_TOL)
                .param("type", rs.label())
                .param("lambda", lam.pretty())
                .with_window(l.window());
            v.residual("diagonal_vs_product", ev.iter().map(|e| (e.0 - e.1).abs()).fold(0.0, f64::max));
            v.residual("off_diagonal", l.off_diagonal_max());
            r.verdict(v.finish(true), cfg.tol);
        }
        Command::VerifyPart1 { sigma, lambda } => {
            let fs = cfg.fock()?;
            r.verdict(classify::check_vanishing(&fs, &cfg.word(sigma)?, &cfg.weight(lambda)?)?, cfg.tol);
        }
        Command::VerifyH1 { sigma, lambda } => {
            let fs = cfg.fock()?;
            let ctx = cfg.context()?;
            let sigmas = match sigma {
                Some(s) => vec![cfg.word(s)?],
                None => ctx.minimal_reps().to_vec(),
            };
            let lams = match lambda {
                Some(l) => vec![cfg.weight(l)?],
                None => ctx.regular_weights(2),
            };
            for s in &sigmas {
                for l in &lams {
                    r.verdict(classify::check_h1(&fs, &ctx, s, l)?, cfg.tol);
                }
            }
        }
        Command::VerifyInequivalence { sigma, sigma2 } => {
            let fs = cfg.fock()?;
            let ctx = cfg.context()?;
            match (sigma, sigma2) {
                (Some(a), Some(b)) => {
                    r.verdict(classify::check_inequivalence(&fs, &ctx, &cfg.word(a)?, &cfg.word(b)?)?, cfg.tol)
                }
                (None, None) => {
                    let reps = ctx.minimal_reps().to_vec();
                    for (i, a) in reps.iter().enumerate() {
                        for b in &reps[i + 1..] {
                            r.verdict(classify::check_inequivalence(&fs, &ctx, a, b)?, cfg.tol);
                        }
                    }
                }
                _ => return invalid("give both --sigma and --sigma2, or neither"),
            }
        }
        Command::VerifyRestriction { sigma, torus } => {
            let fs = cfg.fock()?;
            let ctx = cfg.context()?;
            let t = parse_torus(torus, rs.rank())?;
            let sigmas = match sigma {
                Some(s) => vec![cfg.word(s)?],
                None => enumerate_group(rs, DEFAULT_GROUP_CAP)?,
            };
            for s in &sigmas {
                r.verdict(classify::check_restriction_factorization(&fs, &ctx, s, &t)?, cfg.tol);
            }
        }
        Command::Gelfand => {
            let cases = gelfand_nodes(rs.letter(), rs.rank())?;
            let nodes: Vec<usize> = cases.iter().map(|c| c.node).collect();
            r.line(format!("type={} gelfand_nodes={} count={}", rs.label(), node_list(&nodes), nodes.len()));
            for c in &cases {
                r.line(format!("node={} family={:?}", c.node + 1, c.family));
            }
        }
        Command::Prv { mu } => {
            let ctx = cfg.context()?;
            let m = cfg.weight(mu)?;
            let varpi = ctx.node_weight()?;
            match prv_witness(&ctx, &m, DEFAULT_GROUP_CAP)? {
                Some(w) => r.line(format!(
                    "type={} varpi={} mu={} witness={} image={}",
                    rs.label(),
                    varpi.pretty().replace(' ', ""),
                    m.pretty().replace(' ', ""),
                    w,
                    w.act(&varpi).pretty().replace(' ', "")
                )),
                None => r.line(format!("type={} mu={} witness=none", rs.label(), m.pretty().replace(' ', ""))),
            }
        }
        Command::Factorize { degree } => {
            let ctx = cfg.context()?;
            let rep = factorization_evidence(&ctx, *degree, DEFAULT_DIM_CAP)?;
            let ws = |v: &[Weight]| v.iter().map(|w| w.pretty().replace(' ', "")).collect::<Vec<_>>().join(";");
            r.line(format!(
                "type={} node={} fundamental_sphericals={} sphericals_occur={} multiplicity_free={} all_components_spherical={} characters_match={}",
                rs.label(),
                rep.node + 1,
                ws(&rep.fundamental_sphericals),
                rep.sphericals_occur,
                rep.multiplicity_free,
                rep.all_components_spherical,
                rep.characters_match
            ));
            for (w, m) in &rep.components {
                r.line(format!("component={} multiplicity={}", w.pretty().replace(' ', ""), m));
            }
            for (w, x) in &rep.witnesses {
                r.line(format!("spherical={} witness={}", w.pretty().replace(' ', ""), x.as_deref().unwrap_or("none")));
            }
        }
        Command::Suite { only, seed } => {
            let only: Vec<String> = only.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            if let Some(bad) = only.iter().find(|a| !ANCHORS.contains(&a.as_str())) {
                return invalid(format!("unknown anchor {bad:?}"));
            }
            let sc = SuiteConfig { q: cfg.q, levels: cfg.n, seed: *seed, only };
            for v in classify::run_suite(&sc) {
                r.verdict(v, cfg.tol);
            }
            for a in ANCHORS {
                let vs: Vec<&Verdict> = r.verdicts.iter().filter(|v| v.anchor == a).collect();
                if vs.is_empty() {
                    continue;
                }
                let count = |s: Status| vs.iter().filter(|v| v.status == s).count();
                r.line(format!(
                    "summary anchor={a} pass={} fail={} indeterminate={}",
                    count(Status::Pass),
                    count(Status::Fail),
                    count(Status::Indeterminate)
                ));
            }
        }
    }
    let status = r.status();
    let mut text = String::new();
    for l in &r.lines {
        let _ = writeln!(text, "{l}");
    }
    Ok((text, status))
}

/// `k1,k2/n` gives `t_j = exp(2 pi i k_j / n)`; empty is the identity.
fn parse_torus(s: &str, rank: usize) -> Result<TorusPoint> {
    if s.trim().is_empty() {
        return Ok(TorusPoint::identity(rank));
    }
    let (ks, n) = s.split_once('/').ok_or_else(|| Error::InvalidInput(format!("torus {s:?} needs the form k1,k2/n")))?;
    let n: u32 = n.trim().parse().map_err(|_| Error::InvalidInput(format!("bad torus order in {s:?}")))?;
    let ks: Vec<i64> = ks
        .split(',')
        .map(|k| k.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad torus exponent {k:?}"))))
        .collect::<Result<_>>()?;
    if ks.len() != rank || n == 0 {
        return invalid(format!("torus {s:?} needs {rank} exponents and a positive order"));
    }
    Ok(TorusPoint::root_of_unity(&ks, n))
}
