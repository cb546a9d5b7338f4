//! On-disk JSON cache of constructed irreducible modules.
//!
//! Entries are keyed by Cartan type, highest weight, `q` and backend. The
//! directory comes from `QFLAG_CACHE_DIR` unless given explicitly.

use super::{build_irreducible_exact, build_irreducible_float, ModuleKind, UqModule};
use crate::error::Result;
use crate::rootdata::{RootSystem, Weight};
use crate::scalar::{rational_approx, Backend, Field, SparseMat};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::sync::Arc;

pub const CACHE_ENV: &str = "QFLAG_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct ModuleDoc {
    root_system: String,
    q: String,
    kind: ModuleKind,
    orthonormal: bool,
    weights: Vec<Vec<i64>>,
    labels: Vec<Vec<usize>>,
    e: Vec<Vec<(usize, usize, String)>>,
    f: Vec<Vec<(usize, usize, String)>>,
    gram: Vec<(usize, usize, String)>,
}

fn triplets<T: Field>(m: &SparseMat<T>) -> Vec<(usize, usize, String)> {
    let mut out = Vec::with_capacity(m.nnz());
    for (c, col) in m.cols.iter().enumerate() {
        for (r, v) in col {
            out.push((*r, c, v.to_string_repr()));
        }
    }
    out
}

fn from_triplets<T: Field>(n: usize, t: &[(usize, usize, String)]) -> Option<SparseMat<T>> {
    let mut m = SparseMat::zeros(n, n);
    for (r, c, s) in t {
        if *r >= n || *c >= n {
            return None;
        }
        m.push(*r, *c, T::parse_repr(s)?);
    }
    Some(m)
}

pub fn to_json<T: Field>(m: &UqModule<T>) -> Result<String> {
    let doc = ModuleDoc {
        root_system: m.root_system().label(),
        q: m.q().to_string_repr(),
        kind: m.kind().clone(),
        orthonormal: m.is_orthonormal(),
        weights: m.weights().iter().map(|w| w.to_ints().unwrap_or_default()).collect(),
        labels: (0..m.dim()).map(|a| m.label(a).to_vec()).collect(),
        e: (0..m.root_system().rank()).map(|i| triplets(m.e(i))).collect(),
        f: (0..m.root_system().rank()).map(|i| triplets(m.f(i))).collect(),
        gram: triplets(m.gram()),
    };
    Ok(serde_json::to_string(&doc)?)
}

pub fn from_json<T: Field>(rs: &Arc<RootSystem>, s: &str) -> Option<UqModule<T>> {
    let doc: ModuleDoc = serde_json::from_str(s).ok()?;
    if doc.root_system != rs.label() {
        return None;
    }
    let n = doc.weights.len();
    let e: Option<Vec<SparseMat<T>>> = doc.e.iter().map(|t| from_triplets(n, t)).collect();
    let f: Option<Vec<SparseMat<T>>> = doc.f.iter().map(|t| from_triplets(n, t)).collect();
    UqModule::from_parts(
        rs.clone(),
        T::parse_repr(&doc.q)?,
        doc.kind,
        doc.weights.iter().map(|w| Weight::from_ints(w)).collect(),
        doc.labels,
        e?,
        f?,
        from_triplets(n, &doc.gram)?,
        doc.orthonormal,
    )
    .ok()
}

#[derive(Clone, Debug)]
pub struct ModuleCache {
    dir: PathBuf,
}

impl ModuleCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ModuleCache { dir: dir.into() }
    }

    /// Cache rooted at `$QFLAG_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(|d| ModuleCache::new(PathBuf::from(d)))
    }

    pub fn dir(&self) -> &PathBuf {
        &self.dir
    }

    fn path(&self, rs: &RootSystem, lambda: &Weight, q: f64, backend: Backend) -> PathBuf {
        let lam: Vec<String> = lambda.coords().iter().map(|c| c.to_string()).collect();
        let tag = match backend {
            Backend::Exact => "exact",
            Backend::Float => "float",
        };
        self.dir
            .join(format!("{}_{}_q{}_{}.json", rs.label(), lam.join("-"), q, tag))
    }

    fn load<T: Field>(&self, rs: &Arc<RootSystem>, lambda: &Weight, q: f64, b: Backend) -> Option<UqModule<T>> {
        let s = std::fs::read_to_string(self.path(rs, lambda, q, b)).ok()?;
        from_json(rs, &s)
    }

    fn store<T: Field>(&self, m: &UqModule<T>, lambda: &Weight, q: f64, b: Backend) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let p = self.path(m.root_system(), lambda, q, b);
        let tmp = p.with_extension("tmp");
        std::fs::write(&tmp, to_json(m)?)?;
        std::fs::rename(tmp, p)?;
        Ok(())
    }

    pub fn irreducible_float(&self, rs: &Arc<RootSystem>, lambda: &Weight, q: f64, cap: usize) -> Result<UqModule<f64>> {
        if let Some(m) = self.load(rs, lambda, q, Backend::Float) {
            return Ok(m);
        }
        let m = build_irreducible_float(rs, lambda, q, cap)?;
        self.store(&m, lambda, q, Backend::Float)?;
        Ok(m)
    }

    pub fn irreducible_exact(
        &self,
        rs: &Arc<RootSystem>,
        lambda: &Weight,
        q: f64,
        cap: usize,
    ) -> Result<UqModule<BigRational>> {
        if let Some(m) = self.load(rs, lambda, q, Backend::Exact) {
            return Ok(m);
        }
        let m = build_irreducible_exact(rs, lambda, &rational_approx(q), cap)?;
        self.store(&m, lambda, q, Backend::Exact)?;
        Ok(m)
    }
}
