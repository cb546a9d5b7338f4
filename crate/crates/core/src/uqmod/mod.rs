//! Finite-dimensional type-1 modules over `U_q(g)`.
//!
//! Conventions: `K_i v = q^{(mu, alpha_i)} v` on weight vectors,
//! `[E_i, F_j] = delta_ij (K_i - K_i^{-1}) / (q_i - q_i^{-1})`,
//! `Delta(E) = E (x) 1 + K (x) E`, `Delta(F) = F (x) K^{-1} + 1 (x) F`,
//! and the invariant form satisfies `E_i^* = q_i^{-1} F_i K_i`.
//!
//! Irreducible modules carry a basis of F-monomials applied to the highest
//! weight vector, ordered by weight depth and then lexicographically. The
//! float backend orthonormalizes each weight space; the exact backend keeps
//! the monomial basis and stores the Gram matrix of the invariant form.

mod build;
pub mod cache;
mod character;
mod ops;

pub use character::{tensor_multiplicities, weight_multiplicities};
pub use build::{build_irreducible, build_irreducible_exact, build_irreducible_float, DEFAULT_DIM_CAP};
pub use ops::{
    branch_to_levi, decompose_highest_weights, dual_module, levi_dimension, tensor, tensor_many, BranchEntry,
};

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};
use crate::scalar::{Field, SparseMat};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Chevalley generator of `U_q(g)` (0-based node).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

impl Generator {
    pub fn node(&self) -> usize {
        match *self {
            Generator::E(i) | Generator::F(i) | Generator::K(i) | Generator::KInv(i) => i,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModuleKind {
    Irreducible { highest: Weight },
    Dual { highest: Weight, of: Box<ModuleKind> },
    Tensor(Vec<ModuleKind>),
    Custom(String),
}

#[derive(Clone, Debug)]
pub struct UqModule<T: Field> {
    rs: Arc<RootSystem>,
    q: T,
    kind: ModuleKind,
    weights: Vec<Weight>,
    labels: Vec<Vec<usize>>,
    e: Vec<SparseMat<T>>,
    f: Vec<SparseMat<T>>,
    gram: SparseMat<T>,
    orthonormal: bool,
    kexp: Vec<Vec<i64>>,
    spaces: Vec<(Weight, Vec<usize>)>,
    space_index: HashMap<Weight, usize>,
}

impl<T: Field> UqModule<T> {
    /// Assemble a module from raw data. Weights must be integral.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        rs: Arc<RootSystem>,
        q: T,
        kind: ModuleKind,
        weights: Vec<Weight>,
        labels: Vec<Vec<usize>>,
        e: Vec<SparseMat<T>>,
        f: Vec<SparseMat<T>>,
        gram: SparseMat<T>,
        orthonormal: bool,
    ) -> Result<Self> {
        let n = weights.len();
        let r = rs.rank();
        if e.len() != r || f.len() != r {
            return Err(Error::InvalidInput("need one E and F matrix per node".into()));
        }
        for m in e.iter().chain(f.iter()) {
            if m.rows != n || m.ncols() != n {
                return Err(Error::InvalidInput("generator matrix has wrong shape".into()));
            }
        }
        let d = rs.symmetrizer();
        let mut kexp = Vec::with_capacity(n);
        for w in &weights {
            if w.rank() != r {
                return Err(Error::InvalidInput(format!("weight {w} has wrong rank")));
            }
            let ints = w
                .to_ints()
                .ok_or_else(|| Error::InvalidInput(format!("weight {w} is not integral")))?;
            kexp.push((0..r).map(|i| d[i] * ints[i]).collect());
        }
        let mut spaces: Vec<(Weight, Vec<usize>)> = Vec::new();
        let mut space_index = HashMap::new();
        for (a, w) in weights.iter().enumerate() {
            let k = *space_index.entry(w.clone()).or_insert_with(|| {
                spaces.push((w.clone(), Vec::new()));
                spaces.len() - 1
            });
            spaces[k].1.push(a);
        }
        let labels = if labels.len() == n { labels } else { vec![Vec::new(); n] };
        Ok(UqModule { rs, q, kind, weights, labels, e, f, gram, orthonormal, kexp, spaces, space_index })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn q_f64(&self) -> f64 {
        self.q.to_f64()
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, a: usize) -> &Weight {
        &self.weights[a]
    }

    /// F-word producing basis vector `a` from the highest weight vector
    /// (`[j, k]` means `F_j F_k v_lambda`). Empty for non-irreducible modules.
    pub fn label(&self, a: usize) -> &[usize] {
        &self.labels[a]
    }

    pub fn highest_weight(&self) -> Option<&Weight> {
        match &self.kind {
            ModuleKind::Irreducible { highest } | ModuleKind::Dual { highest, .. } => Some(highest),
            _ => None,
        }
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn e(&self, i: usize) -> &SparseMat<T> {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &SparseMat<T> {
        &self.f[i]
    }

    /// Gram matrix of the invariant Hermitian form.
    pub fn gram(&self) -> &SparseMat<T> {
        &self.gram
    }

    /// `(mu_a, alpha_i)`, so that `K_i e_a = q^{kexp(a, i)} e_a`.
    pub fn kexp(&self, a: usize, i: usize) -> i64 {
        self.kexp[a][i]
    }

    /// Weight spaces in basis order.
    pub fn weight_spaces(&self) -> &[(Weight, Vec<usize>)] {
        &self.spaces
    }

    pub fn weight_space(&self, w: &Weight) -> &[usize] {
        match self.space_index.get(w) {
            Some(&k) => &self.spaces[k].1,
            None => &[],
        }
    }

    pub fn multiplicity(&self, w: &Weight) -> usize {
        self.weight_space(w).len()
    }

    fn k_diag(&self, i: usize, sign: i64) -> Vec<T> {
        (0..self.dim()).map(|a| self.q.powi(sign * self.kexp[a][i])).collect()
    }

    /// Matrix of a generator.
    pub fn generator_matrix(&self, g: Generator) -> SparseMat<T> {
        match g {
            Generator::E(i) => self.e[i].clone(),
            Generator::F(i) => self.f[i].clone(),
            Generator::K(i) => SparseMat::diagonal(self.k_diag(i, 1)),
            Generator::KInv(i) => SparseMat::diagonal(self.k_diag(i, -1)),
        }
    }

    /// Apply a generator to a coordinate vector.
    pub fn apply(&self, g: Generator, v: &[T]) -> Vec<T> {
        match g {
            Generator::E(i) => self.e[i].apply(v),
            Generator::F(i) => self.f[i].apply(v),
            Generator::K(i) | Generator::KInv(i) => {
                let s = if matches!(g, Generator::K(_)) { 1 } else { -1 };
                v.iter()
                    .enumerate()
                    .map(|(a, x)| x.clone() * self.q.powi(s * self.kexp[a][i]))
                    .collect()
            }
        }
    }

    /// Apply `g_1 g_2 ... g_k` (rightmost first).
    pub fn apply_word(&self, word: &[Generator], v: &[T]) -> Vec<T> {
        let mut x = v.to_vec();
        for g in word.iter().rev() {
            x = self.apply(*g, &x);
        }
        x
    }

    pub fn q_i(&self, i: usize) -> T {
        self.q.powi(self.rs.symmetrizer()[i])
    }

    /// Residuals of the defining relations.
    pub fn check_relations(&self) -> RelationReport {
        let r = self.rs.rank();
        let n = self.dim();
        let a = self.rs.cartan();
        let mut rep = RelationReport::default();
        // K E K^{-1} = q^{(alpha_i, alpha_j)} E, i.e. weight bookkeeping
        for i in 0..r {
            let ai = self.rs.simple_root(i);
            for (mat, sign) in [(&self.e[i], 1i64), (&self.f[i], -1i64)] {
                for (c, col) in mat.cols.iter().enumerate() {
                    for (row, v) in col {
                        let expect = if sign > 0 { &self.weights[c] + &ai } else { &self.weights[c] - &ai };
                        if self.weights[*row] != expect {
                            rep.weights = rep.weights.max(v.to_f64().abs());
                        }
                    }
                }
            }
        }
        for i in 0..r {
            let qi = self.q_i(i);
            let den = qi.clone() - T::one() / qi.clone();
            for j in 0..r {
                let (ef, fe) = (self.e[i].mul(&self.f[j]), self.f[j].mul(&self.e[i]));
                let size = ef.max_abs().max(fe.max_abs()).max(1.0);
                let comm = ef.lin_comb(&T::one(), &fe, &-T::one());
                let res = if i == j {
                    let kk: Vec<T> = (0..n)
                        .map(|x| (self.q.powi(self.kexp[x][i]) - self.q.powi(-self.kexp[x][i])) / den.clone())
                        .collect();
                    comm.lin_comb(&T::one(), &SparseMat::diagonal(kk), &-T::one())
                } else {
                    comm
                };
                rep.commutator = rep.commutator.max(res.max_abs() / size);
                if i != j {
                    let m = (1 - a[i][j]) as usize;
                    for x in [&self.e, &self.f] {
                        let (s, size) = serre(&x[i], &x[j], m, &qi, n);
                        rep.serre = rep.serre.max(s.max_abs() / size.max(1.0));
                    }
                }
            }
            // E_i^T G = G q_i^{-1} F_i K_i
            let lhs = self.e[i].transpose().mul(&self.gram);
            let fk = self.f[i].scale_cols(&self.k_diag(i, 1)).scale(&(T::one() / qi.clone()));
            let rhs = self.gram.mul(&fk);
            rep.adjoint = rep.adjoint.max(lhs.lin_comb(&T::one(), &rhs, &-T::one()).max_abs());
        }
        rep
    }
}

fn qint<T: Field>(q: &T, k: usize) -> T {
    let num = q.powi(k as i64) - q.powi(-(k as i64));
    let den = q.clone() - T::one() / q.clone();
    num / den
}

fn qbinom<T: Field>(q: &T, m: usize, s: usize) -> T {
    let fact = |k: usize| -> T {
        let mut acc = T::one();
        for t in 1..=k {
            acc = acc * qint(q, t);
        }
        acc
    };
    fact(m) / (fact(s) * fact(m - s))
}

/// The quantum Serre combination and the largest of its terms.
fn serre<T: Field>(xi: &SparseMat<T>, xj: &SparseMat<T>, m: usize, qi: &T, n: usize) -> (SparseMat<T>, f64) {
    let pow = |k: usize| -> SparseMat<T> {
        let mut p = SparseMat::identity(n);
        for _ in 0..k {
            p = p.mul(xi);
        }
        p
    };
    let mut acc = SparseMat::zeros(n, n);
    let mut size = 0.0f64;
    for s in 0..=m {
        let term = pow(m - s).mul(xj).mul(&pow(s));
        let mut c = qbinom(qi, m, s);
        size = size.max(c.to_f64().abs() * term.max_abs());
        if s % 2 == 1 {
            c = -c;
        }
        acc = acc.lin_comb(&T::one(), &term, &c);
    }
    (acc, size)
}

/// Largest residuals of the defining relations and of the adjointness of
/// the invariant form. Commutator and Serre residuals are relative to the
/// largest term entering them (or 1, whichever is bigger).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RelationReport {
    pub weights: f64,
    pub commutator: f64,
    pub serre: f64,
    pub adjoint: f64,
}

impl RelationReport {
    pub fn max(&self) -> f64 {
        self.weights.max(self.commutator).max(self.serre).max(self.adjoint)
    }
}

pub type ExactModule = UqModule<num_rational::BigRational>;
pub type FloatModule = UqModule<f64>;

/// Validate `q` and `lambda` for module construction.
pub(crate) fn validate_highest(rs: &RootSystem, lambda: &Weight, q: f64) -> Result<()> {
    if lambda.rank() != rs.rank() {
        return Err(Error::InvalidInput(format!("weight {lambda} does not belong to {}", rs.label())));
    }
    if !lambda.is_integral() || !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!("{lambda} is not dominant integral")));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidInput(format!("q = {q} is outside (0, 1)")));
    }
    Ok(())
}
