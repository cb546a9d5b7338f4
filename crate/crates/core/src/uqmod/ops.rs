use super::{ModuleKind, UqModule};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight, Q};
use crate::scalar::{rank, DMat, Field, SparseMat};
use crate::weyl::WeylWord;
use num_traits::{One, ToPrimitive};
use std::sync::Arc;

/// Contragredient module `M*` with `(X f)(v) = f(S(X) v)`.
///
/// For an orthonormal `M` the basis is `phi_b = q^{(mu_b, rho)} b^*`, which is
/// orthonormal for the dual form `(u^*, v^*) = (K_{-2 rho} v, u)`. Otherwise the
/// plain dual basis is used and the Gram matrix is inverted block by block.
pub fn dual_module<T: Field>(m: &UqModule<T>) -> Result<UqModule<T>> {
    let rs = m.root_system().clone();
    let r = rs.rank();
    let n = m.dim();
    let q = m.q().clone();
    let rho = rs.rho().clone();
    let two_rho: Vec<i64> = (0..n)
        .map(|a| {
            let v = Q::from_integer(2) * rs.form_unchecked(m.weight(a), &rho);
            v.to_integer()
        })
        .collect();
    // d_b = q^{(mu_b, rho)}; only used for orthonormal modules
    let d: Vec<T> = if m.is_orthonormal() {
        (0..n)
            .map(|a| T::from_f64(m.q_f64().powf(two_rho[a] as f64 / 2.0)))
            .collect()
    } else {
        vec![T::one(); n]
    };
    let mut e = Vec::with_capacity(r);
    let mut f = Vec::with_capacity(r);
    for i in 0..r {
        // pi(S E_i) = -K_i^{-1} E_i and pi(S F_i) = -F_i K_i
        let mut es = SparseMat::zeros(n, n);
        for (c, col) in m.e(i).cols.iter().enumerate() {
            for (a, v) in col {
                // entry [a, c] of pi(S E), placed at [c, a] with factor d_a / d_c
                let val = -(v.clone() * q.powi(-m.kexp(*a, i))) * d[*a].clone() / d[c].clone();
                es.push(c, *a, val);
            }
        }
        let mut fs = SparseMat::zeros(n, n);
        for (c, col) in m.f(i).cols.iter().enumerate() {
            for (a, v) in col {
                let val = -(v.clone() * q.powi(m.kexp(c, i))) * d[*a].clone() / d[c].clone();
                fs.push(c, *a, val);
            }
        }
        es.compress();
        fs.compress();
        e.push(es);
        f.push(fs);
    }
    let gram = if m.is_orthonormal() {
        SparseMat::identity(n)
    } else {
        let mut g = SparseMat::zeros(n, n);
        for (_, idx) in m.weight_spaces() {
            let block = m.gram().submatrix(idx, idx);
            let inv = block
                .inverse()
                .ok_or_else(|| Error::Internal("singular Gram block".into()))?;
            for (x, &a) in idx.iter().enumerate() {
                for (y, &c) in idx.iter().enumerate() {
                    let s = q.powi(-two_rho[c]);
                    g.push(a, c, s * inv.get(x, y).clone());
                }
            }
        }
        g
    };
    let weights: Vec<Weight> = m.weights().iter().map(|w| -w).collect();
    let kind = match m.kind() {
        ModuleKind::Dual { of, .. } => (**of).clone(),
        other => {
            let highest = match other {
                ModuleKind::Irreducible { highest } => {
                    let w0 = WeylWord::longest(&rs);
                    -&w0.act(highest)
                }
                _ => weights.iter().max().cloned().unwrap_or_else(|| Weight::zero(r)),
            };
            ModuleKind::Dual { highest, of: Box::new(other.clone()) }
        }
    };
    UqModule::from_parts(rs, q, kind, weights, Vec::new(), e, f, gram, m.is_orthonormal())
}

/// `M (x) N` with `Delta(E) = E (x) 1 + K (x) E` and `Delta(F) = F (x) K^{-1} + 1 (x) F`.
pub fn tensor<T: Field>(m: &UqModule<T>, n: &UqModule<T>) -> Result<UqModule<T>> {
    if m.root_system() != n.root_system() {
        return Err(Error::InvalidInput("tensor factors over different root systems".into()));
    }
    if m.q() != n.q() {
        return Err(Error::InvalidInput("tensor factors at different q".into()));
    }
    let rs = m.root_system().clone();
    let r = rs.rank();
    let (dm, dn) = (m.dim(), n.dim());
    let id_m = SparseMat::identity(dm);
    let id_n = SparseMat::identity(dn);
    let mut e = Vec::with_capacity(r);
    let mut f = Vec::with_capacity(r);
    for i in 0..r {
        let km = m.generator_matrix(super::Generator::K(i));
        let kn_inv = n.generator_matrix(super::Generator::KInv(i));
        e.push(m.e(i).kron(&id_n).add(&km.kron(n.e(i))));
        f.push(m.f(i).kron(&kn_inv).add(&id_m.kron(n.f(i))));
    }
    let mut weights = Vec::with_capacity(dm * dn);
    for a in 0..dm {
        for b in 0..dn {
            weights.push(m.weight(a) + n.weight(b));
        }
    }
    let gram = m.gram().kron(n.gram());
    let mut parts = Vec::new();
    for x in [m.kind(), n.kind()] {
        match x {
            ModuleKind::Tensor(v) => parts.extend(v.iter().cloned()),
            other => parts.push(other.clone()),
        }
    }
    UqModule::from_parts(
        rs,
        m.q().clone(),
        ModuleKind::Tensor(parts),
        weights,
        Vec::new(),
        e,
        f,
        gram,
        m.is_orthonormal() && n.is_orthonormal(),
    )
}

/// Iterated tensor product, left to right.
pub fn tensor_many<T: Field>(mods: &[&UqModule<T>]) -> Result<UqModule<T>> {
    let (first, rest) = mods
        .split_first()
        .ok_or_else(|| Error::InvalidInput("empty tensor product".into()))?;
    let mut acc = (*first).clone();
    for m in rest {
        acc = tensor(&acc, m)?;
    }
    Ok(acc)
}

fn kernel_dim<T: Field>(m: &UqModule<T>, w: &Weight, nodes: &[usize]) -> usize {
    let rs = m.root_system();
    let cols = m.weight_space(w);
    let mut rows: Vec<Vec<T>> = Vec::new();
    for &i in nodes {
        let tgt = w + &rs.simple_root(i);
        let tr = m.weight_space(&tgt);
        if tr.is_empty() {
            continue;
        }
        let sub = m.e(i).submatrix(tr, cols);
        for rr in 0..sub.rows {
            rows.push(sub.row(rr).to_vec());
        }
    }
    if rows.is_empty() {
        return cols.len();
    }
    let mat = DMat { rows: rows.len(), cols: cols.len(), data: rows.concat() };
    cols.len() - rank(&mat)
}

/// Highest weights of `M` with multiplicities, from `dim ker (E_1, ..., E_r)`
/// on each dominant weight space. Sorted by weight.
pub fn decompose_highest_weights<T: Field>(m: &UqModule<T>) -> Vec<(Weight, usize)> {
    let all: Vec<usize> = (0..m.root_system().rank()).collect();
    let mut out: Vec<(Weight, usize)> = m
        .weight_spaces()
        .iter()
        .filter(|(w, _)| w.is_dominant())
        .map(|(w, _)| (w.clone(), kernel_dim(m, w, &all)))
        .filter(|(_, k)| *k > 0)
        .collect();
    out.sort();
    out
}

/// Dimension of the irreducible module of the Levi factor `l_S` with
/// highest weight `mu`.
pub fn levi_dimension(rs: &RootSystem, s: &[usize], mu: &Weight) -> u64 {
    let rho = rs.rho();
    let mr = mu + rho;
    let mut acc = Q::one();
    for (root, rw) in rs.positive_roots().iter().zip(rs.positive_root_weights()) {
        if root.iter().enumerate().all(|(j, &c)| c == 0 || s.contains(&j)) {
            acc *= rs.form_unchecked(&mr, rw) / rs.form_unchecked(rho, rw);
        }
    }
    acc.to_integer().to_u64().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BranchEntry {
    pub weight: Weight,
    pub multiplicity: usize,
    pub levi_dim: u64,
}

/// Restriction of `M` to `U_q(l_S)`: highest weights of `l_S`-components
/// with multiplicity, from `dim ker (E_j, j in S)` on `S`-dominant weight spaces.
pub fn branch_to_levi<T: Field>(m: &UqModule<T>, s: &[usize]) -> Result<Vec<BranchEntry>> {
    let rs: Arc<RootSystem> = m.root_system().clone();
    if s.iter().any(|&j| j >= rs.rank()) {
        return Err(Error::InvalidInput("node outside the Dynkin diagram".into()));
    }
    let mut out = Vec::new();
    let mut total = 0u64;
    for (w, _) in m.weight_spaces() {
        if !s.iter().all(|&j| w.coords()[j] >= Q::from_integer(0)) {
            continue;
        }
        let k = kernel_dim(m, w, s);
        if k == 0 {
            continue;
        }
        let ld = levi_dimension(&rs, s, w);
        total += k as u64 * ld;
        out.push(BranchEntry { weight: w.clone(), multiplicity: k, levi_dim: ld });
    }
    if total != m.dim() as u64 {
        return Err(Error::Internal(format!(
            "branching accounts for {total} of {} dimensions",
            m.dim()
        )));
    }
    out.sort();
    Ok(out)
}
