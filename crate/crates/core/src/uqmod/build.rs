use super::{validate_highest, ModuleKind, UqModule};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};
use crate::scalar::{Backend, DMat, Field, SparseMat};
use num_rational::BigRational;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// Default bound on module dimension.
pub const DEFAULT_DIM_CAP: usize = 2000;

struct Block<T> {
    m: Vec<i64>,
    dim: usize,
    /// `F_j : V_{mu + alpha_j} -> V_mu`
    f_in: Vec<Option<DMat<T>>>,
    /// `E_i : V_mu -> V_{mu + alpha_i}`
    e_out: Vec<Option<DMat<T>>>,
    gram: DMat<T>,
    labels: Vec<Vec<usize>>,
}

struct Layout<T> {
    blocks: Vec<Block<T>>,
    index: HashMap<Vec<i64>, usize>,
}

impl<T: Field> Layout<T> {
    fn get(&self, m: &[i64]) -> Option<&Block<T>> {
        self.index.get(m).map(|&k| &self.blocks[k])
    }
}

fn shift(m: &[i64], a: &[Vec<i64>], j: usize, sign: i64) -> Vec<i64> {
    m.iter().enumerate().map(|(k, x)| x + sign * a[k][j]).collect()
}

/// `[n]_{q_i}`.
fn qnum<T: Field>(q: &T, d: i64, n: i64) -> T {
    let qi = q.powi(d);
    (q.powi(d * n) - q.powi(-d * n)) / (qi.clone() - T::one() / qi)
}

fn next_weights<T>(layout: &Layout<T>, prev: &[usize], a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = a.len();
    let mut set = BTreeSet::new();
    for &k in prev {
        for j in 0..r {
            set.insert(shift(&layout.blocks[k].m, a, j, -1));
        }
    }
    set.into_iter().rev().collect()
}

fn candidates<T>(layout: &Layout<T>, m: &[i64], a: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 0..a.len() {
        if let Some(&k) = layout.index.get(&shift(m, a, j, 1)) {
            for b in 0..layout.blocks[k].dim {
                out.push((j, b));
            }
        }
    }
    out
}

fn top_block<T: Field>(m: Vec<i64>, r: usize) -> Block<T> {
    Block {
        m,
        dim: 1,
        f_in: vec![None; r],
        e_out: vec![None; r],
        gram: DMat::identity(1),
        labels: vec![Vec::new()],
    }
}

/// Exact construction: candidates `F_j b` are kept when independent modulo
/// the radical, detected through `Phi(c) = (E_i c)_i`, which is injective on
/// every weight space of `V(lambda)` below the top.
fn layout_exact<T: Field>(rs: &RootSystem, lambda: &[i64], q: &T, cap: usize) -> Result<Layout<T>> {
    let a = rs.cartan();
    let d = rs.symmetrizer();
    let r = rs.rank();
    let mut layout = Layout { blocks: vec![top_block(lambda.to_vec(), r)], index: HashMap::new() };
    layout.index.insert(lambda.to_vec(), 0);
    let mut prev = vec![0usize];
    let mut total = 1usize;
    while !prev.is_empty() {
        let mut current = Vec::new();
        for m in next_weights(&layout, &prev, a) {
            let cands = candidates(&layout, &m, a);
            if cands.is_empty() {
                continue;
            }
            // segments of Phi
            let mut seg: Vec<Option<(usize, usize)>> = vec![None; r];
            let mut len = 0;
            for (i, s) in seg.iter_mut().enumerate() {
                if let Some(p) = layout.get(&shift(&m, a, i, 1)) {
                    *s = Some((len, p.dim));
                    len += p.dim;
                }
            }
            let phi = |j: usize, b: usize| -> Vec<T> {
                let mut v = vec![T::zero(); len];
                let bj = layout.get(&shift(&m, a, j, 1)).expect("candidate source");
                for i in 0..r {
                    let Some((off, _)) = seg[i] else { continue };
                    let p = layout.get(&shift(&m, a, i, 1)).expect("segment");
                    if let (Some(e), Some(f)) = (&bj.e_out[i], &p.f_in[j]) {
                        let eb = e.col(b);
                        let w = f.apply(&eb);
                        for (k, x) in w.into_iter().enumerate() {
                            v[off + k] = v[off + k].clone() + x;
                        }
                    }
                    if i == j {
                        let kk = qnum(q, d[i], m[i] + 2);
                        v[off + b] = v[off + b].clone() + kk;
                    }
                }
                v
            };
            // incremental elimination
            let mut piv_rows: Vec<(usize, Vec<T>, Vec<T>)> = Vec::new();
            let mut basis: Vec<usize> = Vec::new();
            let mut coords: Vec<Vec<T>> = Vec::with_capacity(cands.len());
            let mut phis: Vec<Vec<T>> = Vec::with_capacity(cands.len());
            for (ci, &(j, b)) in cands.iter().enumerate() {
                let x = phi(j, b);
                let mut red = x.clone();
                let mut comb: Vec<T> = vec![T::zero(); basis.len()];
                for (p, rv, cv) in &piv_rows {
                    if red[*p].is_exact_zero() {
                        continue;
                    }
                    let fct = red[*p].clone() / rv[*p].clone();
                    for (y, z) in red.iter_mut().zip(rv) {
                        *y = y.clone() - fct.clone() * z.clone();
                    }
                    for (k, c) in cv.iter().enumerate() {
                        comb[k] = comb[k].clone() + fct.clone() * c.clone();
                    }
                }
                let scale = x.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
                let pivot = red.iter().position(|v| !v.negligible(scale));
                match pivot {
                    None => coords.push(comb),
                    Some(p) => {
                        // red = Phi(new) - sum_k comb_k Phi(basis_k)
                        let mut cv: Vec<T> = comb.iter().map(|c| -c.clone()).collect();
                        cv.push(T::one());
                        for row in piv_rows.iter_mut() {
                            row.2.push(T::zero());
                        }
                        piv_rows.push((p, red, cv));
                        basis.push(ci);
                        let mut own = vec![T::zero(); basis.len()];
                        own[basis.len() - 1] = T::one();
                        coords.push(own);
                    }
                }
                phis.push(x);
            }
            let dim = basis.len();
            if dim == 0 {
                continue;
            }
            total += dim;
            if total > cap {
                return Err(Error::ResourceExceeded(format!("module dimension exceeds cap {cap}")));
            }
            let mut f_in: Vec<Option<DMat<T>>> = vec![None; r];
            for j in 0..r {
                if let Some(src) = layout.get(&shift(&m, a, j, 1)) {
                    let mut fm = DMat::zeros(dim, src.dim);
                    for (ci, &(jj, b)) in cands.iter().enumerate() {
                        if jj != j {
                            continue;
                        }
                        for (k, c) in coords[ci].iter().enumerate() {
                            fm.set(k, b, c.clone());
                        }
                    }
                    f_in[j] = Some(fm);
                }
            }
            let mut e_out: Vec<Option<DMat<T>>> = vec![None; r];
            for i in 0..r {
                if let Some((off, pd)) = seg[i] {
                    let mut em = DMat::zeros(pd, dim);
                    for (k, &ci) in basis.iter().enumerate() {
                        for t in 0..pd {
                            em.set(t, k, phis[ci][off + t].clone());
                        }
                    }
                    e_out[i] = Some(em);
                }
            }
            // Gram: (F_j b, x) = q_j q^{-(mu+alpha_j, alpha_j)} (b, E_j x)
            let mut gram = DMat::zeros(dim, dim);
            let mut labels = Vec::with_capacity(dim);
            for (k, &ci) in basis.iter().enumerate() {
                let (j, b) = cands[ci];
                let src = layout.get(&shift(&m, a, j, 1)).expect("source");
                let fac = q.powi(-d[j] * (m[j] + 1));
                let ej = e_out[j].as_ref().expect("E_j into source");
                for x in 0..dim {
                    let mut acc = T::zero();
                    for bp in 0..src.dim {
                        let g = src.gram.get(b, bp);
                        let ev = ej.get(bp, x);
                        if !g.is_exact_zero() && !ev.is_exact_zero() {
                            acc = acc + g.clone() * ev.clone();
                        }
                    }
                    gram.set(k, x, fac.clone() * acc);
                }
                let mut lab = vec![j];
                lab.extend_from_slice(&src.labels[b]);
                labels.push(lab);
            }
            layout.index.insert(m.clone(), layout.blocks.len());
            current.push(layout.blocks.len());
            layout.blocks.push(Block { m, dim, f_in, e_out, gram, labels });
        }
        prev = current;
    }
    Ok(layout)
}

/// Float construction with an orthonormal basis of every weight space.
/// Candidate inner products come from `(F_j b, F_k b') = q_j q^{-(mu+alpha_j, alpha_j)} (b, E_j F_k b')`.
fn layout_float(rs: &RootSystem, lambda: &[i64], q: f64, cap: usize) -> Result<Layout<f64>> {
    let a = rs.cartan();
    let d = rs.symmetrizer();
    let r = rs.rank();
    let mults = super::weight_multiplicities(rs, &Weight::from_ints(lambda))?;
    let mut layout = Layout { blocks: vec![top_block(lambda.to_vec(), r)], index: HashMap::new() };
    layout.index.insert(lambda.to_vec(), 0);
    let mut prev = vec![0usize];
    let mut total = 1usize;
    while !prev.is_empty() {
        let mut current = Vec::new();
        for m in next_weights(&layout, &prev, a) {
            let cands = candidates(&layout, &m, a);
            let n = cands.len();
            if n == 0 || !mults.contains_key(&m) {
                continue;
            }
            let mut offs: Vec<Option<usize>> = vec![None; r];
            {
                let mut o = 0;
                for (j, off) in offs.iter_mut().enumerate() {
                    if let Some(src) = layout.get(&shift(&m, a, j, 1)) {
                        *off = Some(o);
                        o += src.dim;
                    }
                }
            }
            let mut gc = vec![vec![0.0f64; n]; n];
            let mut scale = vec![0.0f64; n];
            for (y, &(k, bp)) in cands.iter().enumerate() {
                let bk = layout.get(&shift(&m, a, k, 1)).expect("source");
                for j in 0..r {
                    let Some(offj) = offs[j] else { continue };
                    let pj = layout.get(&shift(&m, a, j, 1)).expect("source");
                    let mut w = vec![0.0; pj.dim];
                    // size of the terms summed into the diagonal entry
                    let mut wabs = 0.0;
                    if let (Some(e), Some(f)) = (&bk.e_out[j], &pj.f_in[k]) {
                        let col = e.col(bp);
                        w = f.apply(&col);
                        if j == k {
                            // entries of f and e carry rounding of their own size
                            let fmax = f.data.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
                            let emax = e.data.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
                            wabs = col.iter().enumerate().map(|(t, c)| (f.get(bp, t) * c).abs()).sum::<f64>() + fmax * emax;
                        }
                    }
                    let fac = q.powi((-d[j] * (m[j] + 1)) as i32);
                    if j == k {
                        let kk = qnum(&q, d[j], m[j] + 2);
                        scale[y] = fac * (wabs + kk.abs());
                        w[bp] += kk;
                    }
                    for (b, wb) in w.iter().enumerate() {
                        gc[offj + b][y] = fac * wb;
                    }
                }
            }
            for x in 0..n {
                for y in x + 1..n {
                    let s = 0.5 * (gc[x][y] + gc[y][x]);
                    gc[x][y] = s;
                    gc[y][x] = s;
                }
            }
            // Pivoted Gram-Schmidt picking exactly `want` vectors; g_m = Gc R_m
            // gives (c_x, u_m) = g_m[x].
            let want = mults.get(&m).copied().unwrap_or(0);
            let mut rvecs: Vec<Vec<f64>> = Vec::new();
            let mut gvecs: Vec<Vec<f64>> = Vec::new();
            let mut chosen: Vec<usize> = Vec::new();
            let resid = |x: usize, gvecs: &[Vec<f64>]| gc[x][x] - gvecs.iter().map(|g| g[x] * g[x]).sum::<f64>();
            while chosen.len() < want {
                // the candidate keeping the largest share of its norm, measured
                // against the rounding noise of its diagonal entry
                let best = (0..n)
                    .filter(|x| !chosen.contains(x) && scale[*x] > 0.0)
                    .map(|x| (x, resid(x, &gvecs) / scale[x]))
                    .filter(|&(_, r)| r > 1e-9)
                    .max_by(|a, b| a.1.total_cmp(&b.1));
                let Some((x, _)) = best else {
                    return Err(Error::Internal(format!(
                        "weight space {m:?} is numerically rank deficient at q = {q}"
                    )));
                };
                let cs: Vec<f64> = gvecs.iter().map(|g| g[x]).collect();
                let mut v = vec![0.0; n];
                v[x] = 1.0;
                for (c, rv) in cs.iter().zip(&rvecs) {
                    for (vi, ri) in v.iter_mut().zip(rv) {
                        *vi -= c * ri;
                    }
                }
                let mut gv: Vec<f64> = (0..n).map(|i| (0..n).map(|t| gc[i][t] * v[t]).sum()).collect();
                // second pass
                for (rv, g) in rvecs.iter().zip(&gvecs) {
                    let c: f64 = v.iter().zip(g).map(|(p, s)| p * s).sum();
                    for (vi, ri) in v.iter_mut().zip(rv) {
                        *vi -= c * ri;
                    }
                    for (gi, si) in gv.iter_mut().zip(g) {
                        *gi -= c * si;
                    }
                }
                let nrm2: f64 = v.iter().zip(&gv).map(|(p, s)| p * s).sum();
                if nrm2 <= 0.0 {
                    return Err(Error::Internal(format!("indefinite form on weight space {m:?}")));
                }
                let nrm = nrm2.sqrt();
                rvecs.push(v.into_iter().map(|t| t / nrm).collect());
                gvecs.push(gv.into_iter().map(|t| t / nrm).collect());
                chosen.push(x);
            }
            let leftover = (0..n)
                .filter(|x| !chosen.contains(x) && scale[*x] > 0.0)
                .map(|x| resid(x, &gvecs) / scale[x])
                .fold(0.0f64, f64::max);
            if leftover > 1e-6 {
                return Err(Error::Internal(format!(
                    "weight space {m:?} has more than {want} independent candidates at q = {q}"
                )));
            }
            let dim = rvecs.len();
            if dim == 0 {
                continue;
            }
            total += dim;
            if total > cap {
                return Err(Error::ResourceExceeded(format!("module dimension exceeds cap {cap}")));
            }
            let mut f_in: Vec<Option<DMat<f64>>> = vec![None; r];
            let mut e_out: Vec<Option<DMat<f64>>> = vec![None; r];
            for j in 0..r {
                let Some(src) = layout.get(&shift(&m, a, j, 1)) else { continue };
                let off = offs[j].expect("offset");
                let mut fm = DMat::zeros(dim, src.dim);
                for u in 0..dim {
                    for b in 0..src.dim {
                        fm.set(u, b, gvecs[u][off + b]);
                    }
                }
                let fac = q.powi((-d[j] * (m[j] + 1)) as i32);
                let mut em = fm.transpose();
                for x in em.data.iter_mut() {
                    *x /= fac;
                }
                f_in[j] = Some(fm);
                e_out[j] = Some(em);
            }
            let labels = chosen
                .iter()
                .map(|&x| {
                    let (j, b) = cands[x];
                    let mut lab = vec![j];
                    lab.extend_from_slice(&layout.get(&shift(&m, a, j, 1)).expect("source").labels[b]);
                    lab
                })
                .collect();
            layout.index.insert(m.clone(), layout.blocks.len());
            current.push(layout.blocks.len());
            layout.blocks.push(Block { m, dim, f_in, e_out, gram: DMat::identity(dim), labels });
        }
        prev = current;
    }
    Ok(layout)
}

fn assemble<T: Field>(
    rs: &Arc<RootSystem>,
    lambda: &Weight,
    q: T,
    layout: Layout<T>,
    orthonormal: bool,
) -> Result<UqModule<T>> {
    let a = rs.cartan();
    let r = rs.rank();
    let mut offsets = Vec::with_capacity(layout.blocks.len());
    let mut n = 0;
    for b in &layout.blocks {
        offsets.push(n);
        n += b.dim;
    }
    let expected = rs.weyl_dimension(lambda)? as usize;
    if n != expected {
        return Err(Error::Internal(format!(
            "constructed dimension {n} differs from Weyl dimension {expected} for {lambda}"
        )));
    }
    let mut e: Vec<SparseMat<T>> = (0..r).map(|_| SparseMat::zeros(n, n)).collect();
    let mut f: Vec<SparseMat<T>> = (0..r).map(|_| SparseMat::zeros(n, n)).collect();
    let mut gram = SparseMat::zeros(n, n);
    let mut weights = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (bi, b) in layout.blocks.iter().enumerate() {
        let o = offsets[bi];
        for i in 0..r {
            if let Some(em) = &b.e_out[i] {
                let tgt = layout.index[&shift(&b.m, a, i, 1)];
                let ot = offsets[tgt];
                for row in 0..em.rows {
                    for col in 0..em.cols {
                        e[i].push(ot + row, o + col, em.get(row, col).clone());
                    }
                }
            }
            if let Some(fm) = &b.f_in[i] {
                let src = layout.index[&shift(&b.m, a, i, 1)];
                let os = offsets[src];
                for row in 0..fm.rows {
                    for col in 0..fm.cols {
                        f[i].push(o + row, os + col, fm.get(row, col).clone());
                    }
                }
            }
        }
        for row in 0..b.dim {
            for col in 0..b.dim {
                gram.push(o + row, o + col, b.gram.get(row, col).clone());
            }
            weights.push(Weight::from_ints(&b.m));
            labels.push(b.labels[row].clone());
        }
    }
    if !T::EXACT {
        // drop rounding noise
        let drop = |m: &mut SparseMat<T>| {
            for col in m.cols.iter_mut() {
                col.retain(|(_, v)| v.to_f64().abs() > 1e-15);
            }
        };
        e.iter_mut().for_each(drop);
        f.iter_mut().for_each(drop);
    }
    for m in e.iter_mut().chain(f.iter_mut()) {
        m.compress();
    }
    UqModule::from_parts(
        rs.clone(),
        q,
        ModuleKind::Irreducible { highest: lambda.clone() },
        weights,
        labels,
        e,
        f,
        gram,
        orthonormal,
    )
}

fn precheck(rs: &RootSystem, lambda: &Weight, q: f64, cap: usize) -> Result<Vec<i64>> {
    validate_highest(rs, lambda, q)?;
    let dim = rs.weyl_dimension(lambda)?;
    if dim as usize > cap {
        return Err(Error::ResourceExceeded(format!(
            "dim V({}) = {dim} exceeds cap {cap}",
            lambda.pretty()
        )));
    }
    Ok(lambda.to_ints().expect("integral"))
}

/// `V(lambda)` over exact rationals at the rational value `q`.
pub fn build_irreducible_exact(
    rs: &Arc<RootSystem>,
    lambda: &Weight,
    q: &BigRational,
    cap: usize,
) -> Result<UqModule<BigRational>> {
    let qf = Field::to_f64(q);
    let m = precheck(rs, lambda, qf, cap)?;
    let layout = layout_exact(rs, &m, q, cap)?;
    assemble(rs, lambda, q.clone(), layout, false)
}

/// `V(lambda)` in double precision with an orthonormal basis.
pub fn build_irreducible_float(rs: &Arc<RootSystem>, lambda: &Weight, q: f64, cap: usize) -> Result<UqModule<f64>> {
    let m = precheck(rs, lambda, q, cap)?;
    let layout = layout_float(rs, &m, q, cap)?;
    assemble(rs, lambda, q, layout, true)
}

/// Either backend, returned as a float module. The exact backend converts
/// its structure constants after construction and keeps the monomial basis.
pub fn build_irreducible(
    rs: &Arc<RootSystem>,
    lambda: &Weight,
    q: f64,
    backend: Backend,
    cap: usize,
) -> Result<UqModule<f64>> {
    match backend {
        Backend::Float => build_irreducible_float(rs, lambda, q, cap),
        Backend::Exact => {
            let qe = crate::scalar::rational_approx(q);
            let m = build_irreducible_exact(rs, lambda, &qe, cap)?;
            Ok(m.to_float())
        }
    }
}

impl UqModule<BigRational> {
    /// Same module with entries rounded to `f64`.
    pub fn to_float(&self) -> UqModule<f64> {
        let conv = |m: &SparseMat<BigRational>| m.map(|x| Field::to_f64(x));
        UqModule::from_parts(
            self.rs.clone(),
            Field::to_f64(&self.q),
            self.kind.clone(),
            self.weights.clone(),
            self.labels.clone(),
            self.e.iter().map(conv).collect(),
            self.f.iter().map(conv).collect(),
            conv(&self.gram),
            false,
        )
        .expect("valid parts")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::TypeLetter;

    #[test]
    fn a1_spin_half() {
        let rs = Arc::new(RootSystem::new(TypeLetter::A, 1).unwrap());
        let m = build_irreducible_float(&rs, &Weight::from_ints(&[1]), 0.5, 100).unwrap();
        assert_eq!(m.dim(), 2);
        assert!((m.f(0).get(1, 0) - 1.0).abs() < 1e-14);
        assert!((m.e(0).get(0, 1) - 1.0).abs() < 1e-14);
        assert!(m.check_relations().max() < 1e-12);
    }

    #[test]
    fn exact_and_float_agree_on_dims() {
        let rs = Arc::new(RootSystem::new(TypeLetter::B, 2).unwrap());
        let q = BigRational::from_ratio(1, 2);
        for lam in [[1, 0], [0, 1], [1, 1], [0, 2]] {
            let w = Weight::from_ints(&lam);
            let ex = build_irreducible_exact(&rs, &w, &q, 500).unwrap();
            let fl = build_irreducible_float(&rs, &w, 0.5, 500).unwrap();
            assert_eq!(ex.dim(), fl.dim());
            assert_eq!(ex.check_relations().max(), 0.0, "{lam:?}");
            assert!(fl.check_relations().max() < 1e-9, "{lam:?}");
        }
    }
}
