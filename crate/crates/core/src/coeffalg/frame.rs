//! Separating frame for functionals on `U_q(g)`.
//!
//! Group the terms of `phi` into copies keyed by (module list, bra index).
//! With `B` the direct sum of the tensor modules of all copies, `u` the sum of
//! the bra basis vectors and `W = sum a_t e_{copy, ket}`, orthonormality gives
//! `phi(X) = (W, pi_B(X^*) u)`. So `phi` vanishes exactly when `W` is
//! orthogonal to the cyclic submodule `Z = U_q(g) u`. Coordinates of `W`
//! against an orthonormal basis of `Z` are therefore a faithful linear image
//! of the functional.

use super::{AlgebraElement, FunctionAlgebra, ModuleId, TensorVec, C64};
use crate::error::{Error, Result};
use crate::uqmod::Generator;
use nalgebra::DMatrix;
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Default cap on `dim Z`.
pub const DEFAULT_FRAME_CAP: usize = 60_000;

const REL_TOL: f64 = 1e-9;
// images of unit vectors that cancel to rounding noise
const ABS_TOL: f64 = 1e-11;

type CopyKey = (Vec<ModuleId>, Vec<usize>);

struct Bucket {
    pos: HashMap<(usize, Vec<usize>), usize>,
    keys: Vec<(usize, Vec<usize>)>,
    basis: Vec<Vec<f64>>,
}

impl Bucket {
    fn new() -> Self {
        Bucket { pos: HashMap::new(), keys: Vec::new(), basis: Vec::new() }
    }

    fn slot(&mut self, k: (usize, Vec<usize>)) -> usize {
        if let Some(&p) = self.pos.get(&k) {
            return p;
        }
        self.keys.push(k.clone());
        self.pos.insert(k, self.keys.len() - 1);
        self.keys.len() - 1
    }

    /// Orthogonalize `v` (two passes) and keep it if it is new.
    fn insert(&mut self, mut v: Vec<f64>) -> Option<usize> {
        v.resize(self.keys.len(), 0.0);
        let n0 = norm(&v);
        if n0 == 0.0 {
            return None;
        }
        for _ in 0..2 {
            for b in &self.basis {
                let d = dot(b, &v);
                if d != 0.0 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= d * y;
                    }
                }
            }
        }
        let n = norm(&v);
        if n <= REL_TOL * n0 || n <= ABS_TOL {
            return None;
        }
        v.iter_mut().for_each(|x| *x /= n);
        self.basis.push(v);
        Some(self.basis.len() - 1)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn cnorm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Outcome of a least-squares membership test.
#[derive(Clone, Debug)]
pub struct SpanFit {
    pub coefficients: Vec<C64>,
    pub residual: f64,
    pub target_norm: f64,
    pub in_span: bool,
}

pub(crate) struct Frame {
    copy_index: HashMap<CopyKey, usize>,
    buckets: BTreeMap<Vec<i64>, Bucket>,
}

impl FunctionAlgebra {
    fn build_frame(&self, elems: &[&AlgebraElement]) -> Result<Frame> {
        let mut copies: Vec<CopyKey> = Vec::new();
        let mut copy_index: HashMap<CopyKey, usize> = HashMap::new();
        for e in elems {
            for (m, _) in e.terms() {
                let key: CopyKey = (m.iter().map(|f| f.module).collect(), m.iter().map(|f| f.bra).collect());
                if !copy_index.contains_key(&key) {
                    copy_index.insert(key.clone(), copies.len());
                    copies.push(key);
                }
            }
        }
        let mut buckets: BTreeMap<Vec<i64>, Bucket> = BTreeMap::new();
        let mut queue: VecDeque<(Vec<i64>, usize)> = VecDeque::new();
        let mut seeds: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (c, (mods, bra)) in copies.iter().enumerate() {
            seeds.entry(self.tensor_weight(mods, bra)).or_default().push(c);
        }
        let mut total = 0usize;
        for (w, cs) in seeds {
            let b = buckets.entry(w.clone()).or_insert_with(Bucket::new);
            let mut v = Vec::new();
            for c in cs {
                let p = b.slot((c, copies[c].1.clone()));
                if v.len() <= p {
                    v.resize(p + 1, 0.0);
                }
                v[p] += 1.0;
            }
            if let Some(k) = b.insert(v) {
                total += 1;
                queue.push_back((w, k));
            }
        }
        let r = self.rs.rank();
        let alpha: Vec<Vec<i64>> = (0..r)
            .map(|i| self.rs.simple_root(i).to_ints().expect("integral root"))
            .collect();
        while let Some((w, k)) = queue.pop_front() {
            let (keys, vec) = {
                let b = &buckets[&w];
                (b.keys.clone(), b.basis[k].clone())
            };
            // split into per-copy tensor vectors
            let mut per_copy: HashMap<usize, TensorVec> = HashMap::new();
            for (p, x) in vec.iter().enumerate() {
                if *x != 0.0 {
                    let (c, idx) = &keys[p];
                    per_copy.entry(*c).or_default().insert(idx.clone(), *x);
                }
            }
            for i in 0..r {
                for (g, sign) in [(Generator::E(i), 1i64), (Generator::F(i), -1i64)] {
                    let tw: Vec<i64> = w.iter().zip(&alpha[i]).map(|(a, b)| a + sign * b).collect();
                    let mut image: Vec<(usize, Vec<usize>, f64)> = Vec::new();
                    for (c, tv) in &per_copy {
                        let out = self.apply_tensor(&copies[*c].0, g, tv, false);
                        image.extend(out.into_iter().map(|(idx, x)| (*c, idx, x)));
                    }
                    if image.is_empty() {
                        continue;
                    }
                    let b = buckets.entry(tw.clone()).or_insert_with(Bucket::new);
                    let mut v = Vec::new();
                    for (c, idx, x) in image {
                        let p = b.slot((c, idx));
                        if v.len() <= p {
                            v.resize(p + 1, 0.0);
                        }
                        v[p] += x;
                    }
                    if let Some(nk) = b.insert(v) {
                        total += 1;
                        if total > self.frame_cap() {
                            return Err(Error::Indeterminate(format!(
                                "separating frame exceeds {} vectors",
                                self.frame_cap()
                            )));
                        }
                        queue.push_back((tw, nk));
                    }
                }
            }
        }
        Ok(Frame { copy_index, buckets })
    }

    fn frame_coords(&self, frame: &Frame, phi: &AlgebraElement) -> Vec<C64> {
        let mut by_weight: HashMap<Vec<i64>, Vec<(usize, Vec<usize>, C64)>> = HashMap::new();
        for (m, a) in phi.terms() {
            let mods: Vec<ModuleId> = m.iter().map(|f| f.module).collect();
            let ket: Vec<usize> = m.iter().map(|f| f.ket).collect();
            let w = self.tensor_weight(&mods, &ket);
            let bra: Vec<usize> = m.iter().map(|f| f.bra).collect();
            let c = frame.copy_index[&(mods, bra)];
            by_weight.entry(w).or_default().push((c, ket, *a));
        }
        let mut out = Vec::new();
        for (w, b) in &frame.buckets {
            let mut wv: HashMap<usize, C64> = HashMap::new();
            for (c, ket, a) in by_weight.remove(w).unwrap_or_default() {
                if let Some(&p) = b.pos.get(&(c, ket)) {
                    *wv.entry(p).or_insert(C64::new(0.0, 0.0)) += a;
                }
            }
            for z in &b.basis {
                let mut s = C64::new(0.0, 0.0);
                for (&p, a) in &wv {
                    if p < z.len() {
                        s += a * z[p];
                    }
                }
                out.push(s);
            }
        }
        out
    }

    /// Faithful linear coordinates of each element in one shared frame:
    /// a linear combination of the inputs vanishes as a functional on
    /// `U_q(g)` exactly when the same combination of these vectors does.
    pub fn evaluation_vectors(&self, elems: &[&AlgebraElement]) -> Result<Vec<Vec<C64>>> {
        let frame = self.build_frame(elems)?;
        Ok(elems.iter().map(|e| self.frame_coords(&frame, e)).collect())
    }

    /// Equality as functionals on `U_q(g)`. `Err(Indeterminate)` if the frame
    /// exceeds its cap.
    pub fn equals(&self, phi: &AlgebraElement, psi: &AlgebraElement) -> Result<bool> {
        let v = self.evaluation_vectors(&[phi, psi])?;
        let diff: Vec<C64> = v[0].iter().zip(&v[1]).map(|(a, b)| a - b).collect();
        let scale = cnorm(&v[0]).max(cnorm(&v[1])).max(1.0);
        Ok(cnorm(&diff) <= 1e-8 * scale)
    }

    /// Norm of `phi` as a functional, in frame coordinates.
    pub fn frame_norm(&self, phi: &AlgebraElement) -> Result<f64> {
        Ok(cnorm(&self.evaluation_vectors(&[phi])?[0]))
    }

    pub fn is_zero(&self, phi: &AlgebraElement) -> Result<bool> {
        self.equals(phi, &AlgebraElement::zero())
    }

    /// Least-squares membership of `target` in the span of `candidates`.
    /// Accepted when the residual is at most `1e-9 max(1, |target|)`.
    pub fn in_span(&self, target: &AlgebraElement, candidates: &[AlgebraElement]) -> Result<SpanFit> {
        let mut all: Vec<&AlgebraElement> = vec![target];
        all.extend(candidates.iter());
        let v = self.evaluation_vectors(&all)?;
        let b = &v[0];
        let tn = cnorm(b);
        let rows = b.len();
        if candidates.is_empty() || rows == 0 {
            return Ok(SpanFit {
                coefficients: vec![C64::new(0.0, 0.0); candidates.len()],
                residual: tn,
                target_norm: tn,
                in_span: tn <= 1e-9 * tn.max(1.0),
            });
        }
        let a = DMatrix::from_fn(rows, candidates.len(), |r, c| v[c + 1][r]);
        let bv = DMatrix::from_fn(rows, 1, |r, _| b[r]);
        let svd = a.clone().svd(true, true);
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let x = svd
            .solve(&bv, 1e-12 * smax.max(1e-300))
            .map_err(|e| Error::Internal(format!("least squares failed: {e}")))?;
        let res = (&a * &x - &bv).norm();
        Ok(SpanFit {
            coefficients: x.iter().cloned().collect(),
            residual: res,
            target_norm: tn,
            in_span: res <= 1e-9 * tn.max(1.0),
        })
    }
}
