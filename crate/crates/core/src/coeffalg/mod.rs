//! The Hopf *-algebra `C_q[U]` of matrix coefficients.
//!
//! An element is a finite combination of products of matrix coefficients
//! `C^M_{b;c}(X) = (X e_c, e_b)` of orthonormal float modules. A product of
//! coefficients is kept as a tensor coefficient and never re-expanded.
//! Modules live in a [`FunctionAlgebra`] registry and are referred to by id.
//!
//! Equality is decided exactly (up to floating point) by a separating frame:
//! see [`FunctionAlgebra::evaluation_vectors`].

mod frame;
pub mod relations;

pub use frame::{SpanFit, DEFAULT_FRAME_CAP};

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};
use crate::uqmod::{build_irreducible_float, dual_module, FloatModule, Generator, DEFAULT_DIM_CAP};
use num_complex::Complex64;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

pub type C64 = Complex64;
pub type ModuleId = usize;

/// One matrix coefficient `C^M_{bra;ket}` with basis indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub module: ModuleId,
    pub bra: usize,
    pub ket: usize,
}

pub type Monomial = Vec<Factor>;

/// Finite linear combination of products of matrix coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, C64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    /// The unit, i.e. the counit functional on `U_q(g)`.
    pub fn one() -> Self {
        Self::monomial(Vec::new(), C64::new(1.0, 0.0))
    }

    pub fn monomial(m: Monomial, c: C64) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn coefficient(f: Factor) -> Self {
        Self::monomial(vec![f], C64::new(1.0, 0.0))
    }

    pub fn add_term(&mut self, m: Monomial, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry(m).or_insert(C64::new(0.0, 0.0));
        *e += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest product length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: C64) -> Self {
        AlgebraElement { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    /// Drop coefficients with modulus below `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        AlgebraElement {
            terms: self.terms.iter().filter(|(_, v)| v.norm() > tol).map(|(m, v)| (m.clone(), *v)).collect(),
        }
    }

    pub fn max_coefficient(&self) -> f64 {
        self.terms.values().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale_re(-1.0)
    }
}

/// Product: `C^M_{v;w} C^N_{v';w'} = C^{M (x) N}_{v (x) v'; w (x) w'}`.
impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            if m.is_empty() {
                write!(f, "·1")?;
            }
            for x in m {
                write!(f, "·C[{}]({};{})", x.module, x.bra, x.ket)?;
            }
        }
        Ok(())
    }
}

/// `b_{-eta} K^alpha a_zeta`: an F-word, a torus part and an E-word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PbwMonomial {
    pub f_word: Vec<usize>,
    pub k_exponents: Vec<i64>,
    pub e_word: Vec<usize>,
}

impl PbwMonomial {
    pub fn identity() -> Self {
        PbwMonomial::default()
    }

    /// Generator word `F... K... E...` (applied right to left).
    pub fn to_word(&self) -> Vec<Generator> {
        let mut w: Vec<Generator> = self.f_word.iter().map(|&i| Generator::F(i)).collect();
        for (i, &k) in self.k_exponents.iter().enumerate() {
            let g = if k >= 0 { Generator::K(i) } else { Generator::KInv(i) };
            for _ in 0..k.unsigned_abs() {
                w.push(g);
            }
        }
        w.extend(self.e_word.iter().map(|&i| Generator::E(i)));
        w
    }
}

/// `S(g)^*` as a scalar times a generator:
/// `S(E_i)^* = -q_i^{-1} F_i`, `S(F_i)^* = -q_i E_i`, `S(K_i)^* = K_i^{-1}`.
pub fn antipode_star(g: Generator, q_i: f64) -> (f64, Generator) {
    match g {
        Generator::E(i) => (-1.0 / q_i, Generator::F(i)),
        Generator::F(i) => (-q_i, Generator::E(i)),
        Generator::K(i) => (1.0, Generator::KInv(i)),
        Generator::KInv(i) => (1.0, Generator::K(i)),
    }
}

/// `Delta(g_1 ... g_k)` as a sum of pure tensors of words (all coefficients 1).
pub fn coproduct_word(word: &[Generator]) -> Vec<(Vec<Generator>, Vec<Generator>)> {
    let mut acc: Vec<(Vec<Generator>, Vec<Generator>)> = vec![(Vec::new(), Vec::new())];
    for &g in word {
        let parts: Vec<(Option<Generator>, Option<Generator>)> = match g {
            Generator::E(i) => vec![(Some(g), None), (Some(Generator::K(i)), Some(g))],
            Generator::F(i) => vec![(Some(g), Some(Generator::KInv(i))), (None, Some(g))],
            _ => vec![(Some(g), Some(g))],
        };
        let mut next = Vec::with_capacity(acc.len() * parts.len());
        for (a, b) in &acc {
            for (x, y) in &parts {
                let (mut a, mut b) = (a.clone(), b.clone());
                a.extend(x.iter());
                b.extend(y.iter());
                next.push((a, b));
            }
        }
        acc = next;
    }
    acc
}

pub(crate) struct Entry {
    pub module: Arc<FloatModule>,
    pub weights: Vec<Vec<i64>>,
    /// `(mu_a, rho)` per basis vector
    pub rho_pair: Vec<f64>,
    pub dual: Option<ModuleId>,
}

#[derive(Default)]
struct Registry {
    entries: Vec<Arc<Entry>>,
    irreps: HashMap<Weight, ModuleId>,
}

/// Registry of modules and the operations of `C_q[U]` over them.
pub struct FunctionAlgebra {
    rs: Arc<RootSystem>,
    q: f64,
    cap: usize,
    frame_cap: usize,
    reg: RwLock<Registry>,
}

/// Sparse vector on a tensor product, keyed by the multi-index.
pub type TensorVec = HashMap<Vec<usize>, f64>;

impl FunctionAlgebra {
    pub fn new(rs: Arc<RootSystem>, q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidInput(format!("q = {q} is outside (0, 1)")));
        }
        Ok(FunctionAlgebra { rs, q, cap: DEFAULT_DIM_CAP, frame_cap: DEFAULT_FRAME_CAP, reg: RwLock::new(Registry::default()) })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_frame_cap(mut self, cap: usize) -> Self {
        self.frame_cap = cap;
        self
    }

    pub fn frame_cap(&self) -> usize {
        self.frame_cap
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub(crate) fn entry(&self, id: ModuleId) -> Arc<Entry> {
        self.reg.read().expect("registry lock").entries[id].clone()
    }

    pub fn module(&self, id: ModuleId) -> Arc<FloatModule> {
        self.entry(id).module.clone()
    }

    pub fn module_count(&self) -> usize {
        self.reg.read().expect("registry lock").entries.len()
    }

    /// Register an orthonormal module; returns its id.
    pub fn register(&self, m: FloatModule) -> Result<ModuleId> {
        if !m.is_orthonormal() {
            return Err(Error::InvalidInput("coefficient algebra needs orthonormal modules".into()));
        }
        Ok(self.push(m, None))
    }

    fn push(&self, m: FloatModule, dual: Option<ModuleId>) -> ModuleId {
        let rs = m.root_system().clone();
        let rho = rs.rho().clone();
        let weights: Vec<Vec<i64>> = m.weights().iter().map(|w| w.to_ints().expect("integral")).collect();
        let rho_pair = m.weights().iter().map(|w| rs.inner_f64(w, &rho)).collect();
        let entry = Entry { module: Arc::new(m), weights, rho_pair, dual };
        let mut reg = self.reg.write().expect("registry lock");
        reg.entries.push(Arc::new(entry));
        reg.entries.len() - 1
    }

    /// Id of `V(lambda)`, building it on first use.
    pub fn irreducible(&self, lambda: &Weight) -> Result<ModuleId> {
        if let Some(&id) = self.reg.read().expect("registry lock").irreps.get(lambda) {
            return Ok(id);
        }
        let m = build_irreducible_float(&self.rs, lambda, self.q, self.cap)?;
        let mut reg = self.reg.write().expect("registry lock");
        if let Some(&id) = reg.irreps.get(lambda) {
            return Ok(id);
        }
        drop(reg);
        let id = self.push(m, None);
        reg = self.reg.write().expect("registry lock");
        reg.irreps.insert(lambda.clone(), id);
        Ok(id)
    }

    /// Id of the contragredient module; `dual(dual(M)) = M`.
    pub fn dual(&self, id: ModuleId) -> Result<ModuleId> {
        if let Some(d) = self.entry(id).dual {
            return Ok(d);
        }
        let dm = dual_module(&self.module(id))?;
        let did = self.push(dm, Some(id));
        let mut reg = self.reg.write().expect("registry lock");
        let old = reg.entries[id].clone();
        reg.entries[id] = Arc::new(Entry {
            module: old.module.clone(),
            weights: old.weights.clone(),
            rho_pair: old.rho_pair.clone(),
            dual: Some(did),
        });
        Ok(did)
    }

    /// Basis indices of weight `w` in module `id`.
    pub fn vectors_of_weight(&self, id: ModuleId, w: &Weight) -> Vec<usize> {
        self.module(id).weight_space(w).to_vec()
    }

    /// Index of the highest weight vector (modules with a highest weight).
    pub fn highest_index(&self, id: ModuleId) -> Result<usize> {
        let m = self.module(id);
        let hw = m
            .highest_weight()
            .ok_or_else(|| Error::InvalidInput("module has no distinguished highest weight".into()))?;
        m.weight_space(hw)
            .first()
            .copied()
            .ok_or_else(|| Error::Internal("highest weight space empty".into()))
    }

    /// `C^M_{bra;ket}` for basis indices.
    pub fn coeff_in(&self, id: ModuleId, bra: usize, ket: usize) -> Result<AlgebraElement> {
        let d = self.module(id).dim();
        if bra >= d || ket >= d {
            return Err(Error::InvalidInput(format!("basis index out of range for module {id}")));
        }
        Ok(AlgebraElement::coefficient(Factor { module: id, bra, ket }))
    }

    /// `C^lambda_{bra;ket}` in `V(lambda)`.
    pub fn coeff(&self, lambda: &Weight, bra: usize, ket: usize) -> Result<AlgebraElement> {
        let id = self.irreducible(lambda)?;
        self.coeff_in(id, bra, ket)
    }

    /// `C^M_{v;w}` for coordinate vectors: `sum conj(v_a) w_c C_{a;c}`.
    pub fn coeff_vectors(&self, id: ModuleId, v: &[C64], w: &[C64]) -> Result<AlgebraElement> {
        let d = self.module(id).dim();
        if v.len() != d || w.len() != d {
            return Err(Error::InvalidInput("vector length differs from module dimension".into()));
        }
        let mut out = AlgebraElement::zero();
        for (a, va) in v.iter().enumerate() {
            if va.norm() == 0.0 {
                continue;
            }
            for (c, wc) in w.iter().enumerate() {
                if wc.norm() == 0.0 {
                    continue;
                }
                out.add_term(vec![Factor { module: id, bra: a, ket: c }], va.conj() * wc);
            }
        }
        Ok(out)
    }

    /// Conjugate-linear anti-automorphism `phi^*(X) = conj(phi(S(X)^*))`,
    /// via `(C^M_{a;c})^* = q^{(mu_a - mu_c, rho)} C^{M*}_{a;c}`.
    pub fn star(&self, phi: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (m, c) in phi.terms() {
            let mut coef = c.conj();
            let mut mono = Vec::with_capacity(m.len());
            for f in m.iter().rev() {
                let e = self.entry(f.module);
                let d = self.dual(f.module)?;
                coef *= self.q.powf(e.rho_pair[f.bra] - e.rho_pair[f.ket]);
                mono.push(Factor { module: d, bra: f.bra, ket: f.ket });
            }
            out.add_term(mono, coef);
        }
        Ok(out)
    }

    /// Apply a generator of `U_q(g)` through the iterated coproduct to a
    /// sparse tensor vector over `mods`. With `transpose` the transposed
    /// operator is applied instead.
    pub fn apply_tensor(&self, mods: &[ModuleId], g: Generator, v: &TensorVec, transpose: bool) -> TensorVec {
        let entries: Vec<Arc<Entry>> = mods.iter().map(|&m| self.entry(m)).collect();
        let n = mods.len();
        let mut out: TensorVec = HashMap::new();
        let kpow = |e: &Entry, a: usize, i: usize, s: f64| -> f64 { self.q.powf(s * (e.module.kexp(a, i) as f64)) };
        for (idx, &val) in v {
            if val == 0.0 {
                continue;
            }
            match g {
                Generator::K(i) | Generator::KInv(i) => {
                    let s = if matches!(g, Generator::K(_)) { 1.0 } else { -1.0 };
                    let f: f64 = (0..n).map(|k| kpow(&entries[k], idx[k], i, s)).product();
                    *out.entry(idx.clone()).or_insert(0.0) += val * f;
                }
                Generator::E(i) | Generator::F(i) => {
                    let is_e = matches!(g, Generator::E(_));
                    for k in 0..n {
                        // K (x) ... (x) K (x) E (x) 1 ... or 1 ... (x) F (x) K^{-1} ...
                        let mut pre = 1.0;
                        if is_e {
                            for t in 0..k {
                                pre *= kpow(&entries[t], idx[t], i, 1.0);
                            }
                        } else {
                            for t in k + 1..n {
                                pre *= kpow(&entries[t], idx[t], i, -1.0);
                            }
                        }
                        let mat = if is_e { entries[k].module.e(i) } else { entries[k].module.f(i) };
                        if transpose {
                            // row idx[k] of mat
                            for (c, col) in mat.cols.iter().enumerate() {
                                for (r, x) in col {
                                    if *r == idx[k] {
                                        let mut j = idx.clone();
                                        j[k] = c;
                                        *out.entry(j).or_insert(0.0) += val * pre * x;
                                    }
                                }
                            }
                        } else {
                            for (r, x) in &mat.cols[idx[k]] {
                                let mut j = idx.clone();
                                j[k] = *r;
                                *out.entry(j).or_insert(0.0) += val * pre * x;
                            }
                        }
                    }
                }
            }
        }
        out.retain(|_, x| *x != 0.0);
        out
    }

    /// `phi(g_1 ... g_k)`.
    pub fn evaluate_word(&self, phi: &AlgebraElement, word: &[Generator]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (m, c) in phi.terms() {
            let mods: Vec<ModuleId> = m.iter().map(|f| f.module).collect();
            let ket: Vec<usize> = m.iter().map(|f| f.ket).collect();
            let bra: Vec<usize> = m.iter().map(|f| f.bra).collect();
            let mut v: TensorVec = HashMap::from([(ket, 1.0)]);
            for g in word.iter().rev() {
                v = self.apply_tensor(&mods, *g, &v, false);
            }
            acc += c * v.get(&bra).copied().unwrap_or(0.0);
        }
        acc
    }

    pub fn evaluate(&self, phi: &AlgebraElement, x: &PbwMonomial) -> C64 {
        self.evaluate_word(phi, &x.to_word())
    }

    /// `phi(1)`.
    pub fn counit(&self, phi: &AlgebraElement) -> C64 {
        self.evaluate_word(phi, &[])
    }

    /// `(X.phi)(Y) = phi(Y X)`: acts on kets.
    pub fn left_act(&self, g: Generator, phi: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in phi.terms() {
            let mods: Vec<ModuleId> = m.iter().map(|f| f.module).collect();
            let ket: Vec<usize> = m.iter().map(|f| f.ket).collect();
            let v = self.apply_tensor(&mods, g, &HashMap::from([(ket, 1.0)]), false);
            for (k, x) in v {
                let mono = m.iter().zip(&k).map(|(f, &kk)| Factor { ket: kk, ..*f }).collect();
                out.add_term(mono, c * x);
            }
        }
        out
    }

    /// `(phi.X)(Y) = phi(X Y)`: acts on bras by `pi(X^*)`.
    pub fn right_act(&self, phi: &AlgebraElement, g: Generator) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in phi.terms() {
            let mods: Vec<ModuleId> = m.iter().map(|f| f.module).collect();
            let bra: Vec<usize> = m.iter().map(|f| f.bra).collect();
            let v = self.apply_tensor(&mods, g, &HashMap::from([(bra, 1.0)]), true);
            for (b, x) in v {
                let mono = m.iter().zip(&b).map(|(f, &bb)| Factor { bra: bb, ..*f }).collect();
                out.add_term(mono, c * x);
            }
        }
        out
    }

    /// Weight of the tensor basis vector with the given multi-index.
    pub(crate) fn tensor_weight(&self, mods: &[ModuleId], idx: &[usize]) -> Vec<i64> {
        let mut w = vec![0i64; self.rs.rank()];
        for (m, &a) in mods.iter().zip(idx) {
            let e = self.entry(*m);
            for (x, y) in w.iter_mut().zip(&e.weights[a]) {
                *x += y;
            }
        }
        w
    }

    /// `(bra weight, ket weight)` of each factor's coefficient, summed.
    pub fn bidegree(&self, m: &Monomial) -> (Vec<i64>, Vec<i64>) {
        let mods: Vec<ModuleId> = m.iter().map(|f| f.module).collect();
        let bra: Vec<usize> = m.iter().map(|f| f.bra).collect();
        let ket: Vec<usize> = m.iter().map(|f| f.ket).collect();
        (self.tensor_weight(&mods, &bra), self.tensor_weight(&mods, &ket))
    }
}
