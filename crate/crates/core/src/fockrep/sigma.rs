//! `pi_sigma = (pi_{i_1} (x) ... (x) pi_{i_l}) o Delta^{(l)}` on truncated
//! Fock spaces, the characters `tau_t` and the operators `L_{sigma lambda; lambda}`.
//!
//! `pi_i = pi_{q_i} o phi_i^*` is computed by restricting a module to the
//! `U_{q_i}(sl_2)` of node `i` and expanding each restricted coefficient in
//! the monomials `t11^x t12^y t21^z`, `t22^x t12^y t21^z` of a helper
//! `C_{q_i}[SU(2)]`. The fit is exact linear algebra in a separating frame.

use super::{pi_su2, TGen, TorusPoint, TruncatedOperator, C64};
use crate::coeffalg::{AlgebraElement, FunctionAlgebra, ModuleId};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, TypeLetter, Weight, Q};
use crate::scalar::SparseMat;
use crate::uqmod::{FloatModule, ModuleKind, UqModule};
use crate::weyl::WeylWord;
use nalgebra::DMatrix;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// `phi o phi_i` as a combination of words in the `t_ij`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Su2Expansion {
    pub terms: Vec<(Vec<TGen>, C64)>,
}

impl Su2Expansion {
    fn product(&self, o: &Su2Expansion) -> Su2Expansion {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                terms.push((w, c1 * c2));
            }
        }
        Su2Expansion { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Restriction of one module to one node.
struct NodeData {
    expansions: HashMap<(usize, usize), Su2Expansion>,
    ops: HashMap<(usize, usize), TruncatedOperator>,
}

type Row = Arc<Vec<Option<TruncatedOperator>>>;

/// Sorted eigenvalues of an operator on its complete joint eigenspaces of
/// the grading `beta(j) = sum_k j_k gamma_k`.
#[derive(Clone, Debug)]
pub struct GradedSpectra {
    /// grade (simple-root coordinates) to ascending eigenvalues
    pub blocks: BTreeMap<Vec<i64>, Vec<f64>>,
    /// largest entry connecting different grades
    pub off_grade: f64,
    pub window: usize,
}

/// Representations `pi_sigma` truncated to `N` levels per factor.
pub struct FockSpace {
    alg: Arc<FunctionAlgebra>,
    n: usize,
    a1: Arc<RootSystem>,
    helpers: Mutex<BTreeMap<i64, Arc<FunctionAlgebra>>>,
    nodes: Mutex<HashMap<(ModuleId, usize), Arc<NodeData>>>,
    rows: Mutex<HashMap<(ModuleId, Vec<usize>, usize), Row>>,
}

const FIT_TOL: f64 = 1e-9;
const DROP_TOL: f64 = 1e-11;

impl FockSpace {
    pub fn new(alg: Arc<FunctionAlgebra>, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("truncation needs at least 2 levels".into()));
        }
        Ok(FockSpace {
            alg,
            n,
            a1: Arc::new(RootSystem::new(TypeLetter::A, 1)?),
            helpers: Mutex::new(BTreeMap::new()),
            nodes: Mutex::new(HashMap::new()),
            rows: Mutex::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &Arc<FunctionAlgebra> {
        &self.alg
    }

    pub fn levels(&self) -> usize {
        self.n
    }

    fn rs(&self) -> &Arc<RootSystem> {
        self.alg.root_system()
    }

    fn q_node(&self, i: usize) -> f64 {
        self.alg.q().powi(self.rs().symmetrizer()[i] as i32)
    }

    /// `C_{q_i}[SU(2)]` with its spin-1/2 module registered.
    fn helper(&self, d: i64) -> Result<Arc<FunctionAlgebra>> {
        let mut h = self.helpers.lock().expect("helper lock");
        if let Some(a) = h.get(&d) {
            return Ok(a.clone());
        }
        let a = Arc::new(FunctionAlgebra::new(self.a1.clone(), self.alg.q().powi(d as i32))?);
        a.irreducible(&Weight::from_ints(&[1]))?;
        h.insert(d, a.clone());
        Ok(a)
    }

    fn node_data(&self, id: ModuleId, i: usize) -> Result<Arc<NodeData>> {
        if i >= self.rs().rank() {
            return Err(Error::InvalidInput(format!("node {} out of range", i + 1)));
        }
        if let Some(d) = self.nodes.lock().expect("node lock").get(&(id, i)) {
            return Ok(d.clone());
        }
        let data = Arc::new(self.fit_node(id, i)?);
        self.nodes.lock().expect("node lock").insert((id, i), data.clone());
        Ok(data)
    }

    fn fit_node(&self, id: ModuleId, i: usize) -> Result<NodeData> {
        let m = self.alg.module(id);
        let d = self.rs().symmetrizer()[i];
        let helper = self.helper(d)?;
        let spin = helper.irreducible(&Weight::from_ints(&[1]))?;
        let mvals: Vec<i64> = m.weights().iter().map(|w| w.int(i)).collect();
        let restricted = self.restrict(&m, i, &mvals)?;
        let rid = helper.register(restricted)?;
        let n_max = mvals.iter().map(|x| x.abs()).max().unwrap_or(0);
        let alpha = self.rs().simple_root(i).to_ints().expect("integral root");
        let ints: Vec<Vec<i64>> = m.weights().iter().map(|w| w.to_ints().expect("integral")).collect();
        // pairs in one alpha_i-string, grouped by (m_bra, m_ket)
        let mut groups: BTreeMap<(i64, i64), Vec<(usize, usize)>> = BTreeMap::new();
        for a in 0..m.dim() {
            for c in 0..m.dim() {
                let diff: Vec<i64> = ints[a].iter().zip(&ints[c]).map(|(x, y)| x - y).collect();
                if diff[i] % 2 != 0 {
                    continue;
                }
                let k = diff[i] / 2;
                if diff.iter().zip(&alpha).all(|(x, y)| *x == k * y) {
                    groups.entry((mvals[a], mvals[c])).or_default().push((a, c));
                }
            }
        }
        let qi = self.q_node(i);
        let mut expansions = HashMap::new();
        let mut ops = HashMap::new();
        for ((mb, mk), pairs) in groups {
            let words = monomial_words(mb, mk, n_max);
            let cands: Vec<AlgebraElement> = words.iter().map(|w| word_element(spin, w)).collect();
            let targets: Vec<AlgebraElement> =
                pairs.iter().map(|&(a, c)| helper.coeff_in(rid, a, c)).collect::<Result<_>>()?;
            let mut all: Vec<&AlgebraElement> = targets.iter().collect();
            all.extend(cands.iter());
            let v = helper.evaluation_vectors(&all)?;
            let rows = v[0].len();
            let nt = targets.len();
            let fits = if cands.is_empty() || rows == 0 {
                vec![Vec::new(); nt]
            } else {
                let amat = DMatrix::from_fn(rows, cands.len(), |r, c| v[nt + c][r]);
                let bmat = DMatrix::from_fn(rows, nt, |r, c| v[c][r]);
                let svd = amat.clone().svd(true, true);
                let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
                let x = svd
                    .solve(&bmat, 1e-12 * smax.max(1e-300))
                    .map_err(|e| Error::Internal(format!("least squares failed: {e}")))?;
                let res = &amat * &x - &bmat;
                for t in 0..nt {
                    let bn = bmat.column(t).norm();
                    let rn = res.column(t).norm();
                    if rn > FIT_TOL * bn.max(1.0) {
                        return Err(Error::Indeterminate(format!(
                            "restriction to node {} not in the monomial span (residual {rn:.3e})",
                            i + 1
                        )));
                    }
                }
                (0..nt).map(|t| x.column(t).iter().cloned().collect::<Vec<C64>>()).collect()
            };
            for (t, &(a, c)) in pairs.iter().enumerate() {
                let coefs = &fits[t];
                let scale = coefs.iter().map(|z| z.norm()).fold(1.0, f64::max);
                let terms: Vec<(Vec<TGen>, C64)> = words
                    .iter()
                    .zip(coefs)
                    .filter(|(_, z)| z.norm() > DROP_TOL * scale)
                    .map(|(w, z)| (w.clone(), *z))
                    .collect();
                if terms.is_empty() {
                    continue;
                }
                let exp = Su2Expansion { terms };
                ops.insert((a, c), expansion_operator(&exp, self.n, qi)?);
                expansions.insert((a, c), exp);
            }
        }
        Ok(NodeData { expansions, ops })
    }

    /// The module viewed as a `U_{q_i}(sl_2)`-module through node `i`.
    fn restrict(&self, m: &FloatModule, i: usize, mvals: &[i64]) -> Result<FloatModule> {
        let weights = mvals.iter().map(|&x| Weight::from_ints(&[x])).collect();
        UqModule::from_parts(
            self.a1.clone(),
            self.q_node(i),
            ModuleKind::Custom(format!("restriction to node {}", i + 1)),
            weights,
            Vec::new(),
            vec![m.e(i).clone()],
            vec![m.f(i).clone()],
            SparseMat::identity(m.dim()),
            true,
        )
    }

    /// Expansion of `phi o phi_i` in words of the `t_ij`.
    pub fn project_su2(&self, phi: &AlgebraElement, i: usize) -> Result<Su2Expansion> {
        let mut out = Su2Expansion::default();
        for (mono, c) in phi.terms() {
            let mut acc = Su2Expansion { terms: vec![(Vec::new(), *c)] };
            for f in mono {
                let nd = self.node_data(f.module, i)?;
                match nd.expansions.get(&(f.bra, f.ket)) {
                    Some(e) => acc = acc.product(e),
                    None => {
                        acc = Su2Expansion::default();
                        break;
                    }
                }
            }
            out.terms.extend(acc.terms);
        }
        Ok(out)
    }

    /// `pi_i(phi)` on one factor.
    pub fn pi_node(&self, phi: &AlgebraElement, i: usize) -> Result<TruncatedOperator> {
        self.pi_word(&[i], phi)
    }

    fn check_reduced(&self, letters: &[usize]) -> Result<()> {
        let w = WeylWord::from_letters(self.rs(), letters)?;
        if w.length() != letters.len() {
            return Err(Error::InvalidInput(format!("word {letters:?} is not reduced")));
        }
        Ok(())
    }

    /// Row `c -> pi_word(C_{a;c})` of a module.
    fn row(&self, id: ModuleId, letters: &[usize], a: usize) -> Result<Row> {
        let key = (id, letters.to_vec(), a);
        if let Some(r) = self.rows.lock().expect("row lock").get(&key) {
            return Ok(r.clone());
        }
        let d = self.alg.module(id).dim();
        let mut cur: Vec<Option<TruncatedOperator>> = vec![None; d];
        cur[a] = Some(TruncatedOperator::identity(0, self.n)?);
        for &i in letters {
            let nd = self.node_data(id, i)?;
            let mut next: Vec<Option<TruncatedOperator>> = vec![None; d];
            for (up, t) in cur.iter().enumerate() {
                let Some(t) = t else { continue };
                for (u, slot) in next.iter_mut().enumerate() {
                    if let Some(p) = nd.ops.get(&(up, u)) {
                        let k = t.kron(p)?;
                        *slot = Some(match slot.take() {
                            Some(s) => s.add(&k)?,
                            None => k,
                        });
                    }
                }
            }
            cur = next;
        }
        let r = Arc::new(cur);
        self.rows.lock().expect("row lock").insert(key, r.clone());
        Ok(r)
    }

    fn assemble(&self, letters: &[usize], phi: &AlgebraElement, t: Option<&TorusPoint>) -> Result<TruncatedOperator> {
        self.check_reduced(letters)?;
        let l = letters.len();
        let mut out = TruncatedOperator::zero(l, self.n)?;
        for (mono, c) in phi.terms() {
            let mut acc = TruncatedOperator::scalar(l, self.n, *c)?;
            let mut zero = false;
            for f in mono {
                let row = self.row(f.module, letters, f.bra)?;
                match &row[f.ket] {
                    Some(op) => {
                        acc = acc.mul(op)?;
                        if let Some(t) = t {
                            let w = &self.alg_weight(f.module, f.ket);
                            acc = acc.scale(t.pow(w));
                        }
                    }
                    None => {
                        zero = true;
                        break;
                    }
                }
            }
            if !zero {
                out = out.add(&acc)?;
            }
        }
        Ok(out)
    }

    fn alg_weight(&self, id: ModuleId, a: usize) -> Vec<i64> {
        self.alg.module(id).weight(a).to_ints().expect("integral")
    }

    /// `pi` for an explicit reduced word (0-based letters).
    pub fn pi_word(&self, letters: &[usize], phi: &AlgebraElement) -> Result<TruncatedOperator> {
        self.assemble(letters, phi, None)
    }

    pub fn pi_sigma(&self, sigma: &WeylWord, phi: &AlgebraElement) -> Result<TruncatedOperator> {
        self.pi_word(sigma.letters(), phi)
    }

    /// `(pi_word (x) tau_t)(phi)`.
    pub fn pi_word_tau(&self, letters: &[usize], phi: &AlgebraElement, t: &TorusPoint) -> Result<TruncatedOperator> {
        self.assemble(letters, phi, Some(t))
    }

    /// The character `tau_t(C_{a;c}) = delta_{ac} t^{mu_a}`.
    pub fn tau(&self, phi: &AlgebraElement, t: &TorusPoint) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (mono, c) in phi.terms() {
            let mut v = *c;
            for f in mono {
                if f.bra != f.ket {
                    v = C64::new(0.0, 0.0);
                    break;
                }
                v *= t.pow(&self.alg_weight(f.module, f.bra));
            }
            acc += v;
        }
        acc
    }

    /// `C^lambda_{sigma lambda; lambda}`.
    pub fn extreme_coefficient(&self, letters: &[usize], lambda: &Weight) -> Result<AlgebraElement> {
        let w = WeylWord::from_letters(self.rs(), letters)?;
        let id = self.alg.irreducible(lambda)?;
        let top = self.alg.highest_index(id)?;
        let sv = self.alg.vectors_of_weight(id, &w.act(lambda));
        if sv.len() != 1 {
            return Err(Error::Internal("extreme weight space is not one-dimensional".into()));
        }
        self.alg.coeff_in(id, sv[0], top)
    }

    /// `L_{sigma lambda; lambda} = pi_sigma((C_{sigma lambda; lambda})^* C_{sigma lambda; lambda})`.
    pub fn l_operator(&self, letters: &[usize], lambda: &Weight) -> Result<TruncatedOperator> {
        let c = self.extreme_coefficient(letters, lambda)?;
        let a = &self.alg.star(&c)? * &c;
        self.pi_word(letters, &a)
    }

    /// Exponents `(lambda, gamma_k^vee)` of the product formula.
    pub fn facto_exponents(&self, letters: &[usize], lambda: &Weight) -> Result<Vec<Q>> {
        self.check_reduced(letters)?;
        let gammas = gamma_sequence_of(self.rs(), letters)?;
        Ok(gammas.iter().map(|g| self.rs().coroot_pairing(lambda, g)).collect())
    }

    /// Diagonal predicted by the product formula,
    /// `prod_k q_{i_k}^{2 (lambda, gamma_k^vee) j_k}` at each flat index. With
    /// `uniform_q` the base is `q` for every factor.
    pub fn predicted_l_diagonal(&self, letters: &[usize], lambda: &Weight, uniform_q: bool) -> Result<Vec<f64>> {
        let ex = self.facto_exponents(letters, lambda)?;
        let l = letters.len();
        let probe = TruncatedOperator::zero(l, self.n)?;
        let bases: Vec<f64> =
            letters.iter().map(|&i| if uniform_q { self.alg.q() } else { self.q_node(i) }).collect();
        Ok((0..probe.dim())
            .map(|idx| {
                probe
                    .digits(idx)
                    .iter()
                    .enumerate()
                    .map(|(k, &j)| {
                        let e = *ex[k].numer() as f64 / *ex[k].denom() as f64;
                        bases[k].powf(2.0 * e * j as f64)
                    })
                    .product()
            })
            .collect())
    }

    /// Eigenvalue-1 eigenspace of the L operator on its window:
    /// `(dimension, flat indices)`. Requires the operator to be diagonal.
    pub fn h1_eigenspace(&self, letters: &[usize], lambda: &Weight) -> Result<(usize, Vec<usize>)> {
        let l = self.l_operator(letters, lambda)?;
        if !l.is_diagonal(1e-10) {
            return Err(Error::Internal(format!(
                "L operator is not diagonal (off-diagonal {:.3e})",
                l.off_diagonal_max()
            )));
        }
        let idx: Vec<usize> = l
            .window_indices()
            .into_iter()
            .filter(|&i| (l.entry(i, i) - C64::new(1.0, 0.0)).norm() < 1e-10)
            .collect();
        Ok((idx.len(), idx))
    }

    /// Spectra of an operator attached to `letters` on the complete blocks of
    /// the grading by `beta(j) = sum_k j_k gamma_k`, i.e. grades of height
    /// below the window. The Hermitian part of each block is diagonalized.
    pub fn graded_spectra(&self, letters: &[usize], op: &TruncatedOperator) -> Result<GradedSpectra> {
        self.check_reduced(letters)?;
        if op.factors() != letters.len() || op.levels() != self.n {
            return Err(Error::InvalidInput("operator does not match the word".into()));
        }
        let gammas = gamma_sequence_of(self.rs(), letters)?;
        let r = self.rs().rank();
        let grade = |idx: usize| -> Vec<i64> {
            let mut b = vec![0i64; r];
            for (k, &j) in op.digits(idx).iter().enumerate() {
                for (x, g) in b.iter_mut().zip(&gammas[k]) {
                    *x += j as i64 * g;
                }
            }
            b
        };
        let mut off_grade: f64 = 0.0;
        for (row, col, v) in op.entries() {
            if grade(row) != grade(col) {
                off_grade = off_grade.max(v.norm());
            }
        }
        let window = op.window();
        let mut members: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for idx in op.window_indices() {
            let b = grade(idx);
            if (b.iter().sum::<i64>() as usize) < window {
                members.entry(b).or_default().push(idx);
            }
        }
        let mut blocks = BTreeMap::new();
        for (b, idx) in members {
            let m = DMatrix::from_fn(idx.len(), idx.len(), |x, y| {
                (op.entry(idx[x], idx[y]) + op.entry(idx[y], idx[x]).conj()) * 0.5
            });
            let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().cloned().collect();
            ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalue"));
            blocks.insert(b, ev);
        }
        Ok(GradedSpectra { blocks, off_grade, window })
    }
}

/// `gamma_k = s_{i_l} ... s_{i_{k+1}} alpha_{i_k}` for the given letters.
fn gamma_sequence_of(rs: &Arc<RootSystem>, letters: &[usize]) -> Result<Vec<Vec<i64>>> {
    let n = rs.rank();
    (0..letters.len())
        .map(|k| {
            let mut e = vec![0i64; n];
            e[letters[k]] = 1;
            let tail: Vec<usize> = letters[k + 1..].iter().rev().copied().collect();
            Ok(WeylWord::from_letters(rs, &tail)?.act_root(&e))
        })
        .collect()
}

/// Monomials of bidegree `(m_bra, m_ket)` and degree at most `n_max`:
/// `t11^x t12^y t21^z` and `t22^x t12^y t21^z`.
fn monomial_words(mb: i64, mk: i64, n_max: i64) -> Vec<Vec<TGen>> {
    let mut out: Vec<Vec<TGen>> = Vec::new();
    let mut n = mb.abs().max(mk.abs());
    let rep = |g: TGen, k: i64| std::iter::repeat(g).take(k as usize);
    while n <= n_max {
        let s = mb + mk;
        if s >= 0 {
            let (x, y, z) = (s / 2, (n - mk) / 2, (n - mb) / 2);
            out.push(rep(TGen::T11, x).chain(rep(TGen::T12, y)).chain(rep(TGen::T21, z)).collect());
        }
        if s <= 0 {
            let x = -s / 2;
            let (y, z) = ((n - x + (mb - mk) / 2) / 2, (n - x - (mb - mk) / 2) / 2);
            let w: Vec<TGen> = rep(TGen::T22, x).chain(rep(TGen::T12, y)).chain(rep(TGen::T21, z)).collect();
            if !out.contains(&w) {
                out.push(w);
            }
        }
        n += 2;
    }
    out
}

fn word_element(spin: ModuleId, w: &[TGen]) -> AlgebraElement {
    let mono = w
        .iter()
        .map(|g| {
            let (bra, ket) = g.indices();
            crate::coeffalg::Factor { module: spin, bra, ket }
        })
        .collect();
    AlgebraElement::monomial(mono, C64::new(1.0, 0.0))
}

/// `pi_q` of an expansion, exact on all `n` levels.
fn expansion_operator(e: &Su2Expansion, n: usize, q: f64) -> Result<TruncatedOperator> {
    let pad = e.terms.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
    let mut acc = TruncatedOperator::zero(1, n)?;
    let mut shift = 0;
    for (w, c) in &e.terms {
        let op = pi_su2(w, n + pad, q)?.restrict_levels(n)?;
        shift = shift.max(op.shift());
        acc = acc.add(&op.scale(*c))?;
    }
    Ok(acc.with_window(n).with_shift(shift))
}

impl TruncatedOperator {
    fn with_shift(mut self, s: usize) -> Self {
        self.shift = s;
        self
    }
}
