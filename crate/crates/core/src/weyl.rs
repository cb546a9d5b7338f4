//! Weyl groups, reduced words and minimal coset representatives.
//!
//! Node indices are 0-based in the API; `Display` prints 1-based letters
//! (`s1s2`). An element is determined by its integer action on fundamental
//! coordinates, and its canonical word is the lexicographically least
//! reduced word, obtained by repeatedly stripping the smallest left descent.

use crate::error::{invalid, Error, Result};
use crate::rootdata::{RootSystem, Weight, Q};
use num_traits::{Signed, Zero};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub type IntMat = Vec<Vec<i64>>;

/// Default bound on enumerated group orders (the order of `W(E_6)`).
pub const DEFAULT_GROUP_CAP: usize = 51840;

#[derive(Clone)]
pub struct WeylWord {
    rs: Arc<RootSystem>,
    letters: Vec<usize>,
    action: IntMat,
}

impl PartialEq for WeylWord {
    fn eq(&self, o: &Self) -> bool {
        self.action == o.action
    }
}
impl Eq for WeylWord {}

impl Hash for WeylWord {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.action.hash(h)
    }
}

impl fmt::Debug for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for i in &self.letters {
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

fn identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

fn matmul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Matrix of `s_i` on fundamental coordinates: `m'_j = m_j - m_i a_ji`.
pub fn simple_reflection_matrix(rs: &RootSystem, i: usize) -> IntMat {
    let n = rs.rank();
    let a = rs.cartan();
    let mut m = identity(n);
    for j in 0..n {
        m[j][i] -= a[j][i];
    }
    m
}

fn apply_int(m: &IntMat, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Letters `i_1 .. i_k` with `s_{i_k} ... s_{i_1} nu` dominant, choosing the
/// smallest negative coordinate each time. The element `s_{i_1} ... s_{i_k}`
/// is the shortest one carrying the dominant representative to `nu`.
pub fn descent_to_dominant(rs: &RootSystem, nu: &Weight) -> (Vec<usize>, Weight) {
    let a = rs.cartan();
    let n = rs.rank();
    let mut v = nu.0.clone();
    let mut letters = Vec::new();
    while let Some(i) = (0..n).find(|&i| v[i].is_negative()) {
        let c = v[i];
        for j in 0..n {
            v[j] -= c * Q::from_integer(a[j][i]);
        }
        letters.push(i);
    }
    (letters, Weight(v))
}

impl WeylWord {
    pub fn identity(rs: &Arc<RootSystem>) -> Self {
        WeylWord { rs: rs.clone(), letters: vec![], action: identity(rs.rank()) }
    }

    pub fn simple(rs: &Arc<RootSystem>, i: usize) -> Result<Self> {
        Self::from_letters(rs, &[i])
    }

    /// The element `s_{i_1} ... s_{i_k}` in canonical form. Letters need not
    /// form a reduced word.
    pub fn from_letters(rs: &Arc<RootSystem>, letters: &[usize]) -> Result<Self> {
        let n = rs.rank();
        let mut m = identity(n);
        for &i in letters {
            if i >= n {
                return invalid(format!("letter {} out of range for {}", i + 1, rs.label()));
            }
            m = matmul(&m, &simple_reflection_matrix(rs, i));
        }
        Ok(Self::from_action(rs, m))
    }

    /// Alias of [`WeylWord::from_letters`].
    pub fn reduce(rs: &Arc<RootSystem>, letters: &[usize]) -> Result<Self> {
        Self::from_letters(rs, letters)
    }

    /// Element with the given integer action, assumed to lie in `W`.
    pub fn from_action(rs: &Arc<RootSystem>, action: IntMat) -> Self {
        let rho: Vec<i64> = vec![1; rs.rank()];
        let wr = Weight::from_ints(&apply_int(&action, &rho));
        let (letters, _) = descent_to_dominant(rs, &wr);
        WeylWord { rs: rs.clone(), letters, action }
    }

    /// The element `w` of minimal length with `w nu_dom = nu`, where `nu_dom`
    /// is the dominant weight in the orbit of `nu`.
    pub fn minimal_to(rs: &Arc<RootSystem>, nu: &Weight) -> Self {
        let (letters, _) = descent_to_dominant(rs, nu);
        let n = rs.rank();
        let mut m = identity(n);
        for &i in &letters {
            m = matmul(&m, &simple_reflection_matrix(rs, i));
        }
        Self::from_action(rs, m)
    }

    /// Longest element `w_0`.
    pub fn longest(rs: &Arc<RootSystem>) -> Self {
        Self::minimal_to(rs, &-rs.rho())
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    /// Canonical (lexicographically least) reduced word, 0-based letters.
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn length(&self) -> usize {
        self.letters.len()
    }

    pub fn action(&self) -> &IntMat {
        &self.action
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn act(&self, mu: &Weight) -> Weight {
        Weight(
            self.action
                .iter()
                .map(|row| row.iter().zip(&mu.0).map(|(a, b)| Q::from_integer(*a) * b).sum())
                .collect(),
        )
    }

    /// Image of a root given in simple coordinates, again in simple coordinates.
    pub fn act_root(&self, root: &[i64]) -> Vec<i64> {
        let w = self.act(&self.rs.root_to_weight(root));
        self.rs
            .root_lattice_coords(&w)
            .expect("Weyl image of a root lies in the root lattice")
    }

    /// `self * other`.
    pub fn compose(&self, other: &WeylWord) -> WeylWord {
        Self::from_action(&self.rs, matmul(&self.action, &other.action))
    }

    pub fn inverse(&self) -> WeylWord {
        let rev: Vec<usize> = self.letters.iter().rev().copied().collect();
        Self::from_letters(&self.rs, &rev).expect("letters in range")
    }

    /// Left descent set: nodes `i` with `l(s_i w) < l(w)`.
    pub fn left_descents(&self) -> Vec<usize> {
        let wr = self.act(self.rs.rho());
        (0..self.rs.rank()).filter(|&i| wr.0[i].is_negative()).collect()
    }

    /// Right descent set: nodes `i` with `l(w s_i) < l(w)`, i.e. `w(alpha_i) < 0`.
    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.rs.rank())
            .filter(|&i| {
                let mut e = vec![0; self.rs.rank()];
                e[i] = 1;
                self.act_root(&e).iter().any(|&c| c < 0)
            })
            .collect()
    }

    /// The roots `gamma_k = s_{i_l} ... s_{i_{k+1}} (alpha_{i_k})` for the
    /// canonical word `s_{i_1} ... s_{i_l}`, in simple coordinates. They are
    /// the positive roots sent to negative roots by `w`.
    pub fn gamma_sequence(&self) -> Vec<Vec<i64>> {
        let l = self.letters.len();
        let n = self.rs.rank();
        (0..l)
            .map(|k| {
                let mut e = vec![0i64; n];
                e[self.letters[k]] = 1;
                let tail: Vec<usize> = self.letters[k + 1..].iter().rev().copied().collect();
                let w = WeylWord::from_letters(&self.rs, &tail).expect("letters in range");
                w.act_root(&e)
            })
            .collect()
    }
}

/// Reflection in an arbitrary root (simple coordinates).
pub fn root_reflection(rs: &Arc<RootSystem>, root: &[i64]) -> Result<WeylWord> {
    if root.len() != rs.rank() {
        return invalid("root has wrong length");
    }
    let n = rs.rank();
    let mut m = vec![vec![0i64; n]; n];
    for j in 0..n {
        let img = rs.reflect(&rs.fundamental_weight(j), root);
        let ints = img
            .to_ints()
            .ok_or_else(|| Error::InvalidInput("not a root".into()))?;
        for i in 0..n {
            m[i][j] = ints[i];
        }
    }
    Ok(WeylWord::from_action(rs, m))
}

fn validate_subset(rs: &RootSystem, s: &[usize]) -> Result<Vec<usize>> {
    let mut v: Vec<usize> = s.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.iter().any(|&i| i >= rs.rank()) {
        return invalid(format!("subset {:?} has nodes outside {}", s, rs.label()));
    }
    Ok(v)
}

/// All elements of `W`, sorted by length then canonical word.
pub fn enumerate_group(rs: &Arc<RootSystem>, cap: usize) -> Result<Vec<WeylWord>> {
    let all: Vec<usize> = (0..rs.rank()).collect();
    enumerate_subgroup(rs, &all, cap)
}

/// The parabolic subgroup `W_S`, sorted by length then canonical word.
pub fn enumerate_subgroup(rs: &Arc<RootSystem>, s: &[usize], cap: usize) -> Result<Vec<WeylWord>> {
    let s = validate_subset(rs, s)?;
    let n = rs.rank();
    let rho = vec![1i64; n];
    let gens: Vec<IntMat> = s.iter().map(|&i| simple_reflection_matrix(rs, i)).collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let id = identity(n);
    seen.insert(rho.clone());
    let mut queue = VecDeque::from(vec![id.clone()]);
    let mut out = vec![id];
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p = matmul(g, &m);
            if seen.insert(apply_int(&p, &rho)) {
                if out.len() >= cap {
                    return Err(Error::ResourceExceeded(format!(
                        "Weyl group of {} exceeds enumeration cap {cap}",
                        rs.label()
                    )));
                }
                out.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    let mut words: Vec<WeylWord> = out.into_iter().map(|m| WeylWord::from_action(rs, m)).collect();
    words.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.letters.cmp(&b.letters)));
    Ok(words)
}

/// `W^S` together with `|W_S|`.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub s: Vec<usize>,
    pub w_s_order: usize,
    pub minimal_reps: Vec<WeylWord>,
}

/// `rho_{S^c} = sum over nodes outside S of varpi_j`; its stabilizer is `W_S`.
pub fn rho_complement(rs: &RootSystem, s: &[usize]) -> Weight {
    let n = rs.rank();
    Weight::from_ints(&(0..n).map(|j| if s.contains(&j) { 0 } else { 1 }).collect::<Vec<_>>())
}

/// Minimal-length representatives of `W / W_S`, sorted by length then word.
/// They are obtained from the orbit of `rho_{S^c}`.
pub fn minimal_coset_reps(rs: &Arc<RootSystem>, s: &[usize]) -> Result<ParabolicData> {
    minimal_coset_reps_capped(rs, s, DEFAULT_GROUP_CAP)
}

pub fn minimal_coset_reps_capped(rs: &Arc<RootSystem>, s: &[usize], cap: usize) -> Result<ParabolicData> {
    let s = validate_subset(rs, s)?;
    if s.len() == rs.rank() {
        return invalid("S must be a proper subset of the simple roots");
    }
    let lam = rho_complement(rs, &s);
    let a = rs.cartan();
    let n = rs.rank();
    let start = lam.to_ints().expect("integral");
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from(vec![start.clone()]);
    let mut orbit = vec![start];
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut w = v.clone();
            for j in 0..n {
                w[j] -= v[i] * a[j][i];
            }
            if seen.insert(w.clone()) {
                if orbit.len() >= cap {
                    return Err(Error::ResourceExceeded(format!("W^S orbit exceeds cap {cap}")));
                }
                orbit.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    let mut reps: Vec<WeylWord> = orbit
        .iter()
        .map(|v| WeylWord::minimal_to(rs, &Weight::from_ints(v)))
        .collect();
    reps.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.letters.cmp(&b.letters)));
    let w_s_order = enumerate_subgroup(rs, &s, cap)?.len();
    Ok(ParabolicData { s, w_s_order, minimal_reps: reps })
}

/// `w` is a minimal representative of `w W_S`: `l(w s_i) > l(w)` for `i` in `S`.
pub fn is_minimal_rep_by_length(w: &WeylWord, s: &[usize]) -> bool {
    s.iter().all(|&i| {
        let wi = w.compose(&WeylWord::simple(w.root_system(), i).expect("node in range"));
        wi.length() > w.length()
    })
}

/// `w` is a minimal representative iff `w(R_S^+)` consists of positive roots.
pub fn is_minimal_rep_by_roots(w: &WeylWord, s: &[usize]) -> bool {
    let rs = w.root_system();
    rs.positive_roots()
        .iter()
        .filter(|r| r.iter().enumerate().all(|(j, &c)| c == 0 || s.contains(&j)))
        .all(|r| w.act_root(r).iter().all(|&c| c >= 0))
}

/// Factor `w = w1 * w2` with `w1` in `W^S` and `w2` in `W_S`.
pub fn parabolic_decompose(w: &WeylWord, s: &[usize]) -> Result<(WeylWord, WeylWord)> {
    let rs = w.root_system();
    let s = validate_subset(rs, s)?;
    let lam = rho_complement(rs, &s);
    let w1 = WeylWord::minimal_to(rs, &w.act(&lam));
    let w2 = w1.inverse().compose(w);
    Ok((w1, w2))
}

/// Stabilizer of a weight, by enumeration of `W`.
pub fn stabilizer(rs: &Arc<RootSystem>, mu: &Weight, cap: usize) -> Result<Vec<WeylWord>> {
    Ok(enumerate_group(rs, cap)?
        .into_iter()
        .filter(|w| w.act(mu) == *mu)
        .collect())
}

/// Orbit of a weight with a minimal-length element reaching each point.
pub fn orbit_with_witnesses(rs: &Arc<RootSystem>, mu: &Weight, cap: usize) -> Result<HashMap<Weight, WeylWord>> {
    let (_, dom) = descent_to_dominant(rs, mu);
    let n = rs.rank();
    let a = rs.cartan();
    let mut out: HashMap<Weight, WeylWord> = HashMap::new();
    out.insert(dom.clone(), WeylWord::identity(rs));
    let mut queue = VecDeque::from(vec![dom]);
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            if v.0[i].is_zero() {
                continue;
            }
            let mut w = v.clone();
            for j in 0..n {
                w.0[j] -= v.0[i] * Q::from_integer(a[j][i]);
            }
            if !out.contains_key(&w) {
                if out.len() >= cap {
                    return Err(Error::ResourceExceeded(format!("orbit exceeds cap {cap}")));
                }
                out.insert(w.clone(), WeylWord::minimal_to(rs, &w));
                queue.push_back(w);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::TypeLetter;

    fn rs(t: TypeLetter, n: usize) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(t, n).unwrap())
    }

    #[test]
    fn a2_reduction() {
        let r = rs(TypeLetter::A, 2);
        let w = WeylWord::from_letters(&r, &[0, 1, 0]).unwrap();
        assert_eq!(w.length(), 3);
        let v = WeylWord::from_letters(&r, &[1, 0, 1]).unwrap();
        assert_eq!(w, v);
        assert_eq!(v.letters(), &[0, 1, 0]);
        let e = WeylWord::from_letters(&r, &[0, 0]).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn a2_cosets() {
        let r = rs(TypeLetter::A, 2);
        let p = minimal_coset_reps(&r, &[0]).unwrap();
        let words: Vec<String> = p.minimal_reps.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, vec!["e", "s2", "s1s2"]);
        assert_eq!(p.w_s_order, 2);
    }

    #[test]
    fn longest_lengths() {
        for (t, n, np) in [(TypeLetter::B, 3, 9), (TypeLetter::G, 2, 6), (TypeLetter::D, 4, 12)] {
            let r = rs(t, n);
            let w0 = WeylWord::longest(&r);
            assert_eq!(w0.length(), np);
            assert_eq!(w0.act(r.rho()), -r.rho());
        }
    }

    #[test]
    fn gammas_are_inversions() {
        let r = rs(TypeLetter::B, 2);
        let w = WeylWord::from_letters(&r, &[1, 0]).unwrap();
        let g = w.gamma_sequence();
        assert_eq!(g.len(), 2);
        let winv = w.inverse();
        for root in &g {
            assert!(root.iter().all(|&c| c >= 0));
            assert!(w.act_root(root).iter().all(|&c| c <= 0));
        }
        let _ = winv;
    }

    #[test]
    fn decomposition() {
        let r = rs(TypeLetter::A, 3);
        for w in enumerate_group(&r, DEFAULT_GROUP_CAP).unwrap() {
            let (w1, w2) = parabolic_decompose(&w, &[0, 2]).unwrap();
            assert_eq!(w1.compose(&w2), w);
            assert!(is_minimal_rep_by_length(&w1, &[0, 2]));
            assert_eq!(w1.length() + w2.length(), w.length());
        }
    }
}
