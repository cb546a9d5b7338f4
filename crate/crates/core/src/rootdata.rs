//! Root data for simple Lie algebras in Bourbaki numbering.
//!
//! Weights are stored in the basis of fundamental weights with exact
//! rational coordinates, so a weight is integral exactly when it lies in the
//! weight lattice. The invariant form is normalized so that
//! `(alpha_i, alpha_i) = 2 d_i` with `d_i = 1` on short roots.

use crate::error::{invalid, Error, Result};
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

pub type Q = Rational64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl FromStr for TypeLetter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => TypeLetter::A,
            "B" => TypeLetter::B,
            "C" => TypeLetter::C,
            "D" => TypeLetter::D,
            "E" => TypeLetter::E,
            "F" => TypeLetter::F,
            "G" => TypeLetter::G,
            other => return invalid(format!("unknown Cartan type '{other}'")),
        })
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Weight(c.iter().map(|&x| Q::from_integer(x)).collect())
    }

    /// The fundamental weight of node `i` (0-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = Q::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Integer coordinate `i`; panics on a non-integral weight.
    pub fn int(&self, i: usize) -> i64 {
        let c = self.0[i];
        assert!(c.is_integer(), "non-integral weight coordinate");
        c.to_integer()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.0.iter().all(|c| c.is_positive())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * Q::from_integer(k)).collect())
    }

    /// Compact form such as `w1+2w3`, or `0`.
    pub fn pretty(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = if *c == Q::one() {
                String::new()
            } else if *c == -Q::one() {
                "-".to_string()
            } else {
                c.to_string()
            };
            parts.push(format!("{coef}w{}", i + 1));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+").replace("+-", "-")
        }
    }

    /// Parses `1,0,2` or `[1,0,2]`.
    pub fn parse(s: &str, rank: usize) -> Result<Weight> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords: std::result::Result<Vec<Q>, _> = t
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<Q>())
            .collect();
        let coords = coords.map_err(|_| Error::InvalidInput(format!("cannot parse weight '{s}'")))?;
        if coords.len() != rank {
            return invalid(format!("weight '{s}' has {} coordinates, rank is {rank}", coords.len()));
        }
        Ok(Weight(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<Q> for &Weight {
    type Output = Weight;
    fn mul(self, k: Q) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

/// Root data of a simple Lie algebra.
#[derive(Clone, Debug)]
pub struct RootSystem {
    letter: TypeLetter,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    form: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    fund_form: Vec<Vec<Q>>,
    positive_roots: Vec<Vec<i64>>,
    positive_root_weights: Vec<Weight>,
    rho: Weight,
}

impl PartialEq for RootSystem {
    fn eq(&self, o: &Self) -> bool {
        self.letter == o.letter && self.rank == o.rank
    }
}
impl Eq for RootSystem {}

#[derive(Serialize, Deserialize)]
struct RootSystemDoc {
    r#type: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    rho: Vec<i64>,
}

impl RootSystem {
    pub fn new(letter: TypeLetter, rank: usize) -> Result<Self> {
        let ok = match letter {
            TypeLetter::A => rank >= 1,
            TypeLetter::B | TypeLetter::C => rank >= 2,
            TypeLetter::D => rank >= 4,
            TypeLetter::E => (6..=8).contains(&rank),
            TypeLetter::F => rank == 4,
            TypeLetter::G => rank == 2,
        };
        if !ok {
            return invalid(format!("no simple Lie algebra of type {letter}{rank}"));
        }
        let n = rank;
        let mut d = vec![1i64; n];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match letter {
            TypeLetter::A => edges.extend((0..n - 1).map(|i| (i, i + 1))),
            TypeLetter::B => {
                edges.extend((0..n - 1).map(|i| (i, i + 1)));
                for x in d.iter_mut().take(n - 1) {
                    *x = 2;
                }
            }
            TypeLetter::C => {
                edges.extend((0..n - 1).map(|i| (i, i + 1)));
                d[n - 1] = 2;
            }
            TypeLetter::D => {
                edges.extend((0..n - 2).map(|i| (i, i + 1)));
                edges.push((n - 3, n - 1));
            }
            TypeLetter::E => {
                for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)] {
                    if j < n {
                        edges.push((i, j));
                    }
                }
            }
            TypeLetter::F => {
                edges.extend([(0, 1), (1, 2), (2, 3)]);
                d = vec![2, 2, 1, 1];
            }
            TypeLetter::G => {
                edges.push((0, 1));
                d = vec![1, 3];
            }
        }
        let mut form = vec![vec![0i64; n]; n];
        for i in 0..n {
            form[i][i] = 2 * d[i];
        }
        for &(i, j) in &edges {
            let v = -d[i].max(d[j]);
            form[i][j] = v;
            form[j][i] = v;
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| form[i][j] / d[i]).collect())
            .collect();
        let cartan_inv = invert_int(&cartan)?;
        let fund_form: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|m| cartan_inv[i][m] * Q::from_integer(d[i])).collect())
            .collect();

        let mut positive_roots = Vec::new();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let p: i64 = (0..n).map(|j| cartan[i][j] * b[j]).sum();
                let mut c = b.clone();
                c[i] -= p;
                if c.iter().all(|&x| x >= 0) && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
            positive_roots.push(b);
        }
        positive_roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut rs = RootSystem {
            letter,
            rank,
            cartan,
            d,
            form,
            cartan_inv,
            fund_form,
            positive_roots,
            positive_root_weights: Vec::new(),
            rho: Weight::from_ints(&vec![1; n]),
        };
        rs.positive_root_weights = rs.positive_roots.iter().map(|r| rs.root_to_weight(r)).collect();
        Ok(rs)
    }

    pub fn letter(&self) -> TypeLetter {
        self.letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Label such as `B2`.
    pub fn label(&self) -> String {
        format!("{}{}", self.letter, self.rank)
    }

    /// Cartan matrix `a_ij = <alpha_j, alpha_i^vee> = (alpha_i, alpha_j) / d_i`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Symmetrizers `d_i`, so that `q_i = q^{d_i}`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    /// `(alpha_i, alpha_j)`.
    pub fn simple_form(&self) -> &[Vec<i64>] {
        &self.form
    }

    /// `(varpi_i, varpi_j)`.
    pub fn fundamental_form(&self) -> &[Vec<Q>] {
        &self.fund_form
    }

    /// Positive roots in simple-root coordinates, by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots in fundamental-weight coordinates, same order.
    pub fn positive_root_weights(&self) -> &[Weight] {
        &self.positive_root_weights
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::from_ints(&(0..self.rank).map(|j| self.cartan[j][i]).collect::<Vec<_>>())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank, i)
    }

    pub fn root_to_weight(&self, r: &[i64]) -> Weight {
        let n = self.rank;
        Weight::from_ints(&(0..n).map(|i| (0..n).map(|j| self.cartan[i][j] * r[j]).sum()).collect::<Vec<_>>())
    }

    /// Coordinates of a weight in the basis of simple roots.
    pub fn to_simple_coords(&self, w: &Weight) -> Vec<Q> {
        let n = self.rank;
        (0..n)
            .map(|i| (0..n).map(|j| self.cartan_inv[i][j] * w.0[j]).sum())
            .collect()
    }

    /// Integer simple-root coordinates, if the weight lies in the root lattice.
    pub fn root_lattice_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.to_simple_coords(w)
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return invalid(format!("weight {w} does not belong to {}", self.label()));
        }
        Ok(())
    }

    /// The invariant form `(mu, nu)`.
    pub fn inner(&self, mu: &Weight, nu: &Weight) -> Result<Q> {
        self.check(mu)?;
        self.check(nu)?;
        Ok(self.form_unchecked(mu, nu))
    }

    pub(crate) fn form_unchecked(&self, mu: &Weight, nu: &Weight) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            if mu.0[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                acc += mu.0[i] * nu.0[j] * self.fund_form[i][j];
            }
        }
        acc
    }

    /// `(mu, nu)` as a float.
    pub fn inner_f64(&self, mu: &Weight, nu: &Weight) -> f64 {
        self.form_unchecked(mu, nu).to_f64().unwrap_or(f64::NAN)
    }

    /// `(mu, alpha_i)`, an integer for integral `mu`.
    pub fn pair_simple(&self, mu: &Weight, i: usize) -> Q {
        mu.0[i] * Q::from_integer(self.d[i])
    }

    /// `<mu, beta^vee> = 2 (mu, beta) / (beta, beta)` for a root in simple coordinates.
    pub fn coroot_pairing(&self, mu: &Weight, root: &[i64]) -> Q {
        let b = self.root_to_weight(root);
        Q::from_integer(2) * self.form_unchecked(mu, &b) / self.form_unchecked(&b, &b)
    }

    /// `mu <= nu` in the dominance order: `nu - mu` is a non-negative
    /// integral combination of simple roots.
    pub fn dominance_leq(&self, mu: &Weight, nu: &Weight) -> Result<bool> {
        self.check(mu)?;
        self.check(nu)?;
        let c = self.to_simple_coords(&(nu - mu));
        Ok(c.iter().all(|x| x.is_integer() && !x.is_negative()))
    }

    /// Reflection of `mu` in the root `root` (simple coordinates).
    pub fn reflect(&self, mu: &Weight, root: &[i64]) -> Weight {
        let k = self.coroot_pairing(mu, root);
        mu - &(&self.root_to_weight(root) * k)
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u64> {
        self.check(lambda)?;
        if !lambda.is_integral() || !lambda.is_dominant() {
            return invalid(format!("{lambda} is not dominant integral"));
        }
        let lr = lambda + &self.rho;
        let mut acc = Q::one();
        for b in &self.positive_root_weights {
            acc *= self.form_unchecked(&lr, b) / self.form_unchecked(&self.rho, b);
        }
        if !acc.is_integer() {
            return Err(Error::Internal("Weyl dimension not integral".into()));
        }
        acc.to_integer()
            .to_u64()
            .ok_or_else(|| Error::Internal("Weyl dimension negative".into()))
    }

    /// Height of a weight in the root lattice.
    pub fn height(&self, w: &Weight) -> Option<i64> {
        self.root_lattice_coords(w).map(|c| c.iter().sum())
    }

    /// Fundamental weights in the standard `epsilon` realization for classical
    /// types, as rows. Types A and D use `rank + 1` and `rank` coordinates.
    pub fn epsilon_fundamentals(&self) -> Option<Vec<Vec<Q>>> {
        let n = self.rank;
        let half = Q::new(1, 2);
        let ones = |k: usize, len: usize| -> Vec<Q> {
            (0..len).map(|j| if j < k { Q::one() } else { Q::zero() }).collect()
        };
        match self.letter {
            TypeLetter::A => Some(
                (1..=n)
                    .map(|k| {
                        let shift = Q::new(k as i64, (n + 1) as i64);
                        ones(k, n + 1).into_iter().map(|x| x - shift).collect()
                    })
                    .collect(),
            ),
            TypeLetter::B => Some(
                (1..=n)
                    .map(|k| {
                        if k < n {
                            ones(k, n)
                        } else {
                            vec![half; n]
                        }
                    })
                    .collect(),
            ),
            TypeLetter::C => Some((1..=n).map(|k| ones(k, n)).collect()),
            TypeLetter::D => Some(
                (1..=n)
                    .map(|k| {
                        if k <= n - 2 {
                            ones(k, n)
                        } else if k == n - 1 {
                            let mut v = vec![half; n];
                            v[n - 1] = -half;
                            v
                        } else {
                            vec![half; n]
                        }
                    })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Simple roots in the `epsilon` realization (classical types).
    pub fn epsilon_simple_roots(&self) -> Option<Vec<Vec<Q>>> {
        let n = self.rank;
        let len = if self.letter == TypeLetter::A { n + 1 } else { n };
        let e = |i: usize| -> Vec<Q> { (0..len).map(|j| if i == j { Q::one() } else { Q::zero() }).collect() };
        let sub = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.iter().zip(&b).map(|(x, y)| x - y).collect() };
        let add = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.iter().zip(&b).map(|(x, y)| x + y).collect() };
        let mut out: Vec<Vec<Q>> = (0..n.saturating_sub(1)).map(|i| sub(e(i), e(i + 1))).collect();
        match self.letter {
            TypeLetter::A => out.push(sub(e(n - 1), e(n))),
            TypeLetter::B => out.push(e(n - 1)),
            TypeLetter::C => out.push(e(n - 1).into_iter().map(|x| x * Q::from_integer(2)).collect()),
            TypeLetter::D => out.push(add(e(n - 2), e(n - 1))),
            _ => return None,
        }
        Some(out)
    }

    /// `epsilon` coordinates of a weight (classical types).
    pub fn to_epsilon(&self, w: &Weight) -> Option<Vec<Q>> {
        let f = self.epsilon_fundamentals()?;
        let len = f[0].len();
        Some((0..len).map(|j| (0..self.rank).map(|i| w.0[i] * f[i][j]).sum()).collect())
    }

    /// Weight with the given `epsilon` coordinates (classical types).
    /// For type A the trace part is discarded.
    pub fn from_epsilon(&self, v: &[Q]) -> Option<Weight> {
        let roots = self.epsilon_simple_roots()?;
        if v.len() != roots[0].len() {
            return None;
        }
        let dot = |a: &[Q], b: &[Q]| -> Q { a.iter().zip(b).map(|(x, y)| x * y).sum() };
        Some(Weight(
            roots
                .iter()
                .map(|a| Q::from_integer(2) * dot(v, a) / dot(a, a))
                .collect(),
        ))
    }

    /// JSON description with Cartan matrix, symmetrizer and positive roots.
    pub fn to_json(&self) -> Result<String> {
        let doc = RootSystemDoc {
            r#type: self.letter.to_string(),
            rank: self.rank,
            cartan: self.cartan.clone(),
            symmetrizer: self.d.clone(),
            positive_roots: self.positive_roots.clone(),
            rho: vec![1; self.rank],
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

fn invert_int(a: &[Vec<i64>]) -> Result<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !m[r][c].is_zero())
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        m.swap(c, p);
        let piv = m[c][c];
        for x in m[c].iter_mut() {
            *x /= piv;
        }
        let row_c = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&row_c) {
                    *x -= f * y;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_form() {
        let rs = RootSystem::new(TypeLetter::A, 2).unwrap();
        let w1 = rs.fundamental_weight(0);
        assert_eq!(rs.inner(&w1, &w1).unwrap(), Q::new(2, 3));
        assert_eq!(rs.positive_roots().len(), 3);
        assert_eq!(rs.simple_root(0), Weight::from_ints(&[2, -1]));
    }

    #[test]
    fn root_counts() {
        let cases = [
            (TypeLetter::A, 4, 10),
            (TypeLetter::B, 3, 9),
            (TypeLetter::C, 4, 16),
            (TypeLetter::D, 5, 20),
            (TypeLetter::E, 6, 36),
            (TypeLetter::E, 7, 63),
            (TypeLetter::E, 8, 120),
            (TypeLetter::F, 4, 24),
            (TypeLetter::G, 2, 6),
        ];
        for (t, n, np) in cases {
            assert_eq!(RootSystem::new(t, n).unwrap().positive_roots().len(), np, "{t}{n}");
        }
    }

    #[test]
    fn rejects_bad_types() {
        assert!(RootSystem::new(TypeLetter::E, 5).is_err());
        assert!(RootSystem::new(TypeLetter::G, 3).is_err());
        assert!(RootSystem::new(TypeLetter::D, 3).is_err());
    }

    #[test]
    fn epsilon_roundtrip() {
        for (t, n) in [(TypeLetter::A, 3), (TypeLetter::B, 3), (TypeLetter::C, 3), (TypeLetter::D, 5)] {
            let rs = RootSystem::new(t, n).unwrap();
            for i in 0..n {
                let w = rs.fundamental_weight(i);
                let e = rs.to_epsilon(&w).unwrap();
                assert_eq!(rs.from_epsilon(&e).unwrap(), w);
                let a = rs.simple_root(i);
                let ea = rs.to_epsilon(&a).unwrap();
                assert_eq!(&ea, &rs.epsilon_simple_roots().unwrap()[i], "{t}{n} root {i}");
            }
        }
    }

    #[test]
    fn dominance() {
        let rs = RootSystem::new(TypeLetter::A, 2).unwrap();
        let z = Weight::zero(2);
        let adj = Weight::from_ints(&[1, 1]);
        assert!(rs.dominance_leq(&z, &adj).unwrap());
        assert!(!rs.dominance_leq(&adj, &z).unwrap());
        assert!(!rs.dominance_leq(&z, &Weight::from_ints(&[1, 0])).unwrap());
    }
}
