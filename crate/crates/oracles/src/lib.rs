//! Independent reference computations for semisimple Lie algebras.
//!
//! Nothing here shares code with `qflag`. Root data is rebuilt from a Cartan
//! matrix, characters come from Freudenthal's recursion, tensor products
//! from Brauer–Klimyk, and Weyl groups are enumerated as integer matrices.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

pub type Rat = Rational64;

/// Minimal root datum: Cartan matrix `a[i][j] = <alpha_j, alpha_i^vee>` and
/// symmetrizers `d` with `(alpha_i, alpha_i) = 2 d_i`.
#[derive(Clone, Debug)]
pub struct Datum {
    pub a: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub pos_roots: Vec<Vec<i64>>,
    inv: Vec<Vec<Rat>>,
}

impl Datum {
    pub fn new(a: Vec<Vec<i64>>, d: Vec<i64>) -> Self {
        let n = a.len();
        let inv = invert(&a);
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            roots.push(b.clone());
            for i in 0..n {
                let p: i64 = (0..n).map(|j| a[i][j] * b[j]).sum();
                let mut c = b.clone();
                c[i] -= p;
                if c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0) && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        Datum { a, d, pos_roots: roots, inv }
    }

    /// Cartan type by letter and rank, Bourbaki numbering.
    pub fn of_type(letter: char, n: usize) -> Self {
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
        }
        let mut d = vec![1i64; n];
        let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match letter {
            'A' => {
                for i in 0..n - 1 {
                    link(&mut a, i, i + 1, -1, -1);
                }
            }
            'B' => {
                for i in 0..n - 2 {
                    link(&mut a, i, i + 1, -1, -1);
                }
                // alpha_{n-1} long, alpha_n short
                link(&mut a, n - 2, n - 1, -1, -2);
                for x in d.iter_mut().take(n - 1) {
                    *x = 2;
                }
            }
            'C' => {
                for i in 0..n - 2 {
                    link(&mut a, i, i + 1, -1, -1);
                }
                link(&mut a, n - 2, n - 1, -2, -1);
                d[n - 1] = 2;
            }
            'D' => {
                for i in 0..n - 2 {
                    link(&mut a, i, i + 1, -1, -1);
                }
                link(&mut a, n - 3, n - 1, -1, -1);
            }
            'E' => {
                let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
                for &(i, j) in edges.iter() {
                    if i < n && j < n {
                        link(&mut a, i, j, -1, -1);
                    }
                }
            }
            'F' => {
                link(&mut a, 0, 1, -1, -1);
                link(&mut a, 1, 2, -1, -2);
                link(&mut a, 2, 3, -1, -1);
                d = vec![2, 2, 1, 1];
            }
            'G' => {
                link(&mut a, 0, 1, -3, -1);
                d = vec![1, 3];
            }
            _ => panic!("unknown type {letter}"),
        }
        Datum::new(a, d)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Weight (fundamental coordinates) to simple-root coordinates.
    pub fn to_roots(&self, w: &[i64]) -> Vec<Rat> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.inv[i][j] * Rat::from_integer(w[j])).sum())
            .collect()
    }

    /// Root (simple coordinates) to fundamental coordinates.
    pub fn root_weight(&self, r: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.a[i][j] * r[j]).sum()).collect()
    }

    /// `(x, y)` for weights in fundamental coordinates.
    pub fn form(&self, x: &[i64], y: &[i64]) -> Rat {
        // (x, y) = sum_i x_i (varpi_i, y) and (varpi_i, alpha_j) = d_j delta_ij,
        // so expand y in simple roots.
        let yr = self.to_roots(y);
        let n = self.rank();
        (0..n)
            .map(|j| Rat::from_integer(x[j] * self.d[j]) * yr[j])
            .sum()
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }

    pub fn weyl_dimension(&self, lam: &[i64]) -> u64 {
        let lr: Vec<i64> = lam.iter().map(|x| x + 1).collect();
        let rho = self.rho();
        let mut num = Rat::one();
        for r in &self.pos_roots {
            let rw = self.root_weight(r);
            num *= self.form(&lr, &rw) / self.form(&rho, &rw);
        }
        assert!(num.is_integer());
        *num.numer() as u64
    }

    /// Weight multiplicities of `V(lam)` via Freudenthal.
    pub fn freudenthal(&self, lam: &[i64]) -> BTreeMap<Vec<i64>, u64> {
        let n = self.rank();
        let rho = self.rho();
        let lr: Vec<i64> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let top = self.form(&lr, &lr);
        let roots_w: Vec<Vec<i64>> = self.pos_roots.iter().map(|r| self.root_weight(r)).collect();
        let simple_w: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.a[j][i]).collect()).collect();
        let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
        mult.insert(lam.to_vec(), 1);
        let mut layer = vec![lam.to_vec()];
        let mut depth: i64 = 0;
        while !layer.is_empty() {
            depth += 1;
            let mut next: Vec<Vec<i64>> = Vec::new();
            let mut seen = HashSet::new();
            for w in &layer {
                for s in &simple_w {
                    let c: Vec<i64> = w.iter().zip(s).map(|(a, b)| a - b).collect();
                    if !mult.contains_key(&c) && seen.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
            let mut kept = Vec::new();
            for mu in next {
                let mr: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
                let den = top - self.form(&mr, &mr);
                if den.is_zero() {
                    continue;
                }
                let mut acc = Rat::zero();
                for rw in &roots_w {
                    for k in 1..=depth {
                        let shifted: Vec<i64> = mu.iter().zip(rw).map(|(a, b)| a + k * b).collect();
                        if let Some(&m) = mult.get(&shifted) {
                            acc += Rat::from_integer(m as i64) * self.form(&shifted, rw);
                        }
                    }
                }
                let m = Rat::from_integer(2) * acc / den;
                assert!(m.is_integer() && !m.is_negative(), "non-integral multiplicity");
                let m = *m.numer() as u64;
                if m > 0 {
                    mult.insert(mu.clone(), m);
                    kept.push(mu);
                }
            }
            layer = kept;
        }
        mult.into_iter().collect()
    }

    /// Reflect `v` into the dominant chamber. Returns `None` if `v` is singular
    /// (fixed by some reflection), otherwise the image and the sign of the
    /// Weyl element used.
    pub fn dominant_with_sign(&self, v: &[i64]) -> Option<(Vec<i64>, i64)> {
        let n = self.rank();
        let mut v = v.to_vec();
        let mut sign = 1;
        loop {
            if v.iter().any(|&x| x == 0) {
                return None;
            }
            match (0..n).find(|&i| v[i] < 0) {
                None => return Some((v, sign)),
                Some(i) => {
                    let c = v[i];
                    for j in 0..n {
                        v[j] -= c * self.a[j][i];
                    }
                    sign = -sign;
                }
            }
        }
    }

    /// Highest weights with multiplicity in `V(lam) (x) V(mu)` (Brauer–Klimyk).
    pub fn tensor_decompose(&self, lam: &[i64], mu: &[i64]) -> BTreeMap<Vec<i64>, u64> {
        let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (beta, m) in self.freudenthal(mu) {
            let shifted: Vec<i64> = lam.iter().zip(&beta).map(|(a, b)| a + b + 1).collect();
            if let Some((dom, sign)) = self.dominant_with_sign(&shifted) {
                let nu: Vec<i64> = dom.iter().map(|x| x - 1).collect();
                *acc.entry(nu).or_insert(0) += sign * m as i64;
            }
        }
        acc.into_iter()
            .filter(|(_, m)| *m != 0)
            .map(|(k, m)| {
                assert!(m > 0);
                (k, m as u64)
            })
            .collect()
    }

    /// Multiplicities of Levi highest weights in the restriction of `V(lam)`
    /// to the Levi factor generated by the nodes in `s`.
    /// Uses `m(mu) = sum_{w in W_S} sign(w) mult(mu + rho - w rho)`.
    pub fn branch(&self, lam: &[i64], s: &[usize]) -> BTreeMap<Vec<i64>, u64> {
        let chars = self.freudenthal(lam);
        let ws = self.weyl_group_of(s);
        let rho = self.rho();
        let mut out = BTreeMap::new();
        for mu in chars.keys() {
            if !s.iter().all(|&j| mu[j] >= 0) {
                continue;
            }
            let mut tot: i64 = 0;
            for w in &ws {
                let wr = apply(&w.0, &rho);
                let key: Vec<i64> = (0..mu.len()).map(|i| mu[i] + rho[i] - wr[i]).collect();
                let sign = if w.1 % 2 == 0 { 1 } else { -1 };
                tot += sign * chars.get(&key).copied().unwrap_or(0) as i64;
            }
            if tot != 0 {
                assert!(tot > 0);
                out.insert(mu.clone(), tot as u64);
            }
        }
        out
    }

    fn simple_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            m[j][j] = 1;
            m[j][i] -= self.a[j][i];
        }
        m
    }

    /// Subgroup generated by the simple reflections in `s`, as
    /// (matrix on fundamental coordinates, length).
    pub fn weyl_group_of(&self, s: &[usize]) -> Vec<(Vec<Vec<i64>>, usize)> {
        let n = self.rank();
        let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let gens: Vec<Vec<Vec<i64>>> = s.iter().map(|&i| self.simple_matrix(i)).collect();
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        seen.insert(id.clone());
        let mut out = vec![(id.clone(), 0)];
        let mut queue = VecDeque::from(vec![id]);
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let p = matmul(&m, g);
                if seen.insert(p.clone()) {
                    queue.push_back(p.clone());
                    out.push((p, 0));
                }
            }
        }
        for e in out.iter_mut() {
            e.1 = self.length(&e.0);
        }
        out
    }

    /// Full Weyl group with lengths.
    pub fn weyl_group(&self) -> Vec<(Vec<Vec<i64>>, usize)> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.weyl_group_of(&all)
    }

    /// Length as the number of positive roots sent to negative roots.
    pub fn length(&self, m: &[Vec<i64>]) -> usize {
        self.pos_roots
            .iter()
            .filter(|r| {
                let img = apply(m, &self.root_weight(r));
                let rr = self.to_roots(&img);
                rr.iter().any(|x| x.is_negative())
            })
            .count()
    }

    /// Minimal-length representatives of `W / W_S`, by brute force:
    /// elements `w` with `l(w s_i) > l(w)` for every `i` in `s`.
    pub fn min_coset_reps(&self, s: &[usize]) -> Vec<(Vec<Vec<i64>>, usize)> {
        self.weyl_group()
            .into_iter()
            .filter(|(m, l)| {
                s.iter()
                    .all(|&i| self.length(&matmul(m, &self.simple_matrix(i))) > *l)
            })
            .collect()
    }

    /// `R^+ ∩ w^{-1} R^-` for `w` given as a matrix, roots in simple coordinates.
    pub fn inversion_set(&self, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
        self.pos_roots
            .iter()
            .filter(|r| {
                let img = apply(m, &self.root_weight(r));
                self.to_roots(&img).iter().any(|x| x.is_negative())
            })
            .cloned()
            .collect()
    }

    /// Matrix of a word of simple reflections (0-based letters).
    pub fn word_matrix(&self, word: &[usize]) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        for &i in word {
            m = matmul(&m, &self.simple_matrix(i));
        }
        m
    }
}

pub fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

fn invert(a: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|&x| Rat::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("singular");
        m.swap(c, p);
        let piv = m[c][c];
        for x in m[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                let row_c = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(row_c) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_dimensions() {
        let a2 = Datum::of_type('A', 2);
        assert_eq!(a2.weyl_dimension(&[1, 1]), 8);
        let g2 = Datum::of_type('G', 2);
        assert_eq!(g2.weyl_dimension(&[1, 0]), 7);
        assert_eq!(g2.weyl_dimension(&[0, 1]), 14);
        let e8 = Datum::of_type('E', 8);
        assert_eq!(e8.pos_roots.len(), 120);
        assert_eq!(e8.weyl_dimension(&[0, 0, 0, 0, 0, 0, 0, 1]), 248);
        let f4 = Datum::of_type('F', 4);
        assert_eq!(f4.weyl_dimension(&[0, 0, 0, 1]), 26);
    }

    #[test]
    fn freudenthal_matches_weyl() {
        for (t, n) in [('A', 3), ('B', 3), ('C', 3), ('D', 4), ('G', 2), ('F', 4)] {
            let dat = Datum::of_type(t, n);
            for i in 0..n {
                let mut lam = vec![0; n];
                lam[i] = 1;
                let tot: u64 = dat.freudenthal(&lam).values().sum();
                assert_eq!(tot, dat.weyl_dimension(&lam), "{t}{n} node {i}");
            }
        }
        let g2 = Datum::of_type('G', 2);
        let ch = g2.freudenthal(&[1, 0]);
        assert_eq!(ch[&vec![0, 0]], 1);
        let adj = g2.freudenthal(&[0, 1]);
        assert_eq!(adj[&vec![0, 0]], 2);
    }

    #[test]
    fn brauer_klimyk_a2() {
        let a2 = Datum::of_type('A', 2);
        let dec = a2.tensor_decompose(&[1, 0], &[0, 1]);
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[&vec![1, 1]], 1);
        assert_eq!(dec[&vec![0, 0]], 1);
        let dec = a2.tensor_decompose(&[1, 1], &[1, 1]);
        assert_eq!(dec[&vec![1, 1]], 2);
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(Datum::of_type('A', 3).weyl_group().len(), 24);
        assert_eq!(Datum::of_type('B', 3).weyl_group().len(), 48);
        assert_eq!(Datum::of_type('G', 2).weyl_group().len(), 12);
        assert_eq!(Datum::of_type('A', 2).min_coset_reps(&[0]).len(), 3);
    }

    #[test]
    fn branching_a2() {
        let a2 = Datum::of_type('A', 2);
        // adjoint of sl3 restricted to gl2 ⊂ sl3 (node 1 kept)
        let br = a2.branch(&[1, 1], &[0]);
        let tot: u64 = br.iter().map(|(mu, m)| m * (mu[0] as u64 + 1)).sum();
        assert_eq!(tot, 8);
    }
}
