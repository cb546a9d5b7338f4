//! Irreducible *-representations of `C_q[U]` on truncated Fock spaces.
//!
//! `pi_q` is the Fock representation of `C_q[SU(2)]` on `l2(Z_+)`. The
//! representation `pi_sigma` attached to a reduced word lives on the
//! `l`-fold tensor power; everything here is truncated to `N` levels per
//! factor and carries a safe window on which entries are exact.

mod sigma;

pub use sigma::{FockSpace, GradedSpectra, Su2Expansion};

pub use crate::coeffalg::C64;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use std::fmt;

/// Largest admissible `N^l`.
pub const DIM_CAP: usize = 1_000_000;

pub const DEFAULT_TRUNCATION: usize = 8;

fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Operator on `(C^N)^{(x) l}`, stored sparse by columns.
///
/// Entries whose row and column multi-indices have all digits below
/// `window` agree with the untruncated operator. `shift` bounds how far the
/// operator moves any single tensor digit; products use it to shrink the
/// window.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    factors: usize,
    n: usize,
    window: usize,
    shift: usize,
    cols: Vec<Vec<(usize, C64)>>,
}

fn checked_dim(factors: usize, n: usize) -> Result<usize> {
    let mut d: usize = 1;
    for _ in 0..factors {
        d = d.checked_mul(n).filter(|&x| x <= DIM_CAP).ok_or_else(|| {
            Error::ResourceExceeded(format!("truncated Fock space {n}^{factors} exceeds {DIM_CAP}"))
        })?;
    }
    Ok(d)
}

impl TruncatedOperator {
    pub fn zero(factors: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("empty truncation".into()));
        }
        let d = checked_dim(factors, n)?;
        Ok(TruncatedOperator { factors, n, window: n, shift: 0, cols: vec![Vec::new(); d] })
    }

    pub fn scalar(factors: usize, n: usize, c: C64) -> Result<Self> {
        let mut op = Self::zero(factors, n)?;
        if c != czero() {
            for (i, col) in op.cols.iter_mut().enumerate() {
                col.push((i, c));
            }
        }
        Ok(op)
    }

    pub fn identity(factors: usize, n: usize) -> Result<Self> {
        Self::scalar(factors, n, C64::new(1.0, 0.0))
    }

    /// Single-factor operator from `(row, col, value)` triples.
    pub fn from_entries(n: usize, window: usize, shift: usize, entries: &[(usize, usize, C64)]) -> Result<Self> {
        let mut op = Self::zero(1, n)?;
        for &(r, c, v) in entries {
            if r >= n || c >= n {
                return Err(Error::InvalidInput(format!("entry ({r}, {c}) outside {n} levels")));
            }
            op.cols[c].push((r, v));
        }
        op.window = window.min(n);
        op.shift = shift;
        op.compress();
        Ok(op)
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    /// Levels per factor.
    pub fn levels(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn with_window(mut self, w: usize) -> Self {
        self.window = w.min(self.n);
        self
    }

    fn compress(&mut self) {
        for col in self.cols.iter_mut() {
            col.sort_by_key(|e| e.0);
            let mut out: Vec<(usize, C64)> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                match out.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => out.push((r, v)),
                }
            }
            out.retain(|e| e.1 != czero());
            *col = out;
        }
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.factors != o.factors || self.n != o.n {
            return Err(Error::InvalidInput(format!(
                "operator shapes differ: {}^{} vs {}^{}",
                self.n, self.factors, o.n, o.factors
            )));
        }
        Ok(())
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        self.cols[c].iter().filter(|e| e.0 == r).map(|e| e.1).sum()
    }

    /// Tensor digits of a flat index, first factor first.
    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut d = vec![0; self.factors];
        for k in (0..self.factors).rev() {
            d[k] = idx % self.n;
            idx /= self.n;
        }
        d
    }

    pub fn index_of(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &j| acc * self.n + j)
    }

    fn in_window(&self, idx: usize, w: usize) -> bool {
        self.digits(idx).iter().all(|&j| j < w)
    }

    /// Flat indices whose digits are all inside the window.
    pub fn window_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.in_window(i, self.window)).collect()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.lin_comb(C64::new(1.0, 0.0), o, C64::new(1.0, 0.0))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.lin_comb(C64::new(1.0, 0.0), o, C64::new(-1.0, 0.0))
    }

    /// `a self + b o`.
    pub fn lin_comb(&self, a: C64, o: &Self, b: C64) -> Result<Self> {
        self.same_shape(o)?;
        let mut cols = Vec::with_capacity(self.dim());
        for (x, y) in self.cols.iter().zip(&o.cols) {
            let mut col: Vec<(usize, C64)> = x.iter().map(|&(r, v)| (r, a * v)).collect();
            col.extend(y.iter().map(|&(r, v)| (r, b * v)));
            cols.push(col);
        }
        let mut out = TruncatedOperator {
            factors: self.factors,
            n: self.n,
            window: self.window.min(o.window),
            shift: self.shift.max(o.shift),
            cols,
        };
        out.compress();
        Ok(out)
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.clone();
        for col in out.cols.iter_mut() {
            for e in col.iter_mut() {
                e.1 *= c;
            }
        }
        out.cols.iter_mut().for_each(|col| col.retain(|e| e.1 != czero()));
        out
    }

    /// Product `self * o`; the window shrinks by the smaller shift.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let d = self.dim();
        let mut acc = vec![czero(); d];
        let mut touched: Vec<usize> = Vec::new();
        let mut cols = Vec::with_capacity(d);
        for col in &o.cols {
            for &(k, b) in col {
                for &(r, a) in &self.cols[k] {
                    if acc[r] == czero() {
                        touched.push(r);
                    }
                    acc[r] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::with_capacity(touched.len());
            for &r in &touched {
                if acc[r] != czero() {
                    out.push((r, acc[r]));
                }
                acc[r] = czero();
            }
            touched.clear();
            cols.push(out);
        }
        let window = if self.factors == 0 {
            self.window.min(o.window)
        } else {
            self.window.min(o.window).saturating_sub(self.shift.min(o.shift))
        };
        Ok(TruncatedOperator {
            factors: self.factors,
            n: self.n,
            window,
            shift: (self.shift + o.shift).min(self.n),
            cols,
        })
    }

    /// `self (x) o` with `self` in the leading factors.
    pub fn kron(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::InvalidInput("kron of different truncations".into()));
        }
        let factors = self.factors + o.factors;
        let d = checked_dim(factors, self.n)?;
        let od = o.dim();
        let mut cols = vec![Vec::new(); d];
        for (ca, cola) in self.cols.iter().enumerate() {
            for (cb, colb) in o.cols.iter().enumerate() {
                let col = &mut cols[ca * od + cb];
                for &(ra, a) in cola {
                    for &(rb, b) in colb {
                        col.push((ra * od + rb, a * b));
                    }
                }
            }
        }
        let (window, shift) = match (self.factors, o.factors) {
            (0, _) => (o.window, o.shift),
            (_, 0) => (self.window, self.shift),
            _ => (self.window.min(o.window), self.shift.max(o.shift)),
        };
        Ok(TruncatedOperator { factors, n: self.n, window, shift, cols })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut cols = vec![Vec::new(); self.dim()];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                cols[r].push((c, v.conj()));
            }
        }
        TruncatedOperator { cols, ..*self }
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.entry(i, i)).collect()
    }

    /// Largest off-diagonal modulus over all stored entries.
    pub fn off_diagonal_max(&self) -> f64 {
        let mut m: f64 = 0.0;
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                if r != c {
                    m = m.max(v.norm());
                }
            }
        }
        m
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.off_diagonal_max() <= tol
    }

    /// Largest entry modulus on the window.
    pub fn window_norm(&self) -> f64 {
        let w = self.window;
        let mut m: f64 = 0.0;
        for (c, col) in self.cols.iter().enumerate() {
            if !self.in_window(c, w) {
                continue;
            }
            for &(r, v) in col {
                if self.in_window(r, w) {
                    m = m.max(v.norm());
                }
            }
        }
        m
    }

    /// Largest entry modulus of `self - o` on the common window.
    pub fn window_distance(&self, o: &Self) -> Result<f64> {
        let d = self.sub(o)?;
        Ok(d.window_norm())
    }

    /// Dense matrix on the window indices (in `window_indices` order).
    pub fn window_matrix(&self) -> DMatrix<C64> {
        let idx = self.window_indices();
        let mut pos = vec![usize::MAX; self.dim()];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let mut m = DMatrix::from_element(idx.len(), idx.len(), czero());
        for (k, &c) in idx.iter().enumerate() {
            for &(r, v) in &self.cols[c] {
                if pos[r] != usize::MAX {
                    m[(pos[r], k)] += v;
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let d = self.dim();
        let mut m = DMatrix::from_element(d, d, czero());
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                m[(r, c)] += v;
            }
        }
        m
    }

    /// Compress every factor to its first `m` levels.
    pub fn restrict_levels(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.n {
            return Err(Error::InvalidInput(format!("cannot restrict {} levels to {m}", self.n)));
        }
        let mut out = Self::zero(self.factors, m)?;
        for (c, col) in self.cols.iter().enumerate() {
            let dc = self.digits(c);
            if dc.iter().any(|&j| j >= m) {
                continue;
            }
            let nc = dc.iter().fold(0, |acc, &j| acc * m + j);
            for &(r, v) in col {
                let dr = self.digits(r);
                if dr.iter().all(|&j| j < m) {
                    out.cols[nc].push((dr.iter().fold(0, |acc, &j| acc * m + j), v));
                }
            }
        }
        out.window = self.window.min(m);
        out.shift = self.shift;
        Ok(out)
    }

    /// Stored entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }
}

impl fmt::Display for TruncatedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "operator levels={} factors={} window={} shift={} nnz={}",
            self.n,
            self.factors,
            self.window,
            self.shift,
            self.nnz()
        )
    }
}

/// A point of the maximal torus, one unit complex number per node.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    t: Vec<C64>,
}

impl TorusPoint {
    pub fn new(t: Vec<C64>) -> Result<Self> {
        if t.iter().any(|z| (z.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::InvalidInput("torus coordinates must have modulus 1".into()));
        }
        Ok(TorusPoint { t })
    }

    pub fn identity(rank: usize) -> Self {
        TorusPoint { t: vec![C64::new(1.0, 0.0); rank] }
    }

    /// `t_i = exp(2 pi i k_i / n)`.
    pub fn root_of_unity(k: &[i64], n: u32) -> Self {
        let t = k
            .iter()
            .map(|&x| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * x as f64 / n as f64))
            .collect();
        TorusPoint { t }
    }

    pub fn coords(&self) -> &[C64] {
        &self.t
    }

    /// `t^mu` for `mu` in fundamental coordinates.
    pub fn pow(&self, mu: &[i64]) -> C64 {
        self.t.iter().zip(mu).map(|(z, &m)| z.powi(m as i32)).product()
    }
}

/// Generators `t_ij` of `C_q[SU(2)]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TGen {
    T11,
    T12,
    T21,
    T22,
}

impl TGen {
    /// Level displacement under `pi_q`.
    pub fn displacement(self) -> i64 {
        match self {
            TGen::T11 => -1,
            TGen::T22 => 1,
            _ => 0,
        }
    }

    /// Basis indices `(bra, ket)` in the spin-1/2 module.
    pub fn indices(self) -> (usize, usize) {
        match self {
            TGen::T11 => (0, 0),
            TGen::T12 => (0, 1),
            TGen::T21 => (1, 0),
            TGen::T22 => (1, 1),
        }
    }
}

impl std::str::FromStr for TGen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches('t') {
            "11" => Ok(TGen::T11),
            "12" => Ok(TGen::T12),
            "21" => Ok(TGen::T21),
            "22" => Ok(TGen::T22),
            _ => Err(Error::InvalidInput(format!("unknown generator {s:?}"))),
        }
    }
}

fn generator_entries(g: TGen, n: usize, q: f64) -> Vec<(usize, usize, C64)> {
    let re = |x: f64| C64::new(x, 0.0);
    match g {
        TGen::T11 => (1..n).map(|j| (j - 1, j, re((1.0 - q.powi(2 * j as i32)).sqrt()))).collect(),
        TGen::T22 => (0..n - 1).map(|j| (j + 1, j, re((1.0 - q.powi(2 * (j as i32 + 1))).sqrt()))).collect(),
        TGen::T12 => (0..n).map(|j| (j, j, re(-q.powi(j as i32 + 1)))).collect(),
        TGen::T21 => (0..n).map(|j| (j, j, re(q.powi(j as i32)))).collect(),
    }
}

/// `pi_q` of a word in the `t_ij`, multiplied left to right, on `N` levels.
/// The window is `N` minus the number of level-shifting letters.
pub fn pi_su2(word: &[TGen], n: usize, q: f64) -> Result<TruncatedOperator> {
    if n < 2 {
        return Err(Error::InvalidInput("truncation needs at least 2 levels".into()));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidInput(format!("q = {q} is outside (0, 1)")));
    }
    let mut op = TruncatedOperator::identity(1, n)?;
    for &g in word {
        let x = TruncatedOperator::from_entries(n, n, 0, &generator_entries(g, n, q))?;
        op = op.mul(&x)?;
    }
    let shifting = word.iter().filter(|g| g.displacement() != 0).count();
    let disp: i64 = word.iter().map(|g| g.displacement()).sum();
    op.window = n.saturating_sub(shifting);
    op.shift = disp.unsigned_abs() as usize;
    Ok(op)
}

/// Residuals of the defining relations of `C_q[SU(2)]` and of the star
/// structure under `pi_q`, on the safe window.
pub fn su2_relation_residuals(n: usize, q: f64) -> Result<Vec<(&'static str, f64)>> {
    use TGen::*;
    let p = |w: &[TGen]| pi_su2(w, n, q);
    let c = |x: f64| C64::new(x, 0.0);
    let id = TruncatedOperator::identity(1, n)?;
    let mut out = Vec::new();
    for (name, a, b) in [
        ("t11 t12 = q t12 t11", T11, T12),
        ("t21 t22 = q t22 t21", T21, T22),
        ("t11 t21 = q t21 t11", T11, T21),
        ("t12 t22 = q t22 t12", T12, T22),
    ] {
        let d = p(&[a, b])?.lin_comb(c(1.0), &p(&[b, a])?, c(-q))?;
        out.push((name, d.window_norm()));
    }
    let d = p(&[T12, T21])?.sub(&p(&[T21, T12])?)?;
    out.push(("t12 t21 = t21 t12", d.window_norm()));
    let d = p(&[T11, T22])?.sub(&p(&[T22, T11])?)?.lin_comb(c(1.0), &p(&[T12, T21])?, c(-(q - 1.0 / q)))?;
    out.push(("t11 t22 - t22 t11 = (q - 1/q) t12 t21", d.window_norm()));
    let d = p(&[T11, T22])?.lin_comb(c(1.0), &p(&[T12, T21])?, c(-q))?.sub(&id)?;
    out.push(("t11 t22 - q t12 t21 = 1", d.window_norm()));
    let d = p(&[T11])?.adjoint().sub(&p(&[T22])?)?;
    out.push(("t11^* = t22", d.window_norm()));
    let d = p(&[T12])?.adjoint().lin_comb(c(1.0), &p(&[T21])?, c(q))?;
    out.push(("t12^* = -q t21", d.window_norm()));
    Ok(out)
}
