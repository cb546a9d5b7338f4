//! Scalars for module matrices: exact rationals or `f64`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field of matrix entries. `EXACT` fields decide zero exactly; inexact
/// ones compare against a scale-relative tolerance.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn from_f64(x: f64) -> Self;
    /// Zero test relative to `scale` (ignored by exact fields).
    fn negligible(&self, scale: f64) -> bool;
    fn to_string_repr(&self) -> String;
    fn parse_repr(s: &str) -> Option<Self>;

    fn is_exact_zero(&self) -> bool {
        self.negligible(0.0)
    }

    fn powi(&self, k: i64) -> Self {
        let mut acc = Self::one();
        let base = if k < 0 { Self::one() / self.clone() } else { self.clone() };
        for _ in 0..k.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }
}

pub const FLOAT_TOL: f64 = 1e-10;

impl Field for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_TOL * scale.max(1e-300)
    }
    fn to_string_repr(&self) -> String {
        format!("{:e}", self)
    }
    fn parse_repr(s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn powi(&self, k: i64) -> Self {
        f64::powi(*self, k as i32)
    }
}

impl Field for BigRational {
    const EXACT: bool = true;
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(<BigRational as Zero>::zero)
    }
    fn negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }
    fn to_string_repr(&self) -> String {
        self.to_string()
    }
    fn parse_repr(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

/// Numerical backend for module construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Backend {
    /// Exact rational arithmetic at a rational value of `q`.
    Exact,
    /// Double precision with an orthonormal weight basis.
    Float,
}

impl std::str::FromStr for Backend {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            _ => Err(crate::Error::InvalidInput(format!("unknown backend '{s}'"))),
        }
    }
}

/// Convert a float in `(0,1)` to a nearby exact rational with small denominator.
pub fn rational_approx(x: f64) -> BigRational {
    let r = num_rational::Rational64::approximate_float(x).unwrap_or_else(|| num_rational::Rational64::new(1, 2));
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn abs_f64<T: Field>(x: &T) -> f64 {
    x.to_f64().abs()
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DMat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Field> DMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DMat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, o: &DMat<T>) -> DMat<T> {
        assert_eq!(self.cols, o.rows);
        let mut out: DMat<T> = DMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_exact_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_exact_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_exact_zero() && !b.is_exact_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> DMat<T> {
        let mut out = DMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(abs_f64).fold(0.0, f64::max)
    }

    pub fn inverse(&self) -> Option<DMat<T>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut inv: DMat<T> = DMat::identity(n);
        for c in 0..n {
            let p = (c..n).max_by(|&x, &y| abs_f64(a.get(x, c)).total_cmp(&abs_f64(a.get(y, c))))?;
            if a.get(p, c).negligible(scale) {
                return None;
            }
            for j in 0..n {
                a.data.swap(c * n + j, p * n + j);
                inv.data.swap(c * n + j, p * n + j);
            }
            let piv = a.get(c, c).clone();
            for j in 0..n {
                let v = a.get(c, j).clone() / piv.clone();
                a.set(c, j, v);
                let v = inv.get(c, j).clone() / piv.clone();
                inv.set(c, j, v);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_exact_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).clone() - f.clone() * a.get(c, j).clone();
                    a.set(r, j, v);
                    let v = inv.get(r, j).clone() - f.clone() * inv.get(c, j).clone();
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }
}

/// Rank by Gaussian elimination with partial pivoting. Exact for rationals;
/// for floats entries below `FLOAT_TOL * max|entry|` count as zero.
pub fn rank<T: Field>(m: &DMat<T>) -> usize {
    let mut a = m.clone();
    let scale = a.max_abs();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let p = (r..rows)
            .max_by(|&x, &y| abs_f64(a.get(x, c)).total_cmp(&abs_f64(a.get(y, c))))
            .unwrap();
        if a.get(p, c).negligible(scale) {
            continue;
        }
        for j in 0..cols {
            a.data.swap(r * cols + j, p * cols + j);
        }
        let piv = a.get(r, c).clone();
        for i in r + 1..rows {
            let f = a.get(i, c).clone();
            if f.is_exact_zero() {
                continue;
            }
            let f = f / piv.clone();
            for j in c..cols {
                let v = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                a.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

/// Sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<T> {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, T)>>,
}

impl<T: Field> SparseMat<T> {
    pub fn zeros(rows: usize, ncols: usize) -> Self {
        SparseMat { rows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { rows: n, cols: (0..n).map(|i| vec![(i, T::one())]).collect() }
    }

    pub fn diagonal(d: Vec<T>) -> Self {
        SparseMat { rows: d.len(), cols: d.into_iter().enumerate().map(|(i, v)| vec![(i, v)]).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn push(&mut self, r: usize, c: usize, v: T) {
        if !v.is_exact_zero() {
            self.cols[c].push((r, v));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        let mut acc = T::zero();
        for (i, v) in &self.cols[c] {
            if *i == r {
                acc = acc + v.clone();
            }
        }
        acc
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Merge duplicate entries and drop exact zeros.
    pub fn compress(&mut self) {
        for col in self.cols.iter_mut() {
            col.sort_by_key(|e| e.0);
            let mut out: Vec<(usize, T)> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                match out.last_mut() {
                    Some(last) if last.0 == r => last.1 = last.1.clone() + v,
                    _ => out.push((r, v)),
                }
            }
            out.retain(|e| !e.1.is_exact_zero());
            *col = out;
        }
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            if x[c].is_exact_zero() {
                continue;
            }
            for (r, v) in col {
                y[*r] = y[*r].clone() + v.clone() * x[c].clone();
            }
        }
        y
    }

    pub fn column_dense(&self, c: usize) -> Vec<T> {
        let mut y = vec![T::zero(); self.rows];
        for (r, v) in &self.cols[c] {
            y[*r] = y[*r].clone() + v.clone();
        }
        y
    }

    pub fn transpose(&self) -> SparseMat<T> {
        let mut out = SparseMat::zeros(self.ncols(), self.rows);
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                out.cols[*r].push((c, v.clone()));
            }
        }
        out
    }

    /// `self * o`.
    pub fn mul(&self, o: &SparseMat<T>) -> SparseMat<T> {
        assert_eq!(self.ncols(), o.rows);
        let mut out = SparseMat::zeros(self.rows, o.ncols());
        for (c, col) in o.cols.iter().enumerate() {
            for (k, b) in col {
                for (r, a) in &self.cols[*k] {
                    out.cols[c].push((*r, a.clone() * b.clone()));
                }
            }
        }
        out.compress();
        out
    }

    pub fn add(&self, o: &SparseMat<T>) -> SparseMat<T> {
        self.lin_comb(&T::one(), o, &T::one())
    }

    /// `a * self + b * o`.
    pub fn lin_comb(&self, a: &T, o: &SparseMat<T>, b: &T) -> SparseMat<T> {
        assert_eq!(self.rows, o.rows);
        assert_eq!(self.ncols(), o.ncols());
        let mut out = SparseMat::zeros(self.rows, self.ncols());
        for c in 0..self.ncols() {
            for (r, v) in &self.cols[c] {
                out.cols[c].push((*r, a.clone() * v.clone()));
            }
            for (r, v) in &o.cols[c] {
                out.cols[c].push((*r, b.clone() * v.clone()));
            }
        }
        out.compress();
        out
    }

    pub fn scale(&self, a: &T) -> SparseMat<T> {
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|(r, v)| (*r, a.clone() * v.clone())).collect())
                .collect(),
        }
    }

    /// Multiply row `r` by `d[r]` (i.e. `diag(d) * self`).
    pub fn scale_rows(&self, d: &[T]) -> SparseMat<T> {
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|(r, v)| (*r, d[*r].clone() * v.clone())).collect())
                .collect(),
        }
    }

    /// Multiply column `c` by `d[c]` (i.e. `self * diag(d)`).
    pub fn scale_cols(&self, d: &[T]) -> SparseMat<T> {
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .enumerate()
                .map(|(c, col)| col.iter().map(|(r, v)| (*r, v.clone() * d[c].clone())).collect())
                .collect(),
        }
    }

    /// Kronecker product.
    pub fn kron(&self, o: &SparseMat<T>) -> SparseMat<T> {
        let (n2, m2) = (o.rows, o.ncols());
        let mut out = SparseMat::zeros(self.rows * n2, self.ncols() * m2);
        for (c1, col1) in self.cols.iter().enumerate() {
            for (c2, col2) in o.cols.iter().enumerate() {
                let c = c1 * m2 + c2;
                for (r1, a) in col1 {
                    for (r2, b) in col2 {
                        out.cols[c].push((r1 * n2 + r2, a.clone() * b.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.cols
            .iter()
            .flat_map(|c| c.iter().map(|e| abs_f64(&e.1)))
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMat<T> {
        let mut m: DMat<T> = DMat::zeros(self.rows, self.ncols());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                let x = m.get(*r, c).clone() + v.clone();
                m.set(*r, c, x);
            }
        }
        m
    }

    pub fn from_dense(m: &DMat<T>) -> Self {
        let mut out = SparseMat::zeros(m.rows, m.cols);
        for r in 0..m.rows {
            for c in 0..m.cols {
                out.push(r, c, m.get(r, c).clone());
            }
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> DMat<T> {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        let mut m: DMat<T> = DMat::zeros(rows.len(), cols.len());
        for (k, &c) in cols.iter().enumerate() {
            for (r, v) in &self.cols[c] {
                if pos[*r] != usize::MAX {
                    let x = m.get(pos[*r], k).clone() + v.clone();
                    m.set(pos[*r], k, x);
                }
            }
        }
        m
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> SparseMat<U> {
        SparseMat {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.iter().map(|(r, v)| (*r, f(v))).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_rank() {
        let m = DMat {
            rows: 3,
            cols: 3,
            data: [1, 2, 3, 2, 4, 6, 1, 0, 1].iter().map(|&x| BigRational::from_i64(x)).collect(),
        };
        assert_eq!(rank(&m), 2);
        let f = DMat { rows: 2, cols: 2, data: vec![1.0, 1.0, 1.0, 1.0 + 1e-14] };
        assert_eq!(rank(&f), 1);
    }

    #[test]
    fn sparse_products() {
        let a = SparseMat::from_dense(&DMat { rows: 2, cols: 2, data: vec![0.0, 1.0, 0.0, 0.0] });
        let p = a.mul(&a.transpose());
        assert_eq!(p.get(0, 0), 1.0);
        assert_eq!(p.get(1, 1), 0.0);
        let k = a.kron(&SparseMat::identity(2));
        assert_eq!(k.get(1, 3), 1.0);
    }
}
