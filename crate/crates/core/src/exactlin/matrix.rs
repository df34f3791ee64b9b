use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::ExactScalar;

/// Sparse matrix over the Gaussian rationals. Only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), ExactScalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix({}x{}) [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), ExactScalar::one());
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: Vec<Vec<ExactScalar>>) -> Self {
        assert_eq!(data.len(), rows, "row count mismatch");
        let mut m = Self::zeros(rows, cols);
        for (r, row) in data.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "column count mismatch");
            for (c, v) in row.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| ExactScalar::from_int(v)).collect())
            .collect();
        Self::from_dense(rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<ExactScalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((r, c), v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> ExactScalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &ExactScalar) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<ExactScalar>> {
        let mut d = vec![vec![ExactScalar::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn column(&self, c: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<ExactScalar>> {
        let mut cols = vec![vec![ExactScalar::zero(); self.rows]; self.cols];
        for (r, c, v) in self.iter() {
            cols[c][r] = v.clone();
        }
        cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, v.conj())).collect(),
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, v * s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut acc: BTreeMap<(usize, usize), ExactScalar> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in other.entries.range((k, 0)..(k + 1, 0)) {
                let e = acc.entry((i, j)).or_insert_with(ExactScalar::zero);
                *e += &(a * b);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Self {
            rows: self.rows,
            cols: other.cols,
            entries: acc,
        }
    }

    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![ExactScalar::zero(); self.rows];
        for (r, c, a) in self.iter() {
            if !v[c].is_zero() {
                out[r] += &(a * &v[c]);
            }
        }
        out
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = self.clone();
        out.cols += other.cols;
        for (r, c, v) in other.iter() {
            out.entries.insert((r, c + self.cols), v.clone());
        }
        out
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut out = self.clone();
        out.rows += other.rows;
        for (r, c, v) in other.iter() {
            out.entries.insert((r + self.rows, c), v.clone());
        }
        out
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for (r, c, v) in block.iter() {
            self.set(r0 + r, c0 + c, v.clone());
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for (r, c, v) in self.iter() {
            if r >= r0 && r < r0 + rows && c >= c0 && c < c0 + cols {
                out.entries.insert((r - r0, c - c0), v.clone());
            }
        }
        out
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut out = Self::zeros(keep.len(), self.cols);
        for (r, c, v) in self.iter() {
            if let Some(&nr) = pos.get(&r) {
                out.entries.insert((nr, c), v.clone());
            }
        }
        out
    }

    pub fn select_cols(&self, keep: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Self::zeros(self.rows, keep.len());
        for (r, c, v) in self.iter() {
            if let Some(&nc) = pos.get(&c) {
                out.entries.insert((r, nc), v.clone());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other` with row index `i·other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, j, a) in self.iter() {
            for (k, l, b) in other.iter() {
                out.entries
                    .insert((i * other.rows + k, j * other.cols + l), a * b);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.len() == self.rows
            && self.iter().all(|(r, c, v)| r == c && v.is_one())
    }
}
