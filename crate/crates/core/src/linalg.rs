//! Dense matrices over a [`Field`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Row-major dense matrix of field elements.
///
/// The field is passed to every operation rather than stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is only consulted
    /// when `rows` is empty.
    pub fn from_rows(rows: &[Vec<Elem>], cols: usize) -> Result<Matrix> {
        let cols = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    /// Convenience constructor from raw element codes (unchecked range).
    pub fn from_codes(rows: usize, cols: usize, codes: &[u16]) -> Result<Matrix> {
        Matrix::new(rows, cols, codes.iter().map(|&c| Elem(c)).collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Every entry lies in `[0, q)`.
    pub fn is_over(&self, f: &Field) -> bool {
        self.data.iter().all(|e| e.code() < f.q())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form. Pivots are chosen column by column, taking
    /// the first row (top to bottom) with a nonzero entry.
    pub fn rref(&self, f: &Field) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(lead, j);
                m.set(lead, j, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).rank
    }

    /// The nonzero rows of the reduced form: a canonical basis of the row space.
    pub fn row_space_basis(&self, f: &Field) -> Matrix {
        let red = self.rref(f);
        let mut data = red.matrix.data;
        data.truncate(red.rank * self.cols);
        Matrix { rows: red.rank, cols: self.cols, data }
    }

    /// Basis of `{x : M x^T = 0}`, one row per free column.
    pub fn nullspace_basis(&self, f: &Field) -> Matrix {
        let red = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, Elem::ONE);
            for (pr, &pc) in red.pivots.iter().enumerate() {
                out.set(i, pc, f.neg(red.matrix.get(pr, fc)));
            }
        }
        out
    }

    /// `M v^T`.
    pub fn apply(&self, f: &Field, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|r| f.dot(self.row(r), v)).collect())
    }

    /// `v M` for a row vector `v` of length `rows`.
    pub fn combine_rows(&self, f: &Field, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(coef, x));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = other.combine_rows(f, self.row(r))?;
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(&row);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, f: &Field, v: &[Elem]) -> bool {
        let mut rows = self.row_vecs();
        let before = self.rank(f);
        rows.push(v.to_vec());
        Matrix::from_rows(&rows, self.cols).map(|m| m.rank(f) == before).unwrap_or(false)
    }

    pub fn same_row_space(&self, f: &Field, other: &Matrix) -> bool {
        self.cols == other.cols && self.row_space_basis(f) == other.row_space_basis(f)
    }

    /// Columns selected in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Entrywise map, e.g. a field automorphism.
    pub fn map(&self, mut g: impl FnMut(Elem) -> Elem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&e| g(e)).collect() }
    }

    /// Determinant of a square matrix.
    pub fn det(&self, f: &Field) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(Elem::ZERO);
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for r in c + 1..n {
                let factor = f.mul(m.get(r, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(c, j)));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }
}
