//! Dense matrices over a [`Ring`], with Gaussian elimination over fields.
//!
//! Operators act on column vectors: column `c` of the matrix of `T` holds
//! the coordinates of `T(x_c)`, so `S * T` is "apply `T`, then `S`".

use super::field::Scalar;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        Matrix { ring, rows, cols, data }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.ring.one();
        }
        m
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix { ring, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from its columns (each of length `rows`).
    pub fn from_columns(ring: R, rows: usize, columns: Vec<Vec<R::Elem>>) -> Result<Self> {
        let cols = columns.len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::ShapeMismatch("column length differs from row count".into()));
        }
        let mut m = Self::zeros(ring, rows, cols);
        for (c, col) in columns.into_iter().enumerate() {
            for (r, v) in col.into_iter().enumerate() {
                m.data[r * cols + c] = v;
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R::Elem) {
        self.data[r * self.cols + c] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[R::Elem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[R::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entries in column-major order.
    pub fn column_major(&self) -> Vec<R::Elem> {
        (0..self.cols).flat_map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.ring.neg(a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let data = self.data.iter().map(|a| self.ring.scale(a, c)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if self.ring.is_zero(b) {
                        continue;
                    }
                    let t = self.ring.mul(a, b);
                    let idx = i * other.cols + j;
                    self.ring.add_assign(&mut out.data[idx], &t);
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch("vector length".into()));
        }
        let mut out = vec![self.ring.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (k, x) in v.iter().enumerate() {
                let a = self.get(i, k);
                if self.ring.is_zero(a) || self.ring.is_zero(x) {
                    continue;
                }
                self.ring.add_assign(o, &self.ring.mul(a, x));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.ring.clone(), self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ring.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix { ring, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row-echelon form and pivot columns. The pivot in each column
    /// is taken from the first row (at or below the current one) holding a
    /// nonzero entry.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.ring.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.ring.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                let v = m.ring.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if m.ring.is_zero(&factor) {
                    continue;
                }
                for c in 0..m.cols {
                    let sub = m.ring.mul(&factor, m.get(row, c));
                    let v = m.ring.sub(m.get(r, c), &sub);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `None` when the matrix is singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.ring.clone(), n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.ring.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.ring.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.ring.zero(); self.cols];
                v[f] = self.ring.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = self.ring.neg(r.get(i, f));
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;

    fn gf3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn mat(f: FieldSpec, rows: &[&[i64]]) -> Matrix<FieldSpec> {
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = mat(gf3(), &[&[0, 2, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(Matrix::identity(gf3(), 3).mul(&m).unwrap(), m);
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(gf3(), &[&[1, 2, 0], &[0, 1, 1], &[1, 0, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(gf3(), 3));
        let singular = mat(gf3(), &[&[1, 2], &[2, 1]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(Matrix::zeros(gf3(), 3, 3).rank(), 0);
    }

    #[test]
    fn right_multiplication_by_f2_squares_to_minus_identity_block() {
        let m = mat(gf3(), &[&[0, 2, 0], &[1, 0, 0], &[0, 0, 0]]);
        let sq = m.mul(&m).unwrap();
        assert_eq!(sq, mat(gf3(), &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 0]]));
    }

    #[test]
    fn shape_and_ring_errors() {
        let a = Matrix::zeros(gf3(), 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::ShapeMismatch(_))));
        let b = Matrix::zeros(FieldSpec::Rationals, 3, 3);
        let c = Matrix::zeros(gf3(), 3, 3);
        assert!(matches!(b.mul(&c), Err(Error::RingMismatch)));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let q = FieldSpec::Rationals;
        let m = mat(q, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.len() + m.rank(), 4);
        for v in k {
            assert!(m.apply(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }
}
