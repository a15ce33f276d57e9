use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;

/// A subspace of `F^n` kept in reduced row-echelon form.
///
/// Rows are sorted by pivot column, each pivot is 1 and every other row is
/// zero in that column, so two spans are equal exactly when their rows are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpan {
    field: FieldSpec,
    len: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl VectorSpan {
    pub fn new(field: FieldSpec, len: usize) -> Self {
        VectorSpan { field, len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a>(
        field: FieldSpec,
        len: usize,
        vectors: impl IntoIterator<Item = &'a [Scalar]>,
    ) -> Self {
        let mut s = Self::new(field, len);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn full(field: FieldSpec, len: usize) -> Self {
        let mut s = Self::new(field, len);
        for i in 0..len {
            let mut v = vec![field.zero(); len];
            v[i] = field.one();
            s.rows.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Length of the ambient vectors.
    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating every pivot column. Linear in `v`,
    /// and zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.len, "vector length differs from ambient dimension");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` along the echelon basis, if `v` is in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn extend_from(&mut self, other: &VectorSpan) -> bool {
        let mut grew = false;
        for r in &other.rows {
            grew |= self.insert(r);
        }
        grew
    }

    pub fn sum(&self, other: &VectorSpan) -> VectorSpan {
        let mut s = self.clone();
        s.extend_from(other);
        s
    }

    pub fn is_subspace_of(&self, other: &VectorSpan) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn intersection(&self, other: &VectorSpan) -> VectorSpan {
        // x = sum c_i u_i lies in `other` iff sum c_i reduce_other(u_i) = 0.
        let residuals: Vec<Vec<Scalar>> = self.rows.iter().map(|u| other.reduce(u)).collect();
        let mut out = VectorSpan::new(self.field, self.len);
        if residuals.is_empty() {
            return out;
        }
        let m = Matrix::from_columns(self.field, self.len, residuals).expect("consistent shape");
        for c in m.kernel() {
            let mut v = vec![self.field.zero(); self.len];
            for (ci, u) in c.iter().zip(&self.rows) {
                if ci.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(u) {
                    if !y.is_zero() {
                        *x = &*x + &(ci * y);
                    }
                }
            }
            out.insert(&v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let q = FieldSpec::Rationals;
        let a = v(q, &[1, 2, 0]);
        let b = v(q, &[0, 1, 1]);
        let s1 = VectorSpan::from_vectors(q, 3, [a.as_slice(), b.as_slice()]);
        let s2 = VectorSpan::from_vectors(q, 3, [b.as_slice(), a.as_slice()]);
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
        assert!(s1.contains(&v(q, &[1, 3, 1])));
        assert!(!s1.contains(&v(q, &[0, 0, 1])));
    }

    #[test]
    fn intersection_of_planes() {
        let q = FieldSpec::Rationals;
        let p1 = VectorSpan::from_vectors(q, 3, [v(q, &[1, 0, 0]).as_slice(), v(q, &[0, 1, 0]).as_slice()]);
        let p2 = VectorSpan::from_vectors(q, 3, [v(q, &[0, 1, 0]).as_slice(), v(q, &[0, 0, 1]).as_slice()]);
        let i = p1.intersection(&p2);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(q, &[0, 5, 0])));
    }

    #[test]
    fn coordinates_reconstruct() {
        let f = FieldSpec::prime(5).unwrap();
        let s = VectorSpan::from_vectors(f, 3, [v(f, &[1, 1, 0]).as_slice(), v(f, &[0, 2, 1]).as_slice()]);
        let x = v(f, &[3, 1, 4]);
        let c = s.coordinates(&x).unwrap();
        let mut rebuilt = vec![f.zero(); 3];
        for (ci, row) in c.iter().zip(s.basis()) {
            for (r, y) in rebuilt.iter_mut().zip(row) {
                *r = &*r + &(ci * y);
            }
        }
        assert_eq!(rebuilt, x);
    }
}
