use super::element::{Element, HomogeneousElement, Parity};
use super::SuperAlgebra;
use crate::arith::{FieldSpec, Matrix, Scalar, VectorSpan};
use crate::error::{Error, Result};

/// A graded subspace `B = (B ∩ A_0) + (B ∩ A_1)`, stored as two echelonized
/// spans of homogeneous coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSuperspace {
    parity: Vec<u8>,
    even: VectorSpan,
    odd: VectorSpan,
}

impl SubSuperspace {
    pub fn zero(a: &SuperAlgebra) -> Self {
        SubSuperspace {
            parity: a.parity().to_vec(),
            even: VectorSpan::new(a.field(), a.dim()),
            odd: VectorSpan::new(a.field(), a.dim()),
        }
    }

    pub fn whole(a: &SuperAlgebra) -> Self {
        let mut s = Self::zero(a);
        for i in 0..a.dim() {
            s.insert_homogeneous(a.basis_element(i).coords());
        }
        s
    }

    /// Span of the homogeneous components of the given elements.
    pub fn span_of_parts<'a>(a: &SuperAlgebra, elements: impl IntoIterator<Item = &'a Element>) -> Self {
        let mut s = Self::zero(a);
        for x in elements {
            s.insert_parts(a, x);
        }
        s
    }

    /// Span of the given vectors, which must already form a graded subspace:
    /// every homogeneous component of every vector has to lie in the span.
    pub fn from_vectors(a: &SuperAlgebra, vectors: &[Element]) -> Result<Self> {
        let mut plain = VectorSpan::new(a.field(), a.dim());
        for v in vectors {
            if v.len() != a.dim() {
                return Err(Error::AlgebraMismatch);
            }
            plain.insert(v.coords());
        }
        for (index, v) in vectors.iter().enumerate() {
            let (e, o) = v.split(a);
            if !plain.contains(e.coords()) || !plain.contains(o.coords()) {
                return Err(Error::NotGraded { index });
            }
        }
        Ok(Self::span_of_parts(a, vectors))
    }

    pub fn basis_span(a: &SuperAlgebra, indices: &[usize]) -> Self {
        let mut s = Self::zero(a);
        for &i in indices {
            s.insert_homogeneous(a.basis_element(i).coords());
        }
        s
    }

    pub fn field(&self) -> FieldSpec {
        self.even.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.parity.len()
    }

    pub fn even(&self) -> &VectorSpan {
        &self.even
    }

    pub fn odd(&self) -> &VectorSpan {
        &self.odd
    }

    pub fn part(&self, p: Parity) -> &VectorSpan {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn dim(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn parity_of_vector(&self, v: &[Scalar]) -> Option<Parity> {
        let mut found = None;
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let p = Parity::from_bit(self.parity[i]);
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        found
    }

    /// Inserts a homogeneous vector (zero vectors are ignored).
    pub(crate) fn insert_homogeneous(&mut self, v: &[Scalar]) -> bool {
        match self.parity_of_vector(v) {
            Some(Parity::Even) => self.even.insert(v),
            Some(Parity::Odd) => self.odd.insert(v),
            None => {
                assert!(v.iter().all(Scalar::is_zero), "vector is not homogeneous");
                false
            }
        }
    }

    pub(crate) fn insert_parts(&mut self, a: &SuperAlgebra, x: &Element) -> bool {
        let (e, o) = x.split(a);
        let g1 = self.even.insert(e.coords());
        let g2 = self.odd.insert(o.coords());
        g1 || g2
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.contains_coords(x.coords())
    }

    pub fn contains_coords(&self, v: &[Scalar]) -> bool {
        let mut even = v.to_vec();
        let mut odd = v.to_vec();
        for (i, &p) in self.parity.iter().enumerate() {
            if p == 0 {
                odd[i] = self.field().zero();
            } else {
                even[i] = self.field().zero();
            }
        }
        self.even.contains(&even) && self.odd.contains(&odd)
    }

    /// Residual of `v` modulo the subspace; zero iff `v` is in it.
    pub(crate) fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.even.reduce(v);
        self.odd.reduce(&r)
    }

    pub fn sum(&self, other: &SubSuperspace) -> SubSuperspace {
        SubSuperspace {
            parity: self.parity.clone(),
            even: self.even.sum(&other.even),
            odd: self.odd.sum(&other.odd),
        }
    }

    pub fn intersection(&self, other: &SubSuperspace) -> SubSuperspace {
        SubSuperspace {
            parity: self.parity.clone(),
            even: self.even.intersection(&other.even),
            odd: self.odd.intersection(&other.odd),
        }
    }

    pub fn is_subspace_of(&self, other: &SubSuperspace) -> bool {
        self.even.is_subspace_of(&other.even) && self.odd.is_subspace_of(&other.odd)
    }

    /// Echelon basis, even vectors first.
    pub fn homogeneous_basis(&self) -> Vec<HomogeneousElement> {
        let even = self.even.basis().iter().map(|v| (v, Parity::Even));
        let odd = self.odd.basis().iter().map(|v| (v, Parity::Odd));
        even.chain(odd)
            .map(|(v, p)| HomogeneousElement::from_parts(Element::from_coords(v.clone()), p))
            .collect()
    }

    pub fn basis_of_parity(&self, p: Parity) -> Vec<HomogeneousElement> {
        self.part(p)
            .basis()
            .iter()
            .map(|v| HomogeneousElement::from_parts(Element::from_coords(v.clone()), p))
            .collect()
    }

    /// Coordinates of `v` along [`Self::homogeneous_basis`].
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_coords(v) {
            return None;
        }
        let mut out: Vec<Scalar> = self.even.pivots().iter().map(|&p| v[p].clone()).collect();
        out.extend(self.odd.pivots().iter().map(|&p| v[p].clone()));
        Some(out)
    }

    pub(crate) fn coordinates_in(&self, basis: &[HomogeneousElement], v: &[Scalar]) -> Option<Vec<Scalar>> {
        debug_assert_eq!(basis.len(), self.dim());
        self.coordinates(v)
    }

    /// `U * V`: span of all products of homogeneous basis vectors.
    pub fn product(a: &SuperAlgebra, u: &SubSuperspace, v: &SubSuperspace) -> SubSuperspace {
        let mut out = Self::zero(a);
        let vb = v.homogeneous_basis();
        for x in u.homogeneous_basis() {
            for y in &vb {
                out.insert_homogeneous(&a.product(x.coords(), y.coords()));
            }
        }
        out
    }

    pub fn is_subalgebra(&self, a: &SuperAlgebra) -> bool {
        Self::product(a, self, self).is_subspace_of(self)
    }

    /// Smallest graded subalgebra containing the homogeneous components of
    /// the given elements: the fixpoint of `V <- V + V V`.
    pub fn generate_subalgebra<'a>(
        a: &SuperAlgebra,
        elements: impl IntoIterator<Item = &'a Element>,
    ) -> SubSuperspace {
        Self::span_of_parts(a, elements).subalgebra_closure(a)
    }

    pub fn subalgebra_closure(&self, a: &SuperAlgebra) -> SubSuperspace {
        let mut v = self.clone();
        let mut frontier = v.homogeneous_basis();
        while !frontier.is_empty() {
            let basis = v.homogeneous_basis();
            let mut next = v.clone();
            let mut fresh = Vec::new();
            for x in &frontier {
                for y in &basis {
                    for p in [a.product(x.coords(), y.coords()), a.product(y.coords(), x.coords())] {
                        if next.insert_homogeneous(&p) {
                            fresh.push(p);
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            v = next;
            // Re-derive the frontier from the echelon basis: new vectors may
            // have been rewritten during insertion.
            frontier = fresh
                .into_iter()
                .map(|p| {
                    let par = v.parity_of_vector(&p).expect("products of homogeneous vectors are homogeneous");
                    HomogeneousElement::from_parts(Element::from_coords(p), par)
                })
                .collect();
        }
        v
    }

    /// `N(B) = {x : xB ⊆ B and Bx ⊆ B}`, solved separately in each parity.
    pub fn normalizer(&self, a: &SuperAlgebra) -> Result<SubSuperspace> {
        if !self.is_subalgebra(a) {
            return Err(Error::NotASubalgebra);
        }
        let mut out = Self::zero(a);
        let b_basis = self.homogeneous_basis();
        for p in Parity::both() {
            let candidates = a.basis_of_parity(p);
            if candidates.is_empty() {
                continue;
            }
            // One column per candidate basis vector; rows collect residuals
            // of x_i b and b x_i modulo B for every basis vector b of B.
            let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(candidates.len());
            for &i in &candidates {
                let xi = a.basis_element(i);
                let mut col = Vec::new();
                for b in &b_basis {
                    col.extend(self.residual(&a.product(xi.coords(), b.coords())));
                    col.extend(self.residual(&a.product(b.coords(), xi.coords())));
                }
                columns.push(col);
            }
            let rows = columns[0].len();
            let kernel = if rows == 0 {
                (0..candidates.len())
                    .map(|c| {
                        let mut v = vec![a.field().zero(); candidates.len()];
                        v[c] = a.field().one();
                        v
                    })
                    .collect()
            } else {
                Matrix::from_columns(a.field(), rows, columns)?.kernel()
            };
            for coeffs in kernel {
                let mut x = vec![a.field().zero(); a.dim()];
                for (c, &i) in coeffs.iter().zip(&candidates) {
                    x[i] = c.clone();
                }
                out.insert_homogeneous(&x);
            }
        }
        Ok(out)
    }

    /// Quotient-free description used in reports: the echelon rows of both
    /// parts.
    pub fn rows(&self) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) {
        (self.even.basis().to_vec(), self.odd.basis().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn span(a: &SuperAlgebra, idx: &[usize]) -> SubSuperspace {
        SubSuperspace::basis_span(a, idx)
    }

    #[test]
    fn square_of_shestakov() {
        let a = corpus::shestakov_alt();
        let whole = SubSuperspace::whole(&a);
        let sq = SubSuperspace::product(&a, &whole, &whole);
        assert_eq!(sq, span(&a, &[0, 1]));
        let zero = SubSuperspace::zero(&a);
        assert!(SubSuperspace::product(&a, &whole, &zero).is_zero());
        let ef = span(&a, &[0, 1]);
        assert!(SubSuperspace::product(&a, &ef, &ef).is_zero());
    }

    #[test]
    fn generated_subalgebras() {
        let a = corpus::shestakov_alt();
        let f1 = a.basis_element(1);
        let f2 = a.basis_element(2);
        assert_eq!(SubSuperspace::generate_subalgebra(&a, [&f2]), span(&a, &[2]));
        assert_eq!(SubSuperspace::generate_subalgebra(&a, [&f1, &f2]), SubSuperspace::whole(&a));
        assert!(SubSuperspace::generate_subalgebra(&a, std::iter::empty()).is_zero());
    }

    #[test]
    fn normalizers() {
        let a = corpus::shestakov_alt();
        let whole = SubSuperspace::whole(&a);
        assert_eq!(SubSuperspace::zero(&a).normalizer(&a).unwrap(), whole);
        assert_eq!(span(&a, &[0]).normalizer(&a).unwrap(), span(&a, &[0, 1]));
        assert_eq!(span(&a, &[0, 1]).normalizer(&a).unwrap(), whole);
        // span{f2} is a subalgebra, span{f1, f2} is not
        assert!(matches!(span(&a, &[1, 2]).normalizer(&a), Err(Error::NotASubalgebra)));
    }

    #[test]
    fn non_graded_span_rejected() {
        let a = corpus::shestakov_alt();
        let mixed = a.element_from_ints(&[1, 1, 0]).unwrap();
        assert!(matches!(SubSuperspace::from_vectors(&a, std::slice::from_ref(&mixed)), Err(Error::NotGraded { index: 0 })));
        let ok = SubSuperspace::from_vectors(&a, &[mixed, a.basis_element(0)]).unwrap();
        assert_eq!(ok, span(&a, &[0, 1]));
    }

    #[test]
    fn restriction_to_subalgebra() {
        let a = corpus::upper_tri(3, &[0, 1, 0], FieldSpec::Rationals).unwrap();
        let sub = SubSuperspace::generate_subalgebra(&a, [&a.basis_element(0)]);
        let r = a.restrict_to(&sub, "sub").unwrap();
        assert_eq!(r.dim(), sub.dim());
    }
}
