//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! Polynomials are used as coordinates of "generic" elements: a zero test
//! here means every coefficient vanishes, which is stronger than vanishing
//! at every point of a finite field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::{FieldSpec, Scalar};
use super::ring::Ring;

/// Exponent vector stored sparsely as `(variable, exponent)` pairs with
/// strictly increasing variables and nonzero exponents.
///
/// Ordered graded-lexicographically: total degree first, then the dense
/// exponent vectors lexicographically with variable 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // `a` has a positive exponent on a variable where `b` has 0.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec) -> Self {
        MultiPoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        let mut p = MultiPoly::zero(field);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(field: FieldSpec, v: u32) -> Self {
        Self::term(Monomial::var(v), field.one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let field = c.field();
        let mut p = MultiPoly::zero(field);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Zero as a polynomial: no stored term.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &MultiPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field);
        }
        MultiPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    /// `self += a * b * c`, without materialising the product.
    pub fn add_scaled_product(&mut self, a: &MultiPoly, b: &MultiPoly, c: &Scalar) {
        for (ma, ca) in &a.terms {
            let cac = ca * c;
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), &(&cac * cb));
            }
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value at a point; variables beyond `point.len()` are treated as zero.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = point.get(v as usize).cloned().unwrap_or_else(|| self.field.zero());
                t = &t * &x.pow(e as u64);
            }
            acc.add_assign_ref(&t);
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for &(v, e) in m.pairs() {
                if e == 1 {
                    write!(f, "*x{v}")?;
                } else {
                    write!(f, "*x{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Polynomial ring `F[x_0, ..., x_{n-1}]` with named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing {
    field: FieldSpec,
    names: Arc<Vec<String>>,
}

impl PolyRing {
    pub fn new(field: FieldSpec, names: Vec<String>) -> Self {
        PolyRing { field, names: Arc::new(names) }
    }

    /// Ring with variables `prefix0, prefix1, ...`.
    pub fn with_vars(field: FieldSpec, n: usize, prefix: &str) -> Self {
        Self::new(field, (0..n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, v: usize) -> MultiPoly {
        assert!(v < self.names.len(), "variable index out of range");
        MultiPoly::var(self.field, v as u32)
    }
}

impl Ring for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.field)
    }
    fn one(&self) -> MultiPoly {
        MultiPoly::constant(self.field.one())
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add(b)
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.mul(b)
    }
    fn from_scalar(&self, c: &Scalar) -> MultiPoly {
        MultiPoly::constant(c.clone())
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.sub(b)
    }
    fn add_assign(&self, a: &mut MultiPoly, b: &MultiPoly) {
        a.add_assign(b);
    }
    fn scale(&self, a: &MultiPoly, c: &Scalar) -> MultiPoly {
        a.scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn zero_poly() {
        assert!(MultiPoly::zero(q()).is_zero());
    }

    #[test]
    fn fermat_polynomial_is_not_zero() {
        // x^3 - x vanishes on GF(3) as a function but not as a polynomial.
        let f = FieldSpec::prime(3).unwrap();
        let x = MultiPoly::var(f, 0);
        let p = x.pow(3).sub(&x);
        assert!(!p.is_zero());
        for a in f.elements().unwrap() {
            assert!(p.evaluate(&[a]).is_zero());
        }
    }

    #[test]
    fn binomial_square_cancels() {
        let l = MultiPoly::var(q(), 0);
        let m = MultiPoly::var(q(), 1);
        let two = MultiPoly::constant(q().from_i64(2));
        let lhs = l.add(&m).pow(2);
        let rhs = l.pow(2).add(&two.mul(&l).mul(&m)).add(&m.pow(2));
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn graded_lex_order() {
        let x0 = Monomial::var(0);
        let x1 = Monomial::var(1);
        let x1sq = x1.mul(&x1);
        let x0x1 = x0.mul(&x1);
        assert!(x0 > x1);
        assert!(x1sq > x0);
        assert!(x0x1 > x1sq);
        assert!(x0.mul(&x0) > x0x1);
        assert!(Monomial::one() < x1);
    }
}
