//! Superalgebras given by structure constants, and the purely structural
//! computations on them: products, associators, graded subspaces, power and
//! derived series, normalizers and element nilpotency.

mod element;
pub(crate) mod nil;
mod series;
mod subspace;

use std::collections::BTreeSet;

pub use element::{Element, HomogeneousElement, Parity};
pub use nil::{
    element_nilpotent, enumerate_homogeneous, graded_nil_check, right_power, Backend,
    ElementNilpotency, GradedNilOutcome, GradedNilReport, DEFAULT_BUDGET,
};
pub use series::{derived_series, power_series, power_series_of, SeriesKind, SeriesReport, SeriesVerdict};
pub use subspace::SubSuperspace;

use crate::arith::{FieldSpec, Matrix, Ring, Scalar};
use crate::error::{Error, Result};

/// One structure constant: `x_i * x_j` has coefficient `c` on `x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Scalar,
}

impl TableEntry {
    pub fn new(i: usize, j: usize, k: usize, c: Scalar) -> Self {
        TableEntry { i, j, k, c }
    }
}

/// Unvalidated algebra data, as read from a file or assembled by a builder.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraData {
    pub name: String,
    pub field: FieldSpec,
    pub parity: Vec<u8>,
    pub basis_names: Vec<String>,
    pub table: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ParityValue { index: usize, value: u8 },
    BasisNames { expected: usize, found: usize },
    IndexOutOfRange { i: usize, j: usize, k: usize },
    CoefficientField { i: usize, j: usize, k: usize },
    GradingViolation { i: usize, j: usize, k: usize },
    DuplicateEntry { i: usize, j: usize, k: usize },
    ZeroCoefficient { i: usize, j: usize, k: usize },
}

impl Violation {
    fn into_error(self) -> Error {
        match self {
            Violation::GradingViolation { i, j, k } => Error::GradingViolation { i, j, k },
            Violation::DuplicateEntry { i, j, k } => Error::DuplicateEntry { i, j, k },
            Violation::ZeroCoefficient { i, j, k } => Error::ZeroCoefficient { i, j, k },
            other => Error::InvalidAlgebra(format!("{other:?}")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl AlgebraData {
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// Checks every structural invariant and lists each violation.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let mut violations = Vec::new();
        for (index, &value) in self.parity.iter().enumerate() {
            if value > 1 {
                violations.push(Violation::ParityValue { index, value });
            }
        }
        if self.basis_names.len() != d {
            violations.push(Violation::BasisNames { expected: d, found: self.basis_names.len() });
        }
        let mut seen = BTreeSet::new();
        for e in &self.table {
            let (i, j, k) = (e.i, e.j, e.k);
            if i >= d || j >= d || k >= d {
                violations.push(Violation::IndexOutOfRange { i, j, k });
                continue;
            }
            if e.c.field() != self.field {
                violations.push(Violation::CoefficientField { i, j, k });
            }
            if e.c.is_zero() {
                violations.push(Violation::ZeroCoefficient { i, j, k });
            }
            if !seen.insert((i, j, k)) {
                violations.push(Violation::DuplicateEntry { i, j, k });
            }
            if (self.parity[i] + self.parity[j]) % 2 != self.parity[k] % 2 {
                violations.push(Violation::GradingViolation { i, j, k });
            }
        }
        ValidationReport { violations }
    }
}

/// A finite-dimensional superalgebra `A = A_0 + A_1` with a homogeneous
/// basis and a sparse multiplication table.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    name: String,
    field: FieldSpec,
    parity: Vec<u8>,
    basis_names: Vec<String>,
    table: Vec<TableEntry>,
    // products[i * d + j] = nonzero (k, c) with x_i x_j = sum c x_k
    products: Vec<Vec<(usize, Scalar)>>,
}

impl PartialEq for SuperAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.field == other.field
            && self.parity == other.parity
            && self.basis_names == other.basis_names
            && self.table == other.table
    }
}

impl SuperAlgebra {
    pub fn new(data: AlgebraData) -> Result<Self> {
        if let Some(v) = data.validate().violations.into_iter().next() {
            return Err(v.into_error());
        }
        let AlgebraData { name, field, parity, basis_names, mut table } = data;
        table.sort_by_key(|e| (e.i, e.j, e.k));
        let d = parity.len();
        let mut products = vec![Vec::new(); d * d];
        for e in &table {
            products[e.i * d + e.j].push((e.k, e.c.clone()));
        }
        Ok(SuperAlgebra { name, field, parity, basis_names, table, products })
    }

    /// Convenience builder from `(i, j, k, c)` with integer coefficients.
    pub fn from_int_table(
        name: &str,
        field: FieldSpec,
        parity: &[u8],
        basis_names: &[&str],
        entries: &[(usize, usize, usize, i64)],
    ) -> Result<Self> {
        let table = entries
            .iter()
            .map(|&(i, j, k, c)| TableEntry::new(i, j, k, field.from_i64(c)))
            .filter(|e| !e.c.is_zero())
            .collect();
        Self::new(AlgebraData {
            name: name.to_string(),
            field,
            parity: parity.to_vec(),
            basis_names: basis_names.iter().map(|s| s.to_string()).collect(),
            table,
        })
    }

    pub fn data(&self) -> AlgebraData {
        AlgebraData {
            name: self.name.clone(),
            field: self.field,
            parity: self.parity.clone(),
            basis_names: self.basis_names.clone(),
            table: self.table.clone(),
        }
    }

    /// Re-runs the structural checks (always clean for a constructed value).
    pub fn validate(&self) -> ValidationReport {
        self.data().validate()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn parity_of(&self, i: usize) -> Parity {
        Parity::from_bit(self.parity[i])
    }

    /// Basis indices of the given parity, in increasing order.
    pub fn basis_of_parity(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == p.bit()).collect()
    }

    pub fn even_dim(&self) -> usize {
        self.basis_of_parity(Parity::Even).len()
    }

    pub fn odd_dim(&self) -> usize {
        self.basis_of_parity(Parity::Odd).len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn table(&self) -> &[TableEntry] {
        &self.table
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.table.is_empty()
    }

    /// Nonzero structure constants of `x_i x_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim())
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim(), i)
    }

    pub fn homogeneous_basis_element(&self, i: usize) -> HomogeneousElement {
        HomogeneousElement::new(self, self.basis_element(i)).expect("basis vectors are homogeneous")
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        if coords.len() != self.dim() || coords.iter().any(|c| c.field() != self.field) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Element::from_coords(coords))
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.len() != self.dim() || x.coords().first().is_some_and(|c| c.field() != self.field) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element::from_coords(self.product(x.coords(), y.coords())))
    }

    /// Bilinear expansion of `x * y` on raw coordinate vectors.
    pub(crate) fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.product_in(&self.field, x, y)
    }

    /// Product of elements whose coordinates live in a coefficient ring
    /// (e.g. polynomial coordinates of a generic element).
    pub fn product_in<R: Ring>(&self, ring: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        let d = self.dim();
        let mut out = vec![ring.zero(); d];
        let xs: Vec<usize> = (0..d).filter(|&i| !ring.is_zero(&x[i])).collect();
        let ys: Vec<usize> = (0..d).filter(|&j| !ring.is_zero(&y[j])).collect();
        for &i in &xs {
            for &j in &ys {
                let entries = &self.products[i * d + j];
                if entries.is_empty() {
                    continue;
                }
                let xy = ring.mul(&x[i], &y[j]);
                for (k, c) in entries {
                    ring.add_assign(&mut out[*k], &ring.scale(&xy, c));
                }
            }
        }
        out
    }

    /// `(x, y, z) = (xy)z - x(yz)`.
    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        let xy_z = self.mul(&self.mul(x, y)?, z)?;
        let x_yz = self.mul(x, &self.mul(y, z)?)?;
        Ok(xy_z.sub(&x_yz))
    }

    /// Associator of three basis vectors.
    pub fn basis_associator(&self, i: usize, j: usize, k: usize) -> Element {
        self.associator(&self.basis_element(i), &self.basis_element(j), &self.basis_element(k))
            .expect("basis vectors belong to the algebra")
    }

    /// The algebra spanned by a subalgebra's homogeneous basis (even vectors
    /// first), with structure constants re-expressed in that basis.
    pub fn restrict_to(&self, sub: &SubSuperspace, name: &str) -> Result<SuperAlgebra> {
        if !sub.is_subalgebra(self) {
            return Err(Error::NotASubalgebra);
        }
        let basis = sub.homogeneous_basis();
        self.restrict_to_basis(&basis, sub, name, |a, b| self.product(a, b))
    }

    pub(crate) fn restrict_to_basis(
        &self,
        basis: &[HomogeneousElement],
        sub: &SubSuperspace,
        name: &str,
        mul: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    ) -> Result<SuperAlgebra> {
        let mut table = Vec::new();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let p = mul(a.coords(), b.coords());
                let coords = sub.coordinates_in(basis, &p).ok_or(Error::NotASubalgebra)?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        table.push(TableEntry::new(i, j, k, c));
                    }
                }
            }
        }
        let names = basis
            .iter()
            .enumerate()
            .map(|(n, b)| self.describe_or_default(b.element(), n))
            .collect();
        SuperAlgebra::new(AlgebraData {
            name: name.to_string(),
            field: self.field,
            parity: basis.iter().map(|b| b.parity().bit()).collect(),
            basis_names: names,
            table,
        })
    }

    fn describe_or_default(&self, x: &Element, n: usize) -> String {
        let nz: Vec<usize> = (0..self.dim()).filter(|&i| !x.coords()[i].is_zero()).collect();
        if nz.len() == 1 && x.coords()[nz[0]].is_one() {
            self.basis_names[nz[0]].clone()
        } else {
            format!("u{}", n + 1)
        }
    }

    /// Human-readable form of an element, e.g. `f1 + 2*f2`.
    pub fn describe(&self, x: &Element) -> String {
        let mut parts = Vec::new();
        for (i, c) in x.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(self.basis_names[i].clone());
            } else {
                parts.push(format!("{c}*{}", self.basis_names[i]));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// The same algebra in the basis whose `c`-th vector is column `c` of
    /// `p`. Each column must be homogeneous of the parity of `x_c`.
    pub fn change_basis(&self, p: &Matrix<FieldSpec>, name: &str) -> Result<SuperAlgebra> {
        let d = self.dim();
        if p.rows() != d || p.cols() != d || p.ring() != &self.field {
            return Err(Error::ShapeMismatch(format!("basis change must be {d}x{d} over {}", self.field)));
        }
        for c in 0..d {
            if (0..d).any(|r| self.parity[r] != self.parity[c] && !p.get(r, c).is_zero()) {
                return Err(Error::NotHomogeneous);
            }
        }
        let inv = p.inverse().ok_or_else(|| Error::ShapeMismatch("basis change is singular".into()))?;
        let cols: Vec<Vec<Scalar>> = (0..d).map(|c| p.column(c)).collect();
        let mut table = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let coords = inv.apply(&self.product(&cols[i], &cols[j]))?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        table.push(TableEntry::new(i, j, k, c));
                    }
                }
            }
        }
        SuperAlgebra::new(AlgebraData {
            name: name.to_string(),
            field: self.field,
            parity: self.parity.clone(),
            basis_names: self.basis_names.clone(),
            table,
        })
    }

    /// Whether all basis products satisfy `x y = (-1)^{|x||y|} y x`.
    pub fn is_supercommutative_table(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let xy = self.mul(&self.basis_element(i), &self.basis_element(j)).unwrap();
                let yx = self.mul(&self.basis_element(j), &self.basis_element(i)).unwrap();
                let sign = self.parity[i] * self.parity[j] == 1;
                let rhs = if sign { yx.neg() } else { yx };
                xy == rhs
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn shestakov_table_is_valid() {
        let a = corpus::shestakov_alt();
        assert!(a.validate().is_valid());
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn grading_violation_detected() {
        let mut data = corpus::shestakov_alt().data();
        let f = data.field;
        data.table.push(TableEntry::new(0, 0, 1, f.one()));
        let report = data.validate();
        assert!(report.violations.contains(&Violation::GradingViolation { i: 0, j: 0, k: 1 }));
        assert!(matches!(SuperAlgebra::new(data), Err(Error::GradingViolation { i: 0, j: 0, k: 1 })));
    }

    #[test]
    fn duplicate_and_zero_entries() {
        let mut data = corpus::shestakov_alt().data();
        let f = data.field;
        data.table.push(TableEntry::new(0, 2, 1, f.one()));
        assert!(matches!(SuperAlgebra::new(data.clone()), Err(Error::DuplicateEntry { .. })));
        data.table.pop();
        data.table.push(TableEntry::new(1, 1, 0, f.zero()));
        assert!(matches!(SuperAlgebra::new(data), Err(Error::ZeroCoefficient { .. })));
    }

    #[test]
    fn empty_table_is_valid() {
        let a = corpus::zero(2, 3, FieldSpec::Rationals);
        assert!(a.validate().is_valid());
        assert!(a.is_zero_algebra());
    }

    #[test]
    fn shestakov_products() {
        let a = corpus::shestakov_alt();
        let (e1, f1, f2) = (a.basis_element(0), a.basis_element(1), a.basis_element(2));
        assert_eq!(a.mul(&f1, &f2).unwrap(), e1);
        assert_eq!(a.mul(&f2, &f1).unwrap(), e1.scale(&a.field().from_i64(2)));
        assert!(a.mul(&a.zero(), &f2).unwrap().is_zero());
    }

    #[test]
    fn shestakov_associator_witness() {
        let a = corpus::shestakov_alt();
        let (e1, f2) = (a.basis_element(0), a.basis_element(2));
        let assoc = a.associator(&f2, &e1, &f2).unwrap();
        assert_eq!(assoc, e1.scale(&a.field().from_i64(2)));
    }

    #[test]
    fn associator_vanishes_in_associative_algebra() {
        let a = corpus::m11(FieldSpec::Rationals);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert!(a.basis_associator(i, j, k).is_zero());
                }
            }
        }
        let x = a.element_from_ints(&[1, 2, -1, 3]).unwrap();
        let y = a.element_from_ints(&[0, 1, 5, -2]).unwrap();
        assert!(a.associator(&x, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn mismatched_elements_rejected() {
        let a = corpus::shestakov_alt();
        let b = corpus::m11(FieldSpec::Rationals);
        assert!(matches!(a.mul(&a.basis_element(0), &b.basis_element(0)), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn grading_of_products_on_corpus() {
        for a in corpus::regression_algebras() {
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    for (k, _) in a.basis_product(i, j) {
                        assert_eq!(a.parity()[*k], (a.parity()[i] + a.parity()[j]) % 2, "{}", a.name());
                    }
                }
            }
        }
    }

    #[test]
    fn shestakov_is_supercommutative() {
        assert!(corpus::shestakov_alt().is_supercommutative_table());
    }

    #[test]
    fn basis_change_transports_products() {
        let a = corpus::shestakov_alt();
        let f = a.field();
        let rows = [[1, 0, 0], [0, 1, 1], [0, 0, 2]];
        let p = Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()).unwrap();
        let b = a.change_basis(&p, "b").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let new = b.mul(&b.basis_element(i), &b.basis_element(j)).unwrap();
                let old = a.product(&p.column(i), &p.column(j));
                assert_eq!(p.apply(new.coords()).unwrap(), old);
            }
        }
        let mut q = p.clone();
        q.set(0, 1, f.one());
        assert!(matches!(a.change_basis(&q, "c"), Err(Error::NotHomogeneous)));
    }
}
