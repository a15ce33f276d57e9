//! Multiplication operators as exact matrices, the associative operator
//! algebras they generate, and checks built on them.
//!
//! Matrices act on coordinate columns: column `c` of an operator holds the
//! image of the basis vector `x_c`, and `S * T` applies `T` first.

mod engel;
mod weak;

use std::fmt;

pub use engel::{
    check_operator_identities, engel_check, engel_element_check, plain_r_power_identity, EngelElementReport,
    EngelMode, EngelReport, PowerIdentityReport,
};
pub use weak::{jacobson_nilpotency, weakly_closed_verify, Gamma, WeakClosureReport, WeaklyClosedSet};

use crate::algebra::{HomogeneousElement, Parity, SubSuperspace, SuperAlgebra};
use crate::arith::{FieldSpec, Matrix, Scalar, VectorSpan};
use crate::error::{Error, Result};

pub type OpMatrix = Matrix<FieldSpec>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    /// `R_x(y) = (-1)^{|x||y|} y x`
    RightSigned,
    /// `L_x(y) = x y`
    LeftSigned,
    /// `y -> y x`
    RightPlain,
    /// `y -> x y`
    LeftPlain,
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpKind::RightSigned | OpKind::RightPlain => "R",
            OpKind::LeftSigned | OpKind::LeftPlain => "L",
        })
    }
}

/// Matrix of a multiplication operator by `x`, where `x` has parity
/// `parity` (only used by the signed right operator).
pub fn operator_matrix(a: &SuperAlgebra, kind: OpKind, x: &[Scalar], parity: Parity) -> OpMatrix {
    let d = a.dim();
    let columns = (0..d)
        .map(|c| {
            let y = a.basis_element(c);
            match kind {
                OpKind::RightSigned => {
                    let p = a.product(y.coords(), x);
                    if parity.sign_flips(a.parity_of(c)) {
                        p.iter().map(|s| -s).collect()
                    } else {
                        p
                    }
                }
                OpKind::RightPlain => a.product(y.coords(), x),
                OpKind::LeftSigned | OpKind::LeftPlain => a.product(x, y.coords()),
            }
        })
        .collect();
    Matrix::from_columns(a.field(), d, columns).expect("square")
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultOperator {
    pub kind: OpKind,
    pub source: HomogeneousElement,
    pub matrix: OpMatrix,
}

impl MultOperator {
    pub fn parity(&self) -> Parity {
        self.source.parity()
    }

    pub fn label(&self, a: &SuperAlgebra) -> String {
        format!("{}[{}]", self.kind, a.describe(self.source.element()))
    }

    /// Recomputes the matrix from the source element and kind.
    pub fn regenerate(&self, a: &SuperAlgebra) -> OpMatrix {
        operator_matrix(a, self.kind, self.source.coords(), self.source.parity())
    }
}

fn check_source(a: &SuperAlgebra, x: &HomogeneousElement) -> Result<()> {
    if x.element().len() != a.dim() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

pub fn right_mult(a: &SuperAlgebra, x: &HomogeneousElement, signed: bool) -> Result<MultOperator> {
    check_source(a, x)?;
    let kind = if signed { OpKind::RightSigned } else { OpKind::RightPlain };
    Ok(MultOperator { kind, source: x.clone(), matrix: operator_matrix(a, kind, x.coords(), x.parity()) })
}

pub fn left_mult(a: &SuperAlgebra, x: &HomogeneousElement, signed: bool) -> Result<MultOperator> {
    check_source(a, x)?;
    let kind = if signed { OpKind::LeftSigned } else { OpKind::LeftPlain };
    Ok(MultOperator { kind, source: x.clone(), matrix: operator_matrix(a, kind, x.coords(), x.parity()) })
}

/// Plain right multiplication by an arbitrary (not necessarily
/// homogeneous) element.
pub fn plain_right(a: &SuperAlgebra, x: &[Scalar]) -> OpMatrix {
    operator_matrix(a, OpKind::RightPlain, x, Parity::Even)
}

/// Smallest `k >= 1` with `M^k = 0`, or `None` if `M` is not nilpotent.
pub fn matrix_nil_index(m: &OpMatrix) -> Option<usize> {
    let d = m.rows();
    let mut p = m.clone();
    for k in 1..=d.max(1) {
        if p.is_zero() {
            return Some(k);
        }
        p = p.mul(m).expect("square");
    }
    None
}

/// Smallest `p` with `rank(M^p) = rank(M^{p+1})`, with that rank. A
/// positive rank certifies that `M` is not nilpotent.
pub fn stable_rank_power(m: &OpMatrix) -> (usize, usize) {
    let mut p = 1;
    let mut power = m.clone();
    let mut rank = power.rank();
    loop {
        let next = power.mul(m).expect("square");
        let next_rank = next.rank();
        if next_rank == rank {
            return (p, rank);
        }
        power = next;
        rank = next_rank;
        p += 1;
    }
}

/// A subspace of `d x d` matrices, stored as an echelonized span of their
/// row-major entry vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpace {
    d: usize,
    span: VectorSpan,
}

impl OperatorSpace {
    pub fn zero(field: FieldSpec, d: usize) -> Self {
        OperatorSpace { d, span: VectorSpan::new(field, d * d) }
    }

    pub fn from_matrices<'a>(field: FieldSpec, d: usize, ms: impl IntoIterator<Item = &'a OpMatrix>) -> Self {
        let mut s = Self::zero(field, d);
        for m in ms {
            s.insert(m);
        }
        s
    }

    pub fn field(&self) -> FieldSpec {
        self.span.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    pub fn insert(&mut self, m: &OpMatrix) -> bool {
        assert_eq!((m.rows(), m.cols()), (self.d, self.d), "operator of the wrong size");
        self.span.insert(m.entries())
    }

    pub fn contains(&self, m: &OpMatrix) -> bool {
        self.span.contains(m.entries())
    }

    /// Coordinates along [`Self::basis`], if `m` lies in the space.
    pub fn coordinates(&self, m: &OpMatrix) -> Option<Vec<Scalar>> {
        self.span.coordinates(m.entries())
    }

    pub fn basis(&self) -> Vec<OpMatrix> {
        self.span
            .basis()
            .iter()
            .map(|row| {
                Matrix::from_rows(self.field(), row.chunks(self.d.max(1)).map(<[Scalar]>::to_vec).collect())
                    .expect("rectangular")
            })
            .map(|m| if self.d == 0 { Matrix::zeros(self.field(), 0, 0) } else { m })
            .collect()
    }

    pub fn sum(&self, other: &OperatorSpace) -> OperatorSpace {
        OperatorSpace { d: self.d, span: self.span.sum(&other.span) }
    }

    pub fn is_subspace_of(&self, other: &OperatorSpace) -> bool {
        self.span.is_subspace_of(&other.span)
    }

    /// `U V = span{u v}`.
    pub fn product(&self, other: &OperatorSpace) -> OperatorSpace {
        let mut out = Self::zero(self.field(), self.d);
        let vb = other.basis();
        for u in self.basis() {
            for v in &vb {
                out.insert(&u.mul(v).expect("same size"));
            }
        }
        out
    }

    /// `span{u g}` for a list of matrices `g`.
    pub fn times_matrices(&self, gens: &[OpMatrix]) -> OperatorSpace {
        let mut out = Self::zero(self.field(), self.d);
        for u in self.basis() {
            for g in gens {
                out.insert(&u.mul(g).expect("same size"));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    /// `W^n = 0` and `W^{n-1} != 0`.
    Nilpotent(usize),
    /// `W^k = W^{k+1} != 0`.
    Stabilizes { index: usize, dim: usize },
}

impl Nilpotency {
    pub fn index(&self) -> Option<usize> {
        match self {
            Nilpotency::Nilpotent(n) => Some(*n),
            Nilpotency::Stabilizes { .. } => None,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        matches!(self, Nilpotency::Nilpotent(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    /// Dimensions of `W, W^2, ...`.
    pub dims: Vec<usize>,
    pub verdict: Nilpotency,
}

/// The (non-unital) associative algebra generated by a list of matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorAlgebra {
    pub space: OperatorSpace,
    pub generators: Vec<OpMatrix>,
    pub labels: Vec<String>,
}

impl OperatorAlgebra {
    /// Closure of `span(gens)` under products, by right-multiplying every
    /// newly found independent matrix by each generator.
    pub fn generate(field: FieldSpec, d: usize, generators: Vec<OpMatrix>, labels: Vec<String>) -> Self {
        let mut space = OperatorSpace::zero(field, d);
        let mut queue: Vec<OpMatrix> = generators.iter().filter(|g| space.insert(g)).cloned().collect();
        while let Some(m) = queue.pop() {
            for g in &generators {
                let p = m.mul(g).expect("same size");
                if space.insert(&p) {
                    queue.push(p);
                }
            }
        }
        OperatorAlgebra { space, generators, labels }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Whether the product of any two basis matrices stays in the span.
    pub fn is_closed(&self) -> bool {
        self.space.product(&self.space).is_subspace_of(&self.space)
    }

    /// `W^{k+1} = W^k W` until zero or stabilization. Since `W^k` is spanned
    /// by the words of length at least `k`, `W^{k+1} = W^k G` for the span
    /// `G` of the generators.
    pub fn nilpotency(&self) -> NilpotencyReport {
        let mut dims = vec![self.dim()];
        let mut p = self.space.clone();
        let mut k = 1;
        loop {
            if p.is_zero() {
                return NilpotencyReport { dims, verdict: Nilpotency::Nilpotent(k) };
            }
            let next = p.times_matrices(&self.generators);
            if next == p {
                return NilpotencyReport { dims, verdict: Nilpotency::Stabilizes { index: k, dim: p.dim() } };
            }
            dims.push(next.dim());
            p = next;
            k += 1;
        }
    }

    /// `W^k` as an operator space (`k >= 1`).
    pub fn power(&self, k: usize) -> OperatorSpace {
        let mut p = self.space.clone();
        for _ in 1..k {
            if p.is_zero() {
                break;
            }
            p = p.times_matrices(&self.generators);
        }
        p
    }
}

/// `B*_s`: generated by the signed `R_b` and `L_b` over the homogeneous
/// echelon basis of `B`.
pub fn mult_superalgebra(a: &SuperAlgebra, b: &SubSuperspace) -> OperatorAlgebra {
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for x in b.homogeneous_basis() {
        let name = a.describe(x.element());
        gens.push(operator_matrix(a, OpKind::RightSigned, x.coords(), x.parity()));
        labels.push(format!("R[{name}]"));
        gens.push(operator_matrix(a, OpKind::LeftSigned, x.coords(), x.parity()));
        labels.push(format!("L[{name}]"));
    }
    OperatorAlgebra::generate(a.field(), a.dim(), gens, labels)
}

/// `R(B)`: generated by the plain right multiplications by elements of `B`.
pub fn plain_right_algebra(a: &SuperAlgebra, b: &SubSuperspace) -> OperatorAlgebra {
    let basis = b.homogeneous_basis();
    let gens = basis.iter().map(|x| plain_right(a, x.coords())).collect();
    let labels = basis.iter().map(|x| format!("R[{}]", a.describe(x.element()))).collect();
    OperatorAlgebra::generate(a.field(), a.dim(), gens, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn mat(f: FieldSpec, rows: &[&[i64]]) -> OpMatrix {
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn signed_operators_of_f2() {
        let a = corpus::shestakov_alt();
        let f = a.field();
        let f2 = a.homogeneous_basis_element(2);
        let r = right_mult(&a, &f2, true).unwrap();
        // e1 -> f1, f1 -> 2 e1, f2 -> 0
        assert_eq!(r.matrix, mat(f, &[&[0, 2, 0], &[1, 0, 0], &[0, 0, 0]]));
        let l = left_mult(&a, &f2, true).unwrap();
        assert_eq!(l.matrix, mat(f, &[&[0, 2, 0], &[1, 0, 0], &[0, 0, 0]]));
        let e1 = a.homogeneous_basis_element(0);
        assert_eq!(right_mult(&a, &e1, true).unwrap().matrix, right_mult(&a, &e1, false).unwrap().matrix);
        assert_eq!(r.regenerate(&a), r.matrix);
    }

    #[test]
    fn multiplication_algebras() {
        let a = corpus::shestakov_alt();
        let zero = mult_superalgebra(&a, &SubSuperspace::zero(&a));
        assert_eq!(zero.dim(), 0);
        assert_eq!(zero.nilpotency().verdict, Nilpotency::Nilpotent(1));
        let e1 = mult_superalgebra(&a, &SubSuperspace::basis_span(&a, &[0]));
        assert_eq!(e1.dim(), 1);
        assert_eq!(e1.nilpotency().verdict, Nilpotency::Nilpotent(2));
        let ef = mult_superalgebra(&a, &SubSuperspace::basis_span(&a, &[0, 1]));
        assert_eq!(ef.nilpotency().verdict, Nilpotency::Nilpotent(2));
        let whole = mult_superalgebra(&a, &SubSuperspace::whole(&a));
        assert!(whole.is_closed());
        assert!(!whole.nilpotency().verdict.is_nilpotent());
    }

    #[test]
    fn nil_index_and_stable_rank() {
        let a = corpus::shestakov_alt();
        let r = operator_matrix(&a, OpKind::RightSigned, a.basis_element(2).coords(), Parity::Odd);
        assert_eq!(matrix_nil_index(&r), None);
        assert_eq!(stable_rank_power(&r), (1, 2));
        let e = operator_matrix(&a, OpKind::RightSigned, a.basis_element(0).coords(), Parity::Even);
        assert_eq!(matrix_nil_index(&e), Some(2));
        assert_eq!(stable_rank_power(&e), (2, 0));
    }
}
