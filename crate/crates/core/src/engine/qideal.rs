use crate::algebra::{Element, HomogeneousElement, SubSuperspace, SuperAlgebra};
use crate::error::{Error, Result};
use crate::operators::{
    matrix_nil_index, mult_superalgebra, operator_matrix, stable_rank_power, Nilpotency, OpKind, OpMatrix,
    OperatorSpace,
};

/// Result of checking `(B*)^{2n-1} ⊆ Q = I* + I* B*` for `B = I + F v`.
#[derive(Clone, Debug, PartialEq)]
pub struct QIdealCheck {
    pub i: SubSuperspace,
    pub b: SubSuperspace,
    pub v: HomogeneousElement,
    /// Nilpotency index of the signed `R_v`.
    pub rv_index: usize,
    /// Smallest even `n` with `R_v^n = 0`.
    pub n: usize,
    pub istar_index: usize,
    pub q_dim: usize,
    /// Dimensions of `(B*)^k` for `k = 1..=2n-1`.
    pub power_dims: Vec<usize>,
    pub inclusion: bool,
    pub bstar: Nilpotency,
    /// Number of operator products formed while building the spans.
    pub word_budget_used: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum QIdealFailure {
    NotSubalgebra,
    SquareNotInI { left: Element, right: Element },
    RvNotNilpotent { stable_rank: (usize, usize) },
    IStarNotNilpotent { index: usize, dim: usize },
}

impl QIdealFailure {
    pub fn describe(&self, a: &SuperAlgebra, v: &HomogeneousElement) -> String {
        let name = a.describe(v.element());
        match self {
            QIdealFailure::NotSubalgebra => "I is not a subalgebra".into(),
            QIdealFailure::SquareNotInI { left, right } => {
                format!("B^2 is not in I: {} * {} leaves I", a.describe(left), a.describe(right))
            }
            QIdealFailure::RvNotNilpotent { stable_rank: (p, r) } => {
                format!("R[{name}] is not nilpotent: rank of R^{p} and R^{} is {r}", p + 1)
            }
            QIdealFailure::IStarNotNilpotent { index, dim } => {
                format!("I* is not nilpotent: its powers stabilize at {index} with dimension {dim}")
            }
        }
    }
}

/// `span{u g_1 ... g_k : u ∈ U, k >= 0}`.
fn right_closure(mut space: OperatorSpace, start: &[OpMatrix], gens: &[OpMatrix], products: &mut usize) -> OperatorSpace {
    let mut queue: Vec<OpMatrix> = start.iter().filter(|m| space.insert(m)).cloned().collect();
    while let Some(m) = queue.pop() {
        for g in gens {
            *products += 1;
            let p = m.mul(g).expect("same size");
            if space.insert(&p) {
                queue.push(p);
            }
        }
    }
    space
}

pub(crate) fn try_qideal(
    a: &SuperAlgebra,
    i: &SubSuperspace,
    v: &HomogeneousElement,
) -> std::result::Result<QIdealCheck, QIdealFailure> {
    if !i.is_subalgebra(a) {
        return Err(QIdealFailure::NotSubalgebra);
    }
    let mut b = i.clone();
    b.insert_homogeneous(v.coords());
    let basis = b.homogeneous_basis();
    for x in &basis {
        for y in &basis {
            if !i.contains_coords(&a.product(x.coords(), y.coords())) {
                return Err(QIdealFailure::SquareNotInI { left: x.element().clone(), right: y.element().clone() });
            }
        }
    }
    let rv = operator_matrix(a, OpKind::RightSigned, v.coords(), v.parity());
    let Some(rv_index) = matrix_nil_index(&rv) else {
        return Err(QIdealFailure::RvNotNilpotent { stable_rank: stable_rank_power(&rv) });
    };
    let n = (rv_index + rv_index % 2).max(2);
    let istar = mult_superalgebra(a, i);
    let istar_index = match istar.nilpotency().verdict {
        Nilpotency::Nilpotent(k) => k,
        Nilpotency::Stabilizes { index, dim } => return Err(QIdealFailure::IStarNotNilpotent { index, dim }),
    };
    let bstar = mult_superalgebra(a, &b);
    let mut products = 0;
    let istar_basis = istar.space.basis();
    let left = istar_basis.iter().flat_map(|u| bstar.generators.iter().map(move |g| u.mul(g).expect("same size")));
    let left: Vec<OpMatrix> = left.collect();
    products += left.len();
    let q = right_closure(istar.space.clone(), &left, &bstar.generators, &mut products);
    let mut power = bstar.space.clone();
    let mut power_dims = vec![power.dim()];
    for _ in 1..(2 * n - 1) {
        if power.is_zero() {
            power_dims.push(0);
            continue;
        }
        products += power.dim() * bstar.generators.len();
        power = power.times_matrices(&bstar.generators);
        power_dims.push(power.dim());
    }
    let inclusion = power.is_subspace_of(&q);
    Ok(QIdealCheck {
        i: i.clone(),
        b,
        v: v.clone(),
        rv_index,
        n,
        istar_index,
        q_dim: q.dim(),
        power_dims,
        inclusion,
        bstar: bstar.nilpotency().verdict,
        word_budget_used: products,
    })
}

/// Checks the Q-ideal inclusion for `B = I + F v` and the nilpotency of
/// `B*`.
pub fn verify_qideal(a: &SuperAlgebra, i: &SubSuperspace, v: &HomogeneousElement) -> Result<QIdealCheck> {
    if v.element().len() != a.dim() || i.ambient_dim() != a.dim() {
        return Err(Error::AlgebraMismatch);
    }
    try_qideal(a, i, v).map_err(|f| Error::PreconditionFailed(f.describe(a, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::corpus;

    #[test]
    fn shestakov_cases() {
        let a = corpus::shestakov_alt();
        let f2 = a.homogeneous_basis_element(2);
        let i = SubSuperspace::basis_span(&a, &[0, 1]);
        assert!(matches!(try_qideal(&a, &i, &f2), Err(QIdealFailure::RvNotNilpotent { stable_rank: (1, 2) })));
        assert!(matches!(verify_qideal(&a, &i, &f2), Err(Error::PreconditionFailed(_))));

        let i = SubSuperspace::basis_span(&a, &[0]);
        let q = verify_qideal(&a, &i, &a.homogeneous_basis_element(1)).unwrap();
        assert_eq!(q.n, 2);
        assert!(q.inclusion);
        assert_eq!(*q.power_dims.last().unwrap(), 0);
        assert!(q.bstar.is_nilpotent());
    }

    #[test]
    fn zero_ideal() {
        let z = corpus::zero(1, 1, FieldSpec::Rationals);
        let q = verify_qideal(&z, &SubSuperspace::zero(&z), &z.homogeneous_basis_element(1)).unwrap();
        assert_eq!((q.rv_index, q.n, q.q_dim), (1, 2, 0));
        assert!(q.inclusion);
        assert_eq!(q.bstar, Nilpotency::Nilpotent(1));
    }

    #[test]
    fn square_outside() {
        let a = corpus::shestakov_alt();
        let r = try_qideal(&a, &SubSuperspace::zero(&a), &a.homogeneous_basis_element(0));
        assert!(r.is_ok());
        let r = try_qideal(&a, &SubSuperspace::basis_span(&a, &[1]), &a.homogeneous_basis_element(2));
        assert!(matches!(r, Err(QIdealFailure::NotSubalgebra) | Err(QIdealFailure::SquareNotInI { .. })));
    }
}
