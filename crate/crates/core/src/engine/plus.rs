use crate::algebra::{AlgebraData, SuperAlgebra, TableEntry};
use crate::error::{Error, Result};
use crate::identities::check_superassociative;

/// `a ∘ b = (ab + (-1)^{|a||b|} ba) / 2` on basis vectors `i, j`.
pub fn plus_product(a: &SuperAlgebra, i: usize, j: usize) -> Vec<crate::arith::Scalar> {
    let f = a.field();
    let half = f.from_i64(2).inv().expect("characteristic is not 2");
    let xi = a.basis_element(i);
    let xj = a.basis_element(j);
    let ab = a.mul(&xi, &xj).expect("same algebra");
    let ba = a.mul(&xj, &xi).expect("same algebra");
    let ba = if a.parity_of(i).sign_flips(a.parity_of(j)) { ba.neg() } else { ba };
    ab.add(&ba).scale(&half).into_coords()
}

/// `A^+`: same basis and grading, product `∘`.
pub fn plus_functor(a: &SuperAlgebra) -> Result<SuperAlgebra> {
    if a.field().characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    if !check_superassociative(a).verdict {
        return Err(Error::NotAssociative);
    }
    let mut table = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in plus_product(a, i, j).into_iter().enumerate() {
                if !c.is_zero() {
                    table.push(TableEntry::new(i, j, k, c));
                }
            }
        }
    }
    SuperAlgebra::new(AlgebraData {
        name: format!("plus-of({})", a.name()),
        field: a.field(),
        parity: a.parity().to_vec(),
        basis_names: a.basis_names().to_vec(),
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::corpus;
    use crate::identities::check_supercommutative;

    #[test]
    fn m11_plus_over_gf3() {
        let f = FieldSpec::prime(3).unwrap();
        let m = corpus::m11(f);
        let p = plus_functor(&m).unwrap();
        // E12 ∘ E21 = (E11 - E22) / 2 = 2 E11 + E22 in GF(3)
        let c = p.mul(&p.basis_element(1), &p.basis_element(2)).unwrap();
        assert_eq!(c, p.element_from_ints(&[2, 0, 0, 1]).unwrap());
        assert!(check_supercommutative(&p).verdict);
    }

    #[test]
    fn commutative_even_algebra_is_fixed() {
        let g = corpus::grassmann_aug(2, FieldSpec::Rationals).unwrap();
        let even = corpus::zero(2, 0, FieldSpec::Rationals);
        assert_eq!(plus_functor(&even).unwrap().table(), even.table());
        // the Grassmann algebra is supercommutative, so A^+ = A
        assert_eq!(plus_functor(&g).unwrap().table(), g.table());
    }

    #[test]
    fn refusals() {
        assert!(matches!(plus_functor(&corpus::shestakov_jordan(FieldSpec::Rationals).unwrap()), Err(Error::NotAssociative)));
        assert!(matches!(plus_functor(&corpus::zero(1, 1, FieldSpec::prime(2).unwrap())), Err(Error::CharTwoUnsupported)));
    }
}
