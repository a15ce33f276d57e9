use std::fmt::Debug;

use super::field::{FieldSpec, Scalar};
use crate::error::Result;

/// A commutative coefficient ring, given as a structure object that
/// performs arithmetic on plain element values.
pub trait Ring: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Embeds a ground-field scalar.
    fn from_scalar(&self, c: &Scalar) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a * c` for a ground-field scalar `c`.
    fn scale(&self, a: &Self::Elem, c: &Scalar) -> Self::Elem {
        self.mul(a, &self.from_scalar(c))
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
}

impl Ring for FieldSpec {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        FieldSpec::zero(self)
    }
    fn one(&self) -> Scalar {
        FieldSpec::one(self)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn from_scalar(&self, c: &Scalar) -> Scalar {
        c.clone()
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn add_assign(&self, a: &mut Scalar, b: &Scalar) {
        a.add_assign_ref(b);
    }
    fn scale(&self, a: &Scalar, c: &Scalar) -> Scalar {
        a * c
    }
}

impl Field for FieldSpec {
    fn inv(&self, a: &Scalar) -> Result<Scalar> {
        a.inv()
    }
}
