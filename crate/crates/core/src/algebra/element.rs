use std::fmt;

use super::SuperAlgebra;
use crate::arith::{FieldSpec, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn both() -> [Parity; 2] {
        [Parity::Even, Parity::Odd]
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }

    /// `(-1)^{|self||other|}` is negative.
    pub fn sign_flips(self, other: Parity) -> bool {
        self == Parity::Odd && other == Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// Coordinate vector of an element with respect to the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn zero(field: FieldSpec, d: usize) -> Self {
        Element { coords: vec![field.zero(); d] }
    }

    pub fn basis(field: FieldSpec, d: usize, i: usize) -> Self {
        let mut e = Self::zero(field, d);
        e.coords[i] = field.one();
        e
    }

    pub(crate) fn from_coords(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Element {
        Element { coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// Parity of a nonzero element supported on basis vectors of a single
    /// parity; `None` for zero or mixed elements.
    pub fn parity_in(&self, a: &SuperAlgebra) -> Option<Parity> {
        let mut found: Option<u8> = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(a.parity()[i]),
                Some(p) if p != a.parity()[i] => return None,
                _ => {}
            }
        }
        found.map(Parity::from_bit)
    }

    /// Even and odd components.
    pub fn split(&self, a: &SuperAlgebra) -> (Element, Element) {
        let mut even = self.clone();
        let mut odd = self.clone();
        for (i, &p) in a.parity().iter().enumerate() {
            let zero = a.field().zero();
            if p == 0 {
                odd.coords[i] = zero;
            } else {
                even.coords[i] = zero;
            }
        }
        (even, odd)
    }
}

/// A nonzero element of `A_0` or `A_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousElement {
    element: Element,
    parity: Parity,
}

impl HomogeneousElement {
    pub fn new(a: &SuperAlgebra, element: Element) -> Result<Self> {
        if element.len() != a.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let parity = element.parity_in(a).ok_or(Error::NotHomogeneous)?;
        Ok(HomogeneousElement { element, parity })
    }

    /// Checks the declared parity against the support.
    pub fn with_parity(a: &SuperAlgebra, element: Element, parity: Parity) -> Result<Self> {
        let h = Self::new(a, element)?;
        if h.parity != parity {
            return Err(Error::NotHomogeneous);
        }
        Ok(h)
    }

    pub(crate) fn from_parts(element: Element, parity: Parity) -> Self {
        HomogeneousElement { element, parity }
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn coords(&self) -> &[Scalar] {
        self.element.coords()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn homogeneity() {
        let a = corpus::shestakov_alt();
        let f1_plus_f2 = a.element_from_ints(&[0, 1, 1]).unwrap();
        assert_eq!(HomogeneousElement::new(&a, f1_plus_f2).unwrap().parity(), Parity::Odd);
        let mixed = a.element_from_ints(&[1, 1, 0]).unwrap();
        assert!(matches!(HomogeneousElement::new(&a, mixed), Err(Error::NotHomogeneous)));
        assert!(matches!(HomogeneousElement::new(&a, a.zero()), Err(Error::NotHomogeneous)));
        let e1 = a.basis_element(0);
        assert!(HomogeneousElement::with_parity(&a, e1, Parity::Odd).is_err());
    }
}
