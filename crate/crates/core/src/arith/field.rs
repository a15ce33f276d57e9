//! Ground fields and their elements.
//!
//! Two kinds of field are supported: the rationals, backed by
//! arbitrary-precision fractions, and prime fields `GF(p)` with residues
//! stored canonically in `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field. Products are formed in
/// `u128`, so anything below `2^63` is safe.
pub const MAX_MODULUS: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// `GF(p)`, checking that `p` is a prime in the supported range.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime modulus")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let r = (n as i128).rem_euclid(p as i128) as u64;
                Scalar::Residue { value: r, modulus: p }
            }
        }
    }

    /// Residue `n mod p`; for the rationals the integer `n`.
    pub fn from_u64(&self, n: u64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Scalar::Residue { value: n % p, modulus: p },
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }

    /// All field elements in increasing residue order. Only for finite fields.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        let p = self.order()?;
        Some((0..p).map(move |v| Scalar::Residue { value: v, modulus: p }))
    }

    /// Parses the string form of a scalar: `"a/b"` or `"a"` over the
    /// rationals, a decimal residue `0 <= n < p` over `GF(p)`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match *self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), Some(b.trim())),
                    None => (s, None),
                };
                let num = BigInt::from_str(num)
                    .map_err(|_| Error::ScalarSyntax(format!("invalid rational {s:?}")))?;
                let den = match den {
                    Some(d) => BigInt::from_str(d)
                        .map_err(|_| Error::ScalarSyntax(format!("invalid rational {s:?}")))?,
                    None => BigInt::one(),
                };
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(p) => {
                if !s.bytes().all(|b| b.is_ascii_digit()) || s.is_empty() {
                    return Err(Error::ScalarSyntax(format!(
                        "{s:?} is not a decimal residue modulo {p}"
                    )));
                }
                let v: u64 = s
                    .parse()
                    .map_err(|_| Error::ScalarSyntax(format!("residue {s:?} out of range")))?;
                if v >= p {
                    return Err(Error::ScalarSyntax(format!("residue {v} is not reduced modulo {p}")));
                }
                Ok(Scalar::Residue { value: v, modulus: p })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`FieldSpec`].
///
/// Arithmetic through the `std::ops` traits panics when the operands belong
/// to different fields; the `checked_*` methods report that as
/// [`Error::FieldMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field(), right: other.field() })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(q.recip()))
                }
            }
            Scalar::Residue { value, modulus } => {
                if *value == 0 {
                    return Err(Error::DivisionByZero);
                }
                let e = (*value as i128).extended_gcd(&(*modulus as i128));
                let inv = e.x.rem_euclid(*modulus as i128) as u64;
                Ok(Scalar::Residue { value: inv, modulus: *modulus })
            }
        }
    }

    pub fn pow(&self, mut k: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn add_assign_ref(&mut self, other: &Scalar) {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                assert_eq!(*p, *q, "field mismatch: GF({p}) vs GF({q})");
                *a = ((*a as u128 + *b as u128) % *p as u128) as u64;
            }
            (a, b) => panic!("field mismatch: {} vs {}", a.field(), b.field()),
        }
    }

    /// Residue value, for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Value as a small signed integer when it is one (rationals with unit
    /// denominator, residues as their canonical representative).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => i64::try_from(*value).ok(),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue { value: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_product() {
        let f = FieldSpec::prime(3).unwrap();
        assert_eq!(&f.from_i64(2) * &f.from_i64(2), f.one());
    }

    #[test]
    fn rational_sum() {
        let q = FieldSpec::Rationals;
        let a = q.parse_scalar("1/2").unwrap();
        let b = q.parse_scalar("1/3").unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
    }

    #[test]
    fn gf5_inverse_matches_brute_force() {
        let f = FieldSpec::prime(5).unwrap();
        for a in 1..5u64 {
            let brute = (1..5u64).find(|b| (a * b) % 5 == 1).unwrap();
            assert_eq!(f.from_u64(a).inv().unwrap(), f.from_u64(brute));
        }
        assert_eq!(f.from_u64(2).inv().unwrap(), f.from_u64(3));
    }

    #[test]
    fn errors() {
        let f = FieldSpec::prime(5).unwrap();
        assert!(matches!(f.zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(
            f.one().checked_add(&FieldSpec::Rationals.one()),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn scalar_strings() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse_scalar("4/-6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse_scalar("3/1").unwrap().to_string(), "3");
        let f = FieldSpec::prime(3).unwrap();
        assert!(f.parse_scalar("1/2").is_err());
        assert!(f.parse_scalar("3").is_err());
        assert!(f.parse_scalar("-1").is_err());
        assert_eq!(f.parse_scalar("2").unwrap(), f.from_i64(-1));
    }
}
