//! Truncated Grassmann algebras and Grassmann envelopes.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraData, SuperAlgebra, TableEntry};
use crate::arith::{FieldSpec, Ring};
use crate::corpus::grassmann_sign;
use crate::error::{Error, Result};

/// Largest number of Grassmann generators accepted.
pub const MAX_GENERATORS: usize = 24;

/// `G_m`: basis monomials `e_S` for all subsets `S` of `{1..m}`, encoded as
/// bitmasks (bit `t` stands for `e_{t+1}`), with `e_S e_T = ±e_{S∪T}` for
/// disjoint `S, T` and zero otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrassmannAlgebra {
    field: FieldSpec,
    m: usize,
}

impl GrassmannAlgebra {
    pub fn new(field: FieldSpec, m: usize) -> Result<Self> {
        if m > MAX_GENERATORS {
            return Err(Error::BadParams(format!("at most {MAX_GENERATORS} Grassmann generators")));
        }
        Ok(GrassmannAlgebra { field, m })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn parity(s: u32) -> u8 {
        (s.count_ones() % 2) as u8
    }

    /// `e_S e_T` as `(S ∪ T, negative)`, or `None` when `S` and `T` meet.
    pub fn mul_monomials(s: u32, t: u32) -> Option<(u32, bool)> {
        if s & t != 0 {
            None
        } else {
            Some((s | t, grassmann_sign(s, t)))
        }
    }

    pub fn monomial_name(s: u32) -> String {
        if s == 0 {
            return "1".into();
        }
        let digits: Vec<String> = (0..32).filter(|t| s >> t & 1 == 1).map(|t| (t + 1).to_string()).collect();
        format!("e{}", digits.join("_"))
    }

    /// `G_m` itself as a superalgebra graded by monomial length, basis in
    /// bitmask order.
    pub fn to_superalgebra(&self) -> SuperAlgebra {
        let n = self.dim() as u32;
        let mut table = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if let Some((u, neg)) = Self::mul_monomials(s, t) {
                    let c = if neg { -self.field.one() } else { self.field.one() };
                    table.push(TableEntry::new(s as usize, t as usize, u as usize, c));
                }
            }
        }
        SuperAlgebra::new(AlgebraData {
            name: format!("grassmann({},{})", self.m, self.field),
            field: self.field,
            parity: (0..n).map(Self::parity).collect(),
            basis_names: (0..n).map(Self::monomial_name).collect(),
            table,
        })
        .expect("Grassmann table is graded")
    }
}

/// `G(A) = G_0 ⊗ A_0 + G_1 ⊗ A_1` as an ordinary (purely even) algebra.
///
/// Basis vectors are the pairs `e_S ⊗ x_i` with `|S| = |x_i| mod 2`, ordered
/// by `S` (as a bitmask) and then by `i`.
#[derive(Clone, Debug)]
pub struct EnvelopeAlgebra {
    pub generators: usize,
    pub pairs: Vec<(u32, usize)>,
    pub algebra: SuperAlgebra,
}

impl EnvelopeAlgebra {
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn index_of(&self, s: u32, i: usize) -> Option<usize> {
        self.pairs.binary_search(&(s, i)).ok()
    }
}

pub fn envelope_dim(a: &SuperAlgebra, m: usize) -> u128 {
    if m == 0 {
        return a.even_dim() as u128;
    }
    (1u128 << (m - 1)) * a.dim() as u128
}

pub fn build_grassmann_envelope(a: &SuperAlgebra, m: usize, budget: u128) -> Result<EnvelopeAlgebra> {
    if m == 0 {
        return Err(Error::BadParams("the envelope needs at least one generator".into()));
    }
    if m > MAX_GENERATORS {
        return Err(Error::BadParams(format!("at most {MAX_GENERATORS} Grassmann generators")));
    }
    let needed = envelope_dim(a, m);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut pairs = Vec::new();
    for s in 0..(1u32 << m) {
        for i in 0..a.dim() {
            if GrassmannAlgebra::parity(s) == a.parity()[i] {
                pairs.push((s, i));
            }
        }
    }
    let index: BTreeMap<(u32, usize), usize> = pairs.iter().enumerate().map(|(n, &p)| (p, n)).collect();
    let mut table = Vec::new();
    for (x, &(s, i)) in pairs.iter().enumerate() {
        for (y, &(t, j)) in pairs.iter().enumerate() {
            let Some((u, neg)) = GrassmannAlgebra::mul_monomials(s, t) else {
                continue;
            };
            for (k, c) in a.basis_product(i, j) {
                let c = if neg { -c } else { c.clone() };
                table.push(TableEntry::new(x, y, index[&(u, *k)], c));
            }
        }
    }
    let names = pairs
        .iter()
        .map(|&(s, i)| format!("{}*{}", GrassmannAlgebra::monomial_name(s), a.basis_names()[i]))
        .collect();
    let algebra = SuperAlgebra::new(AlgebraData {
        name: format!("envelope({},{m})", a.name()),
        field: a.field(),
        parity: vec![0; pairs.len()],
        basis_names: names,
        table,
    })?;
    Ok(EnvelopeAlgebra { generators: m, pairs, algebra })
}

/// Sparse element of `G_m ⊗ A` with coefficients in a ring, keyed by
/// `(S, i)`. Used to compute inside the envelope without materializing its
/// full multiplication table.
pub(crate) type Tensor<E> = BTreeMap<(u32, usize), E>;

pub(crate) fn tensor_mul<R: Ring>(a: &SuperAlgebra, ring: &R, x: &Tensor<R::Elem>, y: &Tensor<R::Elem>) -> Tensor<R::Elem> {
    let mut out: Tensor<R::Elem> = BTreeMap::new();
    for (&(s, i), cx) in x {
        for (&(t, j), cy) in y {
            let entries = a.basis_product(i, j);
            if entries.is_empty() {
                continue;
            }
            let Some((u, neg)) = GrassmannAlgebra::mul_monomials(s, t) else {
                continue;
            };
            let mut xy = ring.mul(cx, cy);
            if neg {
                xy = ring.neg(&xy);
            }
            for (k, c) in entries {
                let term = ring.scale(&xy, c);
                let slot = out.entry((u, *k)).or_insert_with(|| ring.zero());
                ring.add_assign(slot, &term);
            }
        }
    }
    out.retain(|_, v| !ring.is_zero(v));
    out
}

pub(crate) fn tensor_sub<R: Ring>(ring: &R, x: &Tensor<R::Elem>, y: &Tensor<R::Elem>) -> Tensor<R::Elem> {
    let mut out = x.clone();
    for (key, v) in y {
        let slot = out.entry(*key).or_insert_with(|| ring.zero());
        *slot = ring.sub(slot, v);
    }
    out.retain(|_, v| !ring.is_zero(v));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn grassmann_relations() {
        let g = GrassmannAlgebra::new(FieldSpec::Rationals, 3).unwrap().to_superalgebra();
        let e = |s: usize| g.basis_element(s);
        // e1 e2 = -e2 e1, e1 e1 = 0
        assert_eq!(g.mul(&e(1), &e(2)).unwrap(), g.mul(&e(2), &e(1)).unwrap().neg());
        assert!(g.mul(&e(1), &e(1)).unwrap().is_zero());
        assert_eq!(g.mul(&e(0), &e(5)).unwrap(), e(5));
        assert!(g.is_supercommutative_table());
    }

    #[test]
    fn envelope_dimensions() {
        let z = corpus::zero(1, 2, FieldSpec::Rationals);
        let env = build_grassmann_envelope(&z, 2, 256).unwrap();
        assert_eq!(env.dim(), 6);
        assert!(env.algebra.is_zero_algebra());
        let a = corpus::shestakov_alt();
        let env = build_grassmann_envelope(&a, 4, 256).unwrap();
        assert_eq!(env.dim(), 24);
        assert!(matches!(build_grassmann_envelope(&a, 8, 256), Err(Error::BudgetExceeded { needed: 384, .. })));
    }

    #[test]
    fn envelope_product() {
        let a = corpus::shestakov_alt();
        let env = build_grassmann_envelope(&a, 4, 256).unwrap();
        let x = env.index_of(0b0001, 1).unwrap();
        let y = env.index_of(0b0010, 2).unwrap();
        let p = env.algebra.mul(&env.algebra.basis_element(x), &env.algebra.basis_element(y)).unwrap();
        assert_eq!(p, env.algebra.basis_element(env.index_of(0b0011, 0).unwrap()));
    }
}
