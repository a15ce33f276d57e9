use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::element::{Element, HomogeneousElement, Parity};
use super::series::power_series_of;
use super::subspace::SubSuperspace;
use super::SuperAlgebra;
use crate::arith::{FieldSpec, MultiPoly, PolyRing, Ring, Scalar};
use crate::error::{Error, Result};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Enumerate,
    Symbolic,
    Auto,
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerate" => Ok(Backend::Enumerate),
            "symbolic" => Ok(Backend::Symbolic),
            "auto" => Ok(Backend::Auto),
            other => Err(Error::UnsupportedMode(format!("unknown backend {other:?}"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Enumerate => "enumerate",
            Backend::Symbolic => "symbolic",
            Backend::Auto => "auto",
        })
    }
}

/// Right-normed power: `a^[1] = a`, `a^[k+1] = a^[k] a`.
pub fn right_power(a: &SuperAlgebra, x: &HomogeneousElement, k: usize) -> Result<Element> {
    if k == 0 {
        return Err(Error::BadParams("right powers start at 1".into()));
    }
    if x.element().len() != a.dim() {
        return Err(Error::AlgebraMismatch);
    }
    let mut p = x.coords().to_vec();
    for _ in 1..k {
        p = a.product(&p, x.coords());
    }
    Ok(Element::from_coords(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementNilpotency {
    /// Whether the subalgebra generated by the element is nilpotent.
    pub nilpotent: bool,
    /// Nilpotency index of the generated subalgebra.
    pub subalgebra_index: Option<usize>,
    /// Smallest `k` with `a^[k] = 0`.
    pub right_power_index: Option<usize>,
}

/// Smallest `k` with `x^[k] = 0`. The powers are the orbit of `x` under the
/// plain right multiplication by `x`, so if `x^[d+1] != 0` no later power
/// vanishes.
fn right_power_index(a: &SuperAlgebra, x: &[Scalar]) -> Option<usize> {
    let mut p = x.to_vec();
    for k in 1..=a.dim() + 1 {
        if p.iter().all(Scalar::is_zero) {
            return Some(k);
        }
        p = a.product(&p, x);
    }
    None
}

fn element_nilpotency_raw(a: &SuperAlgebra, x: &[Scalar]) -> ElementNilpotency {
    let sub = SubSuperspace::generate_subalgebra(a, [&Element::from_coords(x.to_vec())]);
    let index = power_series_of(a, &sub).zero_index();
    ElementNilpotency { nilpotent: index.is_some(), subalgebra_index: index, right_power_index: right_power_index(a, x) }
}

pub fn element_nilpotent(a: &SuperAlgebra, x: &HomogeneousElement) -> Result<ElementNilpotency> {
    if x.element().len() != a.dim() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(element_nilpotency_raw(a, x.coords()))
}

fn count_homogeneous(field: FieldSpec, k: usize) -> Option<u128> {
    let q = field.order()? as u128;
    let mut n: u128 = 1;
    for _ in 0..k {
        n = n.checked_mul(q)?;
    }
    Some(n - 1)
}

/// The `idx`-th nonzero element supported on `support`, counting in base
/// `p` with the first support coordinate varying fastest (`idx >= 1`).
fn nth_vector(a: &SuperAlgebra, support: &[usize], mut idx: u128) -> Vec<Scalar> {
    let p = a.field().order().expect("finite field") as u128;
    let mut v = vec![a.field().zero(); a.dim()];
    for &i in support {
        v[i] = a.field().from_u64((idx % p) as u64);
        idx /= p;
    }
    v
}

/// All nonzero homogeneous elements of one parity over a finite field, in
/// enumeration order.
pub fn enumerate_homogeneous(
    a: &SuperAlgebra,
    parity: Parity,
    budget: u128,
) -> Result<impl Iterator<Item = HomogeneousElement> + '_> {
    let support = a.basis_of_parity(parity);
    let n = count_homogeneous(a.field(), support.len())
        .ok_or_else(|| Error::UnsupportedMode("enumeration needs a finite field".into()))?;
    if n > budget {
        return Err(Error::BudgetExceeded { needed: n, budget });
    }
    Ok((1..=n).map(move |i| {
        HomogeneousElement::from_parts(Element::from_coords(nth_vector(a, &support, i)), parity)
    }))
}

/// Number of nonzero homogeneous elements, or an error if the field is
/// infinite or the count exceeds the budget.
pub(crate) fn homogeneous_count(a: &SuperAlgebra, budget: u128) -> Result<u128> {
    let mut total: u128 = 0;
    for p in Parity::both() {
        let n = count_homogeneous(a.field(), a.basis_of_parity(p).len())
            .ok_or_else(|| Error::UnsupportedMode("enumeration needs a finite field".into()))?;
        total = total.saturating_add(n);
    }
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    Ok(total)
}

/// Finds the first homogeneous element (even ones first) for which `test`
/// returns `Some`, scanning in parallel.
pub(crate) fn find_first_homogeneous<T: Send>(
    a: &SuperAlgebra,
    budget: u128,
    test: impl Fn(&HomogeneousElement) -> Option<T> + Sync,
) -> Result<Option<(HomogeneousElement, T)>> {
    homogeneous_count(a, budget)?;
    for parity in Parity::both() {
        let support = a.basis_of_parity(parity);
        let n = count_homogeneous(a.field(), support.len()).expect("checked above");
        let found = (1..=n as u64).into_par_iter().find_map_first(|i| {
            let x = HomogeneousElement::from_parts(
                Element::from_coords(nth_vector(a, &support, i as u128)),
                parity,
            );
            test(&x).map(|t| (x, t))
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Applies `f` to every homogeneous element in parallel and collects the
/// results in enumeration order.
pub(crate) fn map_homogeneous<T: Send>(
    a: &SuperAlgebra,
    budget: u128,
    f: impl Fn(&HomogeneousElement) -> T + Sync,
) -> Result<Vec<T>> {
    homogeneous_count(a, budget)?;
    let mut out = Vec::new();
    for parity in Parity::both() {
        let support = a.basis_of_parity(parity);
        let n = count_homogeneous(a.field(), support.len()).expect("checked above");
        let part: Vec<T> = (1..=n as u64)
            .into_par_iter()
            .map(|i| {
                let x = HomogeneousElement::from_parts(
                    Element::from_coords(nth_vector(a, &support, i as u128)),
                    parity,
                );
                f(&x)
            })
            .collect();
        out.extend(part);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedNilOutcome {
    /// Every homogeneous element is nilpotent; `max_index` is the largest
    /// nilpotency index of a generated subalgebra when it was computed.
    GradedNil { max_index: Option<usize> },
    NotGradedNil { witness: HomogeneousElement, right_power_index: Option<usize> },
    /// The symbolic test could not decide.
    Inconclusive { parity: Parity },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedNilReport {
    pub backend: Backend,
    pub outcome: GradedNilOutcome,
    /// Qualifiers attached to the verdict, e.g. `symbolic-right-power`.
    pub flags: Vec<String>,
}

impl GradedNilReport {
    pub fn is_graded_nil(&self) -> Option<bool> {
        match self.outcome {
            GradedNilOutcome::GradedNil { .. } => Some(true),
            GradedNilOutcome::NotGradedNil { .. } => Some(false),
            GradedNilOutcome::Inconclusive { .. } => None,
        }
    }
}

pub(crate) fn resolve_backend(a: &SuperAlgebra, backend: Backend, budget: u128) -> Backend {
    match backend {
        Backend::Auto => {
            if homogeneous_count(a, budget).is_ok() {
                Backend::Enumerate
            } else {
                Backend::Symbolic
            }
        }
        b => b,
    }
}

pub fn graded_nil_check(a: &SuperAlgebra, backend: Backend, budget: u128) -> Result<GradedNilReport> {
    match resolve_backend(a, backend, budget) {
        Backend::Enumerate => graded_nil_enumerate(a, budget),
        _ => graded_nil_symbolic(a, budget),
    }
}

fn graded_nil_enumerate(a: &SuperAlgebra, budget: u128) -> Result<GradedNilReport> {
    let results = map_homogeneous(a, budget, |x| element_nilpotency_raw(a, x.coords()))?;
    let mut max_index = None;
    let mut elements = Parity::both().into_iter().flat_map(|p| enumerate_homogeneous(a, p, budget).unwrap());
    for r in results {
        let x = elements.next().expect("same enumeration");
        match r.subalgebra_index {
            Some(n) => max_index = max_index.max(Some(n)),
            None => {
                return Ok(GradedNilReport {
                    backend: Backend::Enumerate,
                    outcome: GradedNilOutcome::NotGradedNil { witness: x, right_power_index: r.right_power_index },
                    flags: vec![],
                })
            }
        }
    }
    Ok(GradedNilReport { backend: Backend::Enumerate, outcome: GradedNilOutcome::GradedNil { max_index }, flags: vec![] })
}

/// Generic homogeneous element of one parity: one indeterminate per basis
/// vector of that parity.
pub(crate) fn generic_element(a: &SuperAlgebra, parity: Parity) -> (PolyRing, Vec<usize>, Vec<MultiPoly>) {
    let support = a.basis_of_parity(parity);
    let names = support.iter().map(|&i| format!("t_{}", a.basis_names()[i])).collect();
    let ring = PolyRing::new(a.field(), names);
    let mut coords = vec![ring.zero(); a.dim()];
    for (v, &i) in support.iter().enumerate() {
        coords[i] = ring.var(v);
    }
    (ring, support, coords)
}

/// Searches for a point of the support at which some polynomial is nonzero:
/// exhaustively over a finite field within the budget, otherwise over basis
/// vectors and then seeded random integer points.
pub(crate) fn find_nonvanishing_point(
    field: FieldSpec,
    nvars: usize,
    polys: &[MultiPoly],
    budget: u128,
) -> Option<Vec<Scalar>> {
    let nonzero: Vec<&MultiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let hits = |pt: &[Scalar]| nonzero.iter().any(|p| !p.evaluate(pt).is_zero());
    if let Some(q) = field.order() {
        let total = count_homogeneous(field, nvars);
        if let Some(n) = total.filter(|&n| n <= budget) {
            for mut idx in 1..=n {
                let pt: Vec<Scalar> = (0..nvars)
                    .map(|_| {
                        let c = field.from_u64((idx % q as u128) as u64);
                        idx /= q as u128;
                        c
                    })
                    .collect();
                if hits(&pt) {
                    return Some(pt);
                }
            }
            return None;
        }
    }
    for v in 0..nvars {
        let mut pt = vec![field.zero(); nvars];
        pt[v] = field.one();
        if hits(&pt) {
            return Some(pt);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let tries = budget.min(2048) as usize;
    for _ in 0..tries {
        let pt: Vec<Scalar> = (0..nvars).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
        if hits(&pt) {
            return Some(pt);
        }
    }
    None
}

fn graded_nil_symbolic(a: &SuperAlgebra, budget: u128) -> Result<GradedNilReport> {
    let flags = vec!["symbolic-right-power".to_string()];
    let d = a.dim();
    for parity in Parity::both() {
        let (ring, support, x) = generic_element(a, parity);
        if support.is_empty() {
            continue;
        }
        let mut p = x.clone();
        for _ in 0..d {
            p = a.product_in(&ring, &p, &x);
            if p.iter().all(MultiPoly::is_zero) {
                break;
            }
        }
        if p.iter().all(MultiPoly::is_zero) {
            continue;
        }
        return Ok(match find_nonvanishing_point(a.field(), support.len(), &p, budget) {
            Some(pt) => {
                let mut coords = vec![a.field().zero(); d];
                for (c, &i) in pt.into_iter().zip(&support) {
                    coords[i] = c;
                }
                let idx = right_power_index(a, &coords);
                GradedNilReport {
                    backend: Backend::Symbolic,
                    outcome: GradedNilOutcome::NotGradedNil {
                        witness: HomogeneousElement::from_parts(Element::from_coords(coords), parity),
                        right_power_index: idx,
                    },
                    flags,
                }
            }
            None => GradedNilReport { backend: Backend::Symbolic, outcome: GradedNilOutcome::Inconclusive { parity }, flags },
        });
    }
    Ok(GradedNilReport { backend: Backend::Symbolic, outcome: GradedNilOutcome::GradedNil { max_index: None }, flags })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn h(a: &SuperAlgebra, v: &[i64]) -> HomogeneousElement {
        HomogeneousElement::new(a, a.element_from_ints(v).unwrap()).unwrap()
    }

    #[test]
    fn right_powers_in_shestakov() {
        let a = corpus::shestakov_alt();
        let e1 = h(&a, &[1, 0, 0]);
        assert!(right_power(&a, &e1, 2).unwrap().is_zero());
        assert_eq!(right_power(&a, &e1, 1).unwrap(), *e1.element());
        let x = h(&a, &[0, 1, 1]);
        assert!(right_power(&a, &x, 2).unwrap().is_zero());
    }

    #[test]
    fn element_nilpotency() {
        let a = corpus::shestakov_alt();
        let f2 = element_nilpotent(&a, &h(&a, &[0, 0, 1])).unwrap();
        assert_eq!(f2, ElementNilpotency { nilpotent: true, subalgebra_index: Some(2), right_power_index: Some(2) });
        let e1 = element_nilpotent(&a, &h(&a, &[1, 0, 0])).unwrap();
        assert_eq!(e1.subalgebra_index, Some(2));
        let m = corpus::m11(FieldSpec::Rationals);
        let one = h(&m, &[1, 0, 0, 1]);
        let r = element_nilpotent(&m, &one).unwrap();
        assert!(!r.nilpotent);
        assert_eq!(r.right_power_index, None);
    }

    #[test]
    fn shestakov_graded_nil_by_enumeration() {
        let a = corpus::shestakov_alt();
        assert_eq!(enumerate_homogeneous(&a, Parity::Even, DEFAULT_BUDGET).unwrap().count(), 2);
        assert_eq!(enumerate_homogeneous(&a, Parity::Odd, DEFAULT_BUDGET).unwrap().count(), 8);
        let r = graded_nil_check(&a, Backend::Enumerate, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.outcome, GradedNilOutcome::GradedNil { max_index: Some(2) });
        let s = graded_nil_check(&a, Backend::Symbolic, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.is_graded_nil(), Some(true));
        assert_eq!(s.flags, vec!["symbolic-right-power"]);
    }

    #[test]
    fn m11_is_not_graded_nil() {
        let a = corpus::m11(FieldSpec::prime(3).unwrap());
        let r = graded_nil_check(&a, Backend::Auto, DEFAULT_BUDGET).unwrap();
        match r.outcome {
            GradedNilOutcome::NotGradedNil { witness, .. } => assert_eq!(witness.element(), &a.basis_element(0)),
            other => panic!("{other:?}"),
        }
        let q = corpus::m11(FieldSpec::Rationals);
        let s = graded_nil_check(&q, Backend::Auto, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.backend, Backend::Symbolic);
        assert_eq!(s.is_graded_nil(), Some(false));
    }

    #[test]
    fn budget_and_field_errors() {
        let a = corpus::shestakov_alt();
        assert!(matches!(graded_nil_check(&a, Backend::Enumerate, 5), Err(Error::BudgetExceeded { needed: 10, .. })));
        let q = corpus::m11(FieldSpec::Rationals);
        assert!(graded_nil_check(&q, Backend::Enumerate, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn zero_algebra_graded_nil_index_two() {
        let a = corpus::zero(1, 1, FieldSpec::prime(3).unwrap());
        let r = graded_nil_check(&a, Backend::Enumerate, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.outcome, GradedNilOutcome::GradedNil { max_index: Some(2) });
    }
}
