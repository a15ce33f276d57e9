//! Membership in the varieties of associative, supercommutative,
//! alternative and Jordan superalgebras, decided directly through
//! superidentities and independently through Grassmann envelopes.

mod grassmann;

use std::collections::BTreeMap;

pub use grassmann::{build_grassmann_envelope, envelope_dim, EnvelopeAlgebra, GrassmannAlgebra, MAX_GENERATORS};
use grassmann::{tensor_mul, tensor_sub, Tensor};

use crate::algebra::{nil::find_nonvanishing_point, Element, Parity, SuperAlgebra};
use crate::arith::{MultiPoly, PolyRing, Ring, Scalar};
use crate::error::{Error, Result};

/// Default cap on the envelope size used by the Jordan and oracle checks.
pub const DEFAULT_ENVELOPE_BUDGET: u128 = 256;
/// Default number of Grassmann generators for the envelope oracle.
pub const DEFAULT_ORACLE_GENERATORS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    Vector(Vec<Scalar>),
    /// A coordinate of the defect that is a nonzero polynomial in the
    /// generic coordinates.
    Polynomial { coordinate: String, value: String },
}

impl Defect {
    pub fn is_zero(&self) -> bool {
        match self {
            Defect::Vector(v) => v.iter().all(Scalar::is_zero),
            Defect::Polynomial { .. } => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Which identity (or instance) failed, e.g. `left-alternative` or `supercommutativity`.
    pub instance: String,
    /// Names of the substituted elements, in slot order.
    pub labels: Vec<String>,
    /// Coordinates of the substituted elements, when concrete.
    pub substitution: Vec<Vec<Scalar>>,
    pub defect: Defect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub verdict: bool,
    pub witness: Option<Witness>,
    /// Verdicts of the individual identities that make up the check.
    pub checks: Vec<(String, bool)>,
}

impl IdentityReport {
    fn new(identity: &str) -> Self {
        IdentityReport { identity: identity.into(), verdict: true, witness: None, checks: vec![] }
    }

    fn record(&mut self, name: &str, ok: bool, witness: Option<Witness>) {
        self.checks.push((name.into(), ok));
        if !ok {
            self.verdict = false;
            if self.witness.is_none() {
                self.witness = witness;
            }
        }
    }
}

fn sign_of(flip: bool, x: &Element) -> Element {
    if flip {
        x.neg()
    } else {
        x.clone()
    }
}

fn basis_witness(a: &SuperAlgebra, instance: &str, slots: &[usize], defect: Element) -> Witness {
    Witness {
        instance: instance.into(),
        labels: slots.iter().map(|&i| a.basis_names()[i].clone()).collect(),
        substitution: slots.iter().map(|&i| a.basis_element(i).into_coords()).collect(),
        defect: Defect::Vector(defect.into_coords()),
    }
}

/// `(x, y, z) = 0` on all basis triples.
pub fn check_superassociative(a: &SuperAlgebra) -> IdentityReport {
    let mut r = IdentityReport::new("associative");
    let d = a.dim();
    let mut witness = None;
    'outer: for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let defect = a.basis_associator(i, j, k);
                if !defect.is_zero() {
                    witness = Some(basis_witness(a, "associativity", &[i, j, k], defect));
                    break 'outer;
                }
            }
        }
    }
    r.record("associativity", witness.is_none(), witness);
    r
}

/// `x y = (-1)^{|x||y|} y x` on all basis pairs.
pub fn check_supercommutative(a: &SuperAlgebra) -> IdentityReport {
    let mut r = IdentityReport::new("supercommutative");
    let d = a.dim();
    let mut witness = None;
    'outer: for i in 0..d {
        for j in i..d {
            let (x, y) = (a.basis_element(i), a.basis_element(j));
            let xy = a.mul(&x, &y).expect("same algebra");
            let yx = a.mul(&y, &x).expect("same algebra");
            let defect = xy.sub(&sign_of(a.parity_of(i).sign_flips(a.parity_of(j)), &yx));
            if !defect.is_zero() {
                witness = Some(basis_witness(a, "supercommutativity", &[i, j], defect));
                break 'outer;
            }
        }
    }
    r.record("supercommutativity", witness.is_none(), witness);
    r
}

/// Superidentities `(x,y,z) + (-1)^{|y||z|}(x,z,y) = 0` (right) and
/// `(x,y,z) + (-1)^{|x||y|}(y,x,z) = 0` (left) on basis triples, and the
/// coefficient system of `(a,a,x) = 0` for even `a`.
pub fn check_alternative_super(a: &SuperAlgebra) -> IdentityReport {
    let mut r = IdentityReport::new("alternative");
    let d = a.dim();
    let p = |i: usize| a.parity_of(i);
    let mut w1 = None;
    let mut w2 = None;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let ijk = a.basis_associator(i, j, k);
                if w1.is_none() {
                    let defect = ijk.add(&sign_of(p(j).sign_flips(p(k)), &a.basis_associator(i, k, j)));
                    if !defect.is_zero() {
                        w1 = Some(basis_witness(a, "right-alternative", &[i, j, k], defect));
                    }
                }
                if w2.is_none() {
                    let defect = ijk.add(&sign_of(p(i).sign_flips(p(j)), &a.basis_associator(j, i, k)));
                    if !defect.is_zero() {
                        w2 = Some(basis_witness(a, "left-alternative", &[i, j, k], defect));
                    }
                }
            }
        }
    }
    let w3 = identity_three_witness(a);
    // Report the witness of the first failing triple in lexicographic
    // order, whichever identity it violates.
    let first = [&w1, &w2]
        .into_iter()
        .flatten()
        .min_by_key(|w| w.labels.iter().map(|l| a.basis_names().iter().position(|n| n == l)).collect::<Vec<_>>())
        .cloned();
    let (ok1, ok2, ok3) = (w1.is_none(), w2.is_none(), w3.is_none());
    r.record("right-alternative", ok1, first.clone());
    r.record("left-alternative", ok2, first);
    r.record("(a,a,x)", ok3, w3);
    r
}

fn identity_three_witness(a: &SuperAlgebra) -> Option<Witness> {
    let even = a.basis_of_parity(Parity::Even);
    for (n, &i) in even.iter().enumerate() {
        for &j in &even[n..] {
            for x in 0..a.dim() {
                let defect = if i == j {
                    a.basis_associator(i, i, x)
                } else {
                    a.basis_associator(i, j, x).add(&a.basis_associator(j, i, x))
                };
                if !defect.is_zero() {
                    return Some(basis_witness(a, "(a,a,x)", &[i, j, x], defect));
                }
            }
        }
    }
    None
}

/// Generic element `X` of the degree <= 1 sector of `G_m(A)`:
/// `sum_i t_i (1 ⊗ x_i)` over even `x_i` plus `sum_{s,i} t_{s,i} (e_s ⊗ x_i)`
/// over odd `x_i` and `s < m`.
fn sector_generic(a: &SuperAlgebra, m: usize) -> (PolyRing, Tensor<MultiPoly>) {
    let even = a.basis_of_parity(Parity::Even);
    let odd = a.basis_of_parity(Parity::Odd);
    let mut keys = Vec::new();
    let mut names = Vec::new();
    for &i in &even {
        keys.push((0u32, i));
        names.push(format!("t_{}", a.basis_names()[i]));
    }
    for s in 0..m {
        for &i in &odd {
            keys.push((1u32 << s, i));
            names.push(format!("t_{}_{}", s + 1, a.basis_names()[i]));
        }
    }
    let ring = PolyRing::new(a.field(), names);
    let x = keys.into_iter().enumerate().map(|(v, k)| (k, ring.var(v))).collect();
    (ring, x)
}

fn first_nonzero_tensor(a: &SuperAlgebra, t: &Tensor<MultiPoly>) -> Option<Defect> {
    t.iter().next().map(|(&(s, i), p)| Defect::Polynomial {
        coordinate: format!("{}*{}", GrassmannAlgebra::monomial_name(s), a.basis_names()[i]),
        value: p.to_string(),
    })
}

/// Number of Grassmann generators used by [`check_jordan_super`] by default.
pub fn default_jordan_generators(a: &SuperAlgebra) -> usize {
    2 * a.odd_dim() + 2
}

/// Supercommutativity and the Jordan identity `(X, Y, X^2) = 0` in the
/// Grassmann envelope with `m` generators (default `2 dim A_1 + 2`).
///
/// `X` is the generic element of the sector of Grassmann degree <= 1, whose
/// coordinates may be specialized to arbitrary even Grassmann elements, so
/// polynomial vanishing there covers the whole envelope; `Y` runs over the
/// basis vectors of that sector, the identity being linear in `Y`. The
/// budget caps the number of generic coordinates.
pub fn check_jordan_super(a: &SuperAlgebra, generators: Option<usize>, budget: u128) -> Result<IdentityReport> {
    if a.field().characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    let m = generators.unwrap_or_else(|| default_jordan_generators(a));
    let mut r = IdentityReport::new("jordan");
    let sc = check_supercommutative(a);
    r.record("supercommutativity", sc.verdict, sc.witness);
    if !r.verdict {
        return Ok(r);
    }
    let vars = a.even_dim() as u128 + (m as u128) * a.odd_dim() as u128;
    if vars > budget {
        return Err(Error::BudgetExceeded { needed: vars, budget });
    }
    let (ring, x) = sector_generic(a, m);
    let x2 = tensor_mul(a, &ring, &x, &x);
    let mut ys: Vec<(u32, usize)> = a.basis_of_parity(Parity::Even).into_iter().map(|i| (0, i)).collect();
    if m > 0 {
        ys.extend(a.basis_of_parity(Parity::Odd).into_iter().map(|i| (1u32, i)));
    }
    let mut comm = None;
    let mut jordan = None;
    for &(s, i) in &ys {
        let y: Tensor<MultiPoly> = [((s, i), ring.one())].into_iter().collect();
        let label = format!("{}*{}", GrassmannAlgebra::monomial_name(s), a.basis_names()[i]);
        let xy = tensor_mul(a, &ring, &x, &y);
        if comm.is_none() {
            let c = tensor_sub(&ring, &xy, &tensor_mul(a, &ring, &y, &x));
            if let Some(defect) = first_nonzero_tensor(a, &c) {
                comm = Some(Witness { instance: "XY - YX".into(), labels: vec!["X".into(), label.clone()], substitution: vec![], defect });
            }
        }
        if jordan.is_none() {
            let lhs = tensor_mul(a, &ring, &xy, &x2);
            let rhs = tensor_mul(a, &ring, &x, &tensor_mul(a, &ring, &y, &x2));
            if let Some(defect) = first_nonzero_tensor(a, &tensor_sub(&ring, &lhs, &rhs)) {
                jordan = Some(Witness {
                    instance: "(X, Y, X^2)".into(),
                    labels: vec!["X".into(), label, "X^2".into()],
                    substitution: vec![],
                    defect,
                });
            }
        }
    }
    r.record("envelope commutativity", comm.is_none(), comm);
    r.record("envelope Jordan identity", jordan.is_none(), jordan);
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variety {
    Alternative,
    Jordan,
}

/// Concrete witness search for a nonzero polynomial defect: a point of the
/// generic coordinates where some defect coordinate does not vanish.
fn concretize(
    env: &EnvelopeAlgebra,
    ring: &PolyRing,
    defect: &[MultiPoly],
    labels: Vec<String>,
    instance: &str,
    eval: impl Fn(&[Scalar]) -> (Vec<Vec<Scalar>>, Vec<Scalar>),
) -> Witness {
    let e = &env.algebra;
    match find_nonvanishing_point(e.field(), ring.num_vars(), defect, 4096) {
        Some(pt) => {
            let (substitution, value) = eval(&pt);
            Witness { instance: instance.into(), labels, substitution, defect: Defect::Vector(value) }
        }
        None => {
            let (k, p) = defect.iter().enumerate().find(|(_, p)| !p.is_zero()).expect("nonzero defect");
            Witness {
                instance: instance.into(),
                labels,
                substitution: vec![],
                defect: Defect::Polynomial { coordinate: e.basis_names()[k].clone(), value: p.to_string() },
            }
        }
    }
}

fn specialize(x: &[MultiPoly], pt: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|p| p.evaluate(pt)).collect()
}

/// Independent oracle: the defining identities checked inside the
/// envelope `G_m(A)` with one indeterminate per envelope basis vector.
///
/// Alternative: `(X, X, Y) = 0` for generic `X` and basis `Y`, and
/// `(X, Y, Y) = 0` for basis `X` and generic `Y`. Jordan: commutativity on
/// basis pairs and `(X, Y, X^2) = 0` for generic `X` and basis `Y`.
pub fn check_via_envelope(a: &SuperAlgebra, m: usize, which: Variety, budget: u128) -> Result<IdentityReport> {
    if m < 4 {
        return Err(Error::PreconditionFailed(format!("the envelope oracle needs m >= 4, got {m}")));
    }
    if which == Variety::Jordan && a.field().characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    let env = build_grassmann_envelope(a, m, budget)?;
    let e = &env.algebra;
    let n = e.dim();
    let ring = PolyRing::with_vars(e.field(), n, "t");
    let generic: Vec<MultiPoly> = (0..n).map(|v| ring.var(v)).collect();
    let basis = |j: usize| -> Vec<MultiPoly> {
        let mut v = vec![ring.zero(); n];
        v[j] = ring.one();
        v
    };
    let nonzero = |v: &[MultiPoly]| v.iter().any(|p| !p.is_zero());
    let name = match which {
        Variety::Alternative => "envelope alternative",
        Variety::Jordan => "envelope jordan",
    };
    let mut r = IdentityReport::new(name);
    match which {
        Variety::Alternative => {
            let xx = e.product_in(&ring, &generic, &generic);
            let mut left = None;
            let mut right = None;
            for j in 0..n {
                let y = basis(j);
                if left.is_none() {
                    let lhs = e.product_in(&ring, &xx, &y);
                    let rhs = e.product_in(&ring, &generic, &e.product_in(&ring, &generic, &y));
                    let defect: Vec<MultiPoly> = lhs.iter().zip(&rhs).map(|(u, v)| u.sub(v)).collect();
                    if nonzero(&defect) {
                        left = Some(concretize(&env, &ring, &defect, vec!["X".into(), "X".into(), e.basis_names()[j].clone()], "(X, X, Y)", |pt| {
                            let xv = specialize(&generic, pt);
                            let yv = e.basis_element(j).into_coords();
                            let d = e.associator(&Element::from_coords(xv.clone()), &Element::from_coords(xv.clone()), &Element::from_coords(yv.clone())).unwrap();
                            (vec![xv.clone(), xv, yv], d.into_coords())
                        }));
                    }
                }
                if right.is_none() {
                    let lhs = e.product_in(&ring, &e.product_in(&ring, &y, &generic), &generic);
                    let rhs = e.product_in(&ring, &y, &xx);
                    let defect: Vec<MultiPoly> = lhs.iter().zip(&rhs).map(|(u, v)| u.sub(v)).collect();
                    if nonzero(&defect) {
                        right = Some(concretize(&env, &ring, &defect, vec![e.basis_names()[j].clone(), "Y".into(), "Y".into()], "(X, Y, Y)", |pt| {
                            let yv = specialize(&generic, pt);
                            let xv = e.basis_element(j).into_coords();
                            let d = e.associator(&Element::from_coords(xv.clone()), &Element::from_coords(yv.clone()), &Element::from_coords(yv.clone())).unwrap();
                            (vec![xv, yv.clone(), yv], d.into_coords())
                        }));
                    }
                }
                if left.is_some() && right.is_some() {
                    break;
                }
            }
            r.record("(X, X, Y)", left.is_none(), left);
            r.record("(X, Y, Y)", right.is_none(), right);
        }
        Variety::Jordan => {
            let mut comm = None;
            'pairs: for i in 0..n {
                for j in i + 1..n {
                    let (x, y) = (e.basis_element(i), e.basis_element(j));
                    let defect = e.mul(&x, &y)?.sub(&e.mul(&y, &x)?);
                    if !defect.is_zero() {
                        comm = Some(basis_witness(e, "XY - YX", &[i, j], defect));
                        break 'pairs;
                    }
                }
            }
            let commutative = comm.is_none();
            r.record("commutativity", commutative, comm);
            if commutative {
                let x2 = e.product_in(&ring, &generic, &generic);
                let mut jordan = None;
                for j in 0..n {
                    let y = basis(j);
                    let lhs = e.product_in(&ring, &e.product_in(&ring, &generic, &y), &x2);
                    let rhs = e.product_in(&ring, &generic, &e.product_in(&ring, &y, &x2));
                    let defect: Vec<MultiPoly> = lhs.iter().zip(&rhs).map(|(u, v)| u.sub(v)).collect();
                    if nonzero(&defect) {
                        jordan = Some(concretize(&env, &ring, &defect, vec!["X".into(), e.basis_names()[j].clone(), "X^2".into()], "(X, Y, X^2)", |pt| {
                            let xv = Element::from_coords(specialize(&generic, pt));
                            let yv = e.basis_element(j);
                            let x2v = e.mul(&xv, &xv).unwrap();
                            let d = e.associator(&xv, &yv, &x2v).unwrap();
                            (vec![xv.into_coords(), yv.into_coords(), x2v.into_coords()], d.into_coords())
                        }));
                        break;
                    }
                }
                r.record("(X, Y, X^2)", jordan.is_none(), jordan);
            }
        }
    }
    Ok(r)
}

/// Envelope oracle verdicts keyed by variety, convenient for comparisons.
pub fn oracle_verdicts(a: &SuperAlgebra, m: usize, budget: u128) -> Result<BTreeMap<&'static str, Option<bool>>> {
    let mut out = BTreeMap::new();
    out.insert("alternative", Some(check_via_envelope(a, m, Variety::Alternative, budget)?.verdict));
    let jordan = if a.field().characteristic() == 2 {
        None
    } else {
        Some(check_via_envelope(a, m, Variety::Jordan, budget)?.verdict)
    };
    out.insert("jordan", jordan);
    Ok(out)
}
