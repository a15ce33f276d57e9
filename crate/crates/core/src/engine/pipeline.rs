use super::chain::{engel_chain_with, ChainCertificate};
use super::plus::plus_functor;
use crate::algebra::nil::find_nonvanishing_point;
use crate::algebra::{power_series_of, Backend, Element, HomogeneousElement, Parity, SubSuperspace, SuperAlgebra};
use crate::arith::{Matrix, MultiPoly, PolyRing, Ring, Scalar};
use crate::error::{Error, Result};
use crate::identities::{check_jordan_super, check_superassociative, DEFAULT_ENVELOPE_BUDGET};
use crate::operators::{
    engel_check, jacobson_nilpotency, plain_right, plain_right_algebra, weakly_closed_verify, EngelMode, Gamma,
    WeakClosureReport, WeaklyClosedSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Jordan = 1,
    Engelian = 2,
    EvenCase = 3,
    OddCase = 4,
    SubalgebraOperators = 5,
    WeakClosure = 6,
    Chain = 7,
    Nilpotency = 8,
}

impl Stage {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Stage::Jordan => "jordan",
            Stage::Engelian => "engelian",
            Stage::EvenCase => "even-case",
            Stage::OddCase => "odd-case",
            Stage::SubalgebraOperators => "subalgebra-operators",
            Stage::WeakClosure => "weak-closure",
            Stage::Chain => "chain",
            Stage::Nilpotency => "nilpotency",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PipelineOutcome {
    Passed,
    Failed { stage: Stage, witness: Option<Element>, reason: String },
}

/// Every field is `None` when the pipeline stopped before that stage.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineCertificate {
    pub j: SubSuperspace,
    pub jordan: Option<bool>,
    pub engelian: Option<bool>,
    /// Plain `R_X` nilpotent for a generic even `X ∈ J`.
    pub even_case: Option<bool>,
    /// `R_{a∘b} = (R_a R_b + R_b R_a)/2` on even basis pairs of `J`.
    pub phi_homomorphism: Option<bool>,
    /// `R_X^2 = R_{X^2}` and `R_X` nilpotent for a generic odd `X ∈ J`.
    pub odd_case: Option<bool>,
    pub jprime: Option<SubSuperspace>,
    pub rj_dim: Option<usize>,
    pub rjprime_equals_rj: Option<bool>,
    pub weak_closure: Option<WeakClosureReport>,
    pub rj_index: Option<usize>,
    pub jprime_chain: Option<ChainCertificate>,
    pub j_index: Option<usize>,
    pub outcome: PipelineOutcome,
}

impl PipelineCertificate {
    fn new(j: &SubSuperspace) -> Self {
        PipelineCertificate {
            j: j.clone(),
            jordan: None,
            engelian: None,
            even_case: None,
            phi_homomorphism: None,
            odd_case: None,
            jprime: None,
            rj_dim: None,
            rjprime_equals_rj: None,
            weak_closure: None,
            rj_index: None,
            jprime_chain: None,
            j_index: None,
            outcome: PipelineOutcome::Passed,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == PipelineOutcome::Passed
    }

    fn fail(mut self, stage: Stage, witness: Option<Element>, reason: impl Into<String>) -> Self {
        self.outcome = PipelineOutcome::Failed { stage, witness, reason: reason.into() };
        self
    }
}

/// Plain `R_X` for `X = sum t_i b_i` over the given basis vectors.
fn generic_plain_r(a: &SuperAlgebra, basis: &[HomogeneousElement]) -> (PolyRing, Vec<MultiPoly>, Matrix<PolyRing>) {
    let ring = PolyRing::with_vars(a.field(), basis.len(), "t");
    let d = a.dim();
    let mut x = vec![ring.zero(); d];
    for (v, b) in basis.iter().enumerate() {
        for (slot, c) in x.iter_mut().zip(b.coords()) {
            if !c.is_zero() {
                slot.add_assign(&ring.var(v).scale(c));
            }
        }
    }
    let r = plain_r_of(a, &ring, &x);
    (ring, x, r)
}

fn plain_r_of(a: &SuperAlgebra, ring: &PolyRing, x: &[MultiPoly]) -> Matrix<PolyRing> {
    let d = a.dim();
    let columns = (0..d)
        .map(|c| {
            let mut y = vec![ring.zero(); d];
            y[c] = ring.one();
            a.product_in(ring, &y, x)
        })
        .collect();
    Matrix::from_columns(ring.clone(), d, columns).expect("square")
}

fn specialize(basis: &[HomogeneousElement], pt: &[Scalar], d: usize, field: crate::arith::FieldSpec) -> Element {
    let mut out = Element::zero(field, d);
    for (b, c) in basis.iter().zip(pt) {
        out = out.add(&b.element().scale(c));
    }
    out
}

/// `R_X^d`, as a polynomial matrix.
fn power_d(r: &Matrix<PolyRing>) -> Matrix<PolyRing> {
    let mut p = r.clone();
    for _ in 1..r.rows() {
        if p.is_zero() {
            break;
        }
        p = p.mul(r).expect("square");
    }
    p
}

/// Runs the special Jordan argument on a `∘`-closed graded subspace `J` of
/// `A^+` and certifies each stage.
pub fn special_jordan_pipeline(
    a: &SuperAlgebra,
    j: &SubSuperspace,
    backend: Backend,
    budget: u128,
) -> Result<PipelineCertificate> {
    if j.ambient_dim() != a.dim() {
        return Err(Error::AlgebraMismatch);
    }
    if a.field().characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    if !check_superassociative(a).verdict {
        return Err(Error::NotAssociative);
    }
    let plus = plus_functor(a)?;
    if !j.is_subalgebra(&plus) {
        return Err(Error::NotPlusClosed);
    }
    let f = a.field();
    let d = a.dim();
    let mut cert = PipelineCertificate::new(j);
    let j_basis = j.homogeneous_basis();
    let jalg = plus.restrict_to(j, "J")?;

    let jordan = check_jordan_super(&jalg, None, DEFAULT_ENVELOPE_BUDGET.max(budget.min(4096)))?;
    cert.jordan = Some(jordan.verdict);
    if !jordan.verdict {
        let reason = match jordan.witness {
            Some(w) => format!("J is not a Jordan superalgebra: {} fails at ({})", w.instance, w.labels.join(", ")),
            None => "J is not a Jordan superalgebra".into(),
        };
        return Ok(cert.fail(Stage::Jordan, None, reason));
    }

    let engel = engel_check(&jalg, EngelMode::RNilpotencyOnly, backend, budget)?;
    cert.engelian = engel.verdict;
    if engel.verdict != Some(true) {
        let w = engel.witness.map(|x| specialize(&j_basis, x.coords(), d, f));
        return Ok(cert.fail(Stage::Engelian, w, "a restricted R+ operator is not nilpotent"));
    }

    let even = j.basis_of_parity(Parity::Even);
    let odd = j.basis_of_parity(Parity::Odd);
    if !even.is_empty() {
        let (ring, _, r) = generic_plain_r(a, &even);
        let p = power_d(&r);
        let nil = p.is_zero();
        cert.even_case = Some(nil);
        let half = f.from_i64(2).inv()?;
        let phi = even.iter().all(|x| {
            even.iter().all(|y| {
                let xy = a.product(x.coords(), y.coords());
                let yx = a.product(y.coords(), x.coords());
                let circ: Vec<Scalar> = xy.iter().zip(&yx).map(|(p, q)| &(p + q) * &half).collect();
                let (rx, ry) = (plain_right(a, x.coords()), plain_right(a, y.coords()));
                let sym = rx.mul(&ry).and_then(|m| m.add(&ry.mul(&rx)?)).expect("square").scale(&half);
                plain_right(a, &circ) == sym
            })
        });
        cert.phi_homomorphism = Some(phi);
        if !nil || !phi {
            let w = find_nonvanishing_point(f, ring.num_vars(), p.entries(), budget)
                .map(|pt| specialize(&even, &pt, d, f));
            let reason = if nil { "R is not a Jordan homomorphism on even elements" } else { "plain R of an even element is not nilpotent" };
            return Ok(cert.fail(Stage::EvenCase, w, reason));
        }
    } else {
        cert.even_case = Some(true);
        cert.phi_homomorphism = Some(true);
    }

    if !odd.is_empty() {
        let (ring, x, r) = generic_plain_r(a, &odd);
        let x2 = a.product_in(&ring, &x, &x);
        let square = r.mul(&r)?.sub(&plain_r_of(a, &ring, &x2))?;
        let p = power_d(&r);
        let ok = square.is_zero() && p.is_zero();
        cert.odd_case = Some(ok);
        if !ok {
            let bad = if square.is_zero() { p } else { square };
            let w = find_nonvanishing_point(f, ring.num_vars(), bad.entries(), budget)
                .map(|pt| specialize(&odd, &pt, d, f));
            return Ok(cert.fail(Stage::OddCase, w, "R_a^2 = R_(a^2) or nilpotency fails for an odd element"));
        }
    } else {
        cert.odd_case = Some(true);
    }

    let jprime = SubSuperspace::generate_subalgebra(a, j_basis.iter().map(HomogeneousElement::element));
    let rj = plain_right_algebra(a, j);
    let rjp = plain_right_algebra(a, &jprime);
    let equal = rj.space == rjp.space;
    cert.jprime = Some(jprime.clone());
    cert.rj_dim = Some(rj.dim());
    cert.rjprime_equals_rj = Some(equal);
    if !equal {
        return Ok(cert.fail(Stage::SubalgebraOperators, None, "R(J') differs from R(J)"));
    }

    let elements = j_basis
        .iter()
        .map(|x| (format!("R[{}]", a.describe(x.element())), plain_right(a, x.coords()), x.parity()))
        .collect();
    let w = WeaklyClosedSet::new(f, d, elements, Gamma::SuperSign);
    let report = weakly_closed_verify(&w);
    cert.weak_closure = Some(report.clone());
    if !report.verdict {
        let (i, k) = report.failing_pair.expect("failure has a pair");
        return Ok(cert.fail(Stage::WeakClosure, Some(j_basis[i].element().clone()), format!("pair ({i}, {k}) leaves span(W)")));
    }
    match jacobson_nilpotency(&w) {
        Ok((_, n)) => cert.rj_index = Some(n),
        Err(e) => return Ok(cert.fail(Stage::WeakClosure, None, e.to_string())),
    }

    let jp_alg = a.restrict_to(&jprime, "J'")?;
    let chain = engel_chain_with(&jp_alg, backend, budget);
    let ok = chain.is_nilpotent();
    let witness = chain.witness().map(|x| specialize(&jprime.homogeneous_basis(), x.coords(), d, f));
    cert.jprime_chain = Some(chain);
    if !ok {
        return Ok(cert.fail(Stage::Chain, witness, "the chain on J' does not reach J'"));
    }

    let series = power_series_of(&plus, j);
    cert.j_index = series.zero_index();
    if cert.j_index.is_none() {
        return Ok(cert.fail(Stage::Nilpotency, None, "the ∘-powers of J do not reach zero"));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_BUDGET;
    use crate::arith::FieldSpec;
    use crate::corpus;

    #[test]
    fn upper_triangular_whole() {
        let u = corpus::upper_tri(3, &[0, 1, 0], FieldSpec::Rationals).unwrap();
        let c = special_jordan_pipeline(&u, &SubSuperspace::whole(&u), Backend::Auto, DEFAULT_BUDGET).unwrap();
        assert!(c.passed(), "{:?}", c.outcome);
        assert_eq!(c.rjprime_equals_rj, Some(true));
        assert!(c.j_index.is_some());
    }

    #[test]
    fn odd_line_in_m11() {
        let m = corpus::m11(FieldSpec::Rationals);
        let j = SubSuperspace::basis_span(&m, &[1]);
        let c = special_jordan_pipeline(&m, &j, Backend::Auto, DEFAULT_BUDGET).unwrap();
        assert!(c.passed(), "{:?}", c.outcome);
        assert_eq!(c.j_index, Some(2));
    }

    #[test]
    fn jprime_differs() {
        let u = corpus::upper_tri(3, &[0, 1, 0], FieldSpec::Rationals).unwrap();
        let x = u.element_from_ints(&[1, 0, 1]).unwrap();
        let j = SubSuperspace::from_vectors(&u, &[x]).unwrap();
        let c = special_jordan_pipeline(&u, &j, Backend::Auto, DEFAULT_BUDGET).unwrap();
        assert!(c.passed(), "{:?}", c.outcome);
        assert_ne!(c.jprime.as_ref().unwrap(), &j);
    }

    #[test]
    fn unital_control() {
        let m = corpus::m11(FieldSpec::Rationals);
        let c = special_jordan_pipeline(&m, &SubSuperspace::whole(&m), Backend::Auto, DEFAULT_BUDGET).unwrap();
        match &c.outcome {
            PipelineOutcome::Failed { stage: Stage::Engelian, witness: Some(_), .. } => {}
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn refusals() {
        let a = corpus::shestakov_table(FieldSpec::prime(5).unwrap(), "s");
        assert!(matches!(
            special_jordan_pipeline(&a, &SubSuperspace::whole(&a), Backend::Auto, DEFAULT_BUDGET),
            Err(Error::NotAssociative)
        ));
        let m = corpus::m11(FieldSpec::Rationals);
        let j = SubSuperspace::basis_span(&m, &[1, 2]);
        assert!(matches!(special_jordan_pipeline(&m, &j, Backend::Auto, DEFAULT_BUDGET), Err(Error::NotPlusClosed)));
    }
}
