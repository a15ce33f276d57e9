use super::qideal::{try_qideal, QIdealCheck, QIdealFailure};
use crate::algebra::{
    power_series, Backend, Element, HomogeneousElement, Parity, SubSuperspace, SuperAlgebra, DEFAULT_BUDGET,
};
use crate::arith::VectorSpan;
use crate::identities::check_alternative_super;
use crate::operators::{
    engel_check, operator_matrix, plain_right, stable_rank_power, EngelMode, Nilpotency, OpKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepCase {
    /// `a` even, `v = a^[k-1]` where `a^[k]` is the first right power in `B`.
    EvenPower(usize),
    /// `a` odd with `a a ∈ B`, `v = a`.
    OddDirect,
    /// `a` odd, `v = (a a)^[k-1]`.
    OddViaSquare(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainStep {
    pub b_before: SubSuperspace,
    pub normalizer: SubSuperspace,
    pub chosen_a: HomogeneousElement,
    pub case: StepCase,
    pub v: HomogeneousElement,
    pub c: SubSuperspace,
    pub cstar_index: usize,
    pub qideal: QIdealCheck,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FailureWitness {
    /// `R_v` is not nilpotent; `stable_rank = (p, r)` with
    /// `rank R^p = rank R^{p+1} = r > 0`.
    RvNotNilpotent { element: HomogeneousElement, stable_rank: (usize, usize) },
    NormalizerStuck { b: SubSuperspace },
    /// Some homogeneous `R_x` is not nilpotent.
    HypothesisFailed { witness: HomogeneousElement, stable_rank: (usize, usize) },
    /// A step that cannot fail for alternative superalgebras did.
    ConstructionFailed { element: HomogeneousElement, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChainOutcome {
    Nilpotent {
        /// Nilpotency index of `A*`.
        operator_index: usize,
        /// Nilpotency index of `A` computed from right multiplications of
        /// powers.
        algebra_index: usize,
        /// Nilpotency index from the power series.
        power_series_index: usize,
    },
    Failed(FailureWitness),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainCertificate {
    pub alternative: bool,
    pub steps: Vec<ChainStep>,
    pub outcome: ChainOutcome,
}

impl ChainCertificate {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self.outcome, ChainOutcome::Nilpotent { .. })
    }

    pub fn witness(&self) -> Option<&HomogeneousElement> {
        match &self.outcome {
            ChainOutcome::Failed(
                FailureWitness::RvNotNilpotent { element, .. }
                | FailureWitness::HypothesisFailed { witness: element, .. }
                | FailureWitness::ConstructionFailed { element, .. },
            ) => Some(element),
            _ => None,
        }
    }
}

pub fn engel_chain(a: &SuperAlgebra) -> ChainCertificate {
    engel_chain_with(a, Backend::Auto, DEFAULT_BUDGET)
}

fn in_normalizer(a: &SuperAlgebra, b: &SubSuperspace, x: &[crate::arith::Scalar]) -> bool {
    b.homogeneous_basis().iter().all(|y| {
        b.contains_coords(&a.product(x, y.coords())) && b.contains_coords(&a.product(y.coords(), x))
    })
}

/// First right power of `x` inside `B`: returns `(k, x^[k-1])`, checking that
/// the intermediate powers normalize `B`.
fn power_into(a: &SuperAlgebra, b: &SubSuperspace, x: &HomogeneousElement) -> Result<(usize, Element), String> {
    let mut prev = x.coords().to_vec();
    for k in 2..=a.dim() + 1 {
        if !in_normalizer(a, b, &prev) {
            return Err(format!("{} does not normalize B", a.describe(&Element::from_coords(prev))));
        }
        let next = a.product(&prev, x.coords());
        if b.contains_coords(&next) {
            return Ok((k, Element::from_coords(prev)));
        }
        prev = next;
    }
    Err("no right power lies in B".into())
}

fn hypothesis_witness(a: &SuperAlgebra, backend: Backend, budget: u128) -> Option<FailureWitness> {
    let report = engel_check(a, EngelMode::RNilpotencyOnly, backend, budget).ok()?;
    let witness = report.witness?;
    let stable_rank = report.stable_rank.expect("witness has a stable rank");
    Some(FailureWitness::HypothesisFailed { witness, stable_rank })
}

fn rv_witness(a: &SuperAlgebra, x: &HomogeneousElement) -> Option<FailureWitness> {
    let r = operator_matrix(a, OpKind::RightSigned, x.coords(), x.parity());
    let (p, rank) = stable_rank_power(&r);
    (rank > 0).then(|| FailureWitness::RvNotNilpotent { element: x.clone(), stable_rank: (p, rank) })
}

/// `A^1 = A`, `A^k = sum_{i+j=k} R(A^j) A^i`, with plain right
/// multiplication matrices applied to spanning vectors.
pub(crate) fn operator_power_index(a: &SuperAlgebra) -> Option<usize> {
    let f = a.field();
    let d = a.dim();
    let mut terms: Vec<VectorSpan> = vec![VectorSpan::full(f, d)];
    loop {
        let k = terms.len() + 1;
        if terms[k - 2].is_zero() {
            return Some(k - 1);
        }
        let mut next = VectorSpan::new(f, d);
        for i in 1..k {
            let ops: Vec<_> = terms[k - i - 1].basis().iter().map(|y| plain_right(a, y)).collect();
            for x in terms[i - 1].basis() {
                for r in &ops {
                    next.insert(&r.apply(x).expect("square"));
                }
            }
        }
        if next == terms[k - 2] {
            return None;
        }
        terms.push(next);
    }
}

/// Builds `0 = B_0 ⊂ B_1 ⊂ ... ⊂ A` one dimension at a time, each `B_i*`
/// nilpotent, picking the next vector from the normalizer of `B_i`.
pub fn engel_chain_with(a: &SuperAlgebra, backend: Backend, budget: u128) -> ChainCertificate {
    let alternative = check_alternative_super(a).verdict;
    let mut steps = Vec::new();
    let mut b = SubSuperspace::zero(a);
    let fail = |steps, w| ChainCertificate { alternative, steps, outcome: ChainOutcome::Failed(w) };
    let mut last_index = 1;
    while b.dim() < a.dim() {
        let normalizer = b.normalizer(a).expect("B is a subalgebra");
        let Some(chosen) = normalizer.homogeneous_basis().into_iter().find(|x| !b.contains(x.element())) else {
            let w = hypothesis_witness(a, backend, budget).unwrap_or(FailureWitness::NormalizerStuck { b: b.clone() });
            return fail(steps, w);
        };
        let built = match chosen.parity() {
            Parity::Even => power_into(a, &b, &chosen).map(|(k, v)| (StepCase::EvenPower(k), v)),
            Parity::Odd => {
                let sq = a.product(chosen.coords(), chosen.coords());
                if b.contains_coords(&sq) {
                    Ok((StepCase::OddDirect, chosen.element().clone()))
                } else {
                    let sq = HomogeneousElement::from_parts(Element::from_coords(sq), Parity::Even);
                    power_into(a, &b, &sq).map(|(k, v)| (StepCase::OddViaSquare(k), v))
                }
            }
        };
        let (case, v) = match built {
            Ok(x) => x,
            Err(reason) => {
                let w = rv_witness(a, &chosen).unwrap_or(FailureWitness::ConstructionFailed { element: chosen, reason });
                return fail(steps, w);
            }
        };
        let v_parity = match case {
            StepCase::OddDirect => Parity::Odd,
            _ => Parity::Even,
        };
        let v = HomogeneousElement::from_parts(v, v_parity);
        let qideal = match try_qideal(a, &b, &v) {
            Ok(q) => q,
            Err(QIdealFailure::RvNotNilpotent { stable_rank }) => {
                return fail(steps, FailureWitness::RvNotNilpotent { element: v, stable_rank });
            }
            Err(e) => {
                let reason = e.describe(a, &v);
                return fail(steps, FailureWitness::ConstructionFailed { element: v, reason });
            }
        };
        let cstar_index = match (&qideal.bstar, qideal.inclusion) {
            (Nilpotency::Nilpotent(k), true) => *k,
            _ => {
                let reason = if qideal.inclusion { "C* is not nilpotent" } else { "(C*)^(2n-1) is not inside Q" };
                return fail(steps, FailureWitness::ConstructionFailed { element: v, reason: reason.into() });
            }
        };
        last_index = cstar_index;
        let c = qideal.b.clone();
        steps.push(ChainStep { b_before: b, normalizer, chosen_a: chosen, case, v, c: c.clone(), cstar_index, qideal });
        b = c;
    }
    let series = power_series(a).zero_index();
    let algebra_index = operator_power_index(a);
    match (series, algebra_index) {
        (Some(s), Some(k)) if s == k => ChainCertificate {
            alternative,
            steps,
            outcome: ChainOutcome::Nilpotent { operator_index: last_index, algebra_index: k, power_series_index: s },
        },
        _ => {
            let reason = format!("A* is nilpotent but the power indices disagree: {series:?} vs {algebra_index:?}");
            let element = HomogeneousElement::from_parts(a.zero(), Parity::Even);
            fail(steps, FailureWitness::ConstructionFailed { element, reason })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::corpus;

    #[test]
    fn zero_algebra() {
        let z = corpus::zero(1, 1, FieldSpec::Rationals);
        let c = engel_chain(&z);
        assert_eq!(c.steps.len(), 2);
        assert!(c.steps.iter().all(|s| s.cstar_index <= 2));
        assert_eq!(c.outcome, ChainOutcome::Nilpotent { operator_index: 1, algebra_index: 2, power_series_index: 2 });
    }

    #[test]
    fn shestakov_trace() {
        let a = corpus::shestakov_alt();
        let c = engel_chain(&a);
        let added: Vec<_> = c.steps.iter().map(|s| a.describe(s.v.element())).collect();
        assert_eq!(added, ["e1", "f1"]);
        assert_eq!(c.steps[0].case, StepCase::EvenPower(2));
        assert_eq!(c.steps[1].case, StepCase::OddDirect);
        match &c.outcome {
            ChainOutcome::Failed(FailureWitness::RvNotNilpotent { element, stable_rank }) => {
                assert_eq!(element.element(), &a.basis_element(2));
                assert_eq!(*stable_rank, (1, 2));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn upper_triangular() {
        let u = corpus::upper_tri(3, &[0, 1, 0], FieldSpec::Rationals).unwrap();
        let c = engel_chain(&u);
        assert_eq!(c.steps.len(), 3);
        match c.outcome {
            ChainOutcome::Nilpotent { algebra_index, power_series_index, .. } => {
                assert_eq!((algebra_index, power_series_index), (3, 3));
            }
            o => panic!("{o:?}"),
        }
        assert!(c.steps.iter().all(|s| s.qideal.inclusion));
    }

    #[test]
    fn unital_control() {
        let m = corpus::m11(FieldSpec::Rationals);
        let c = engel_chain(&m);
        assert!(!c.is_nilpotent());
        assert!(c.witness().is_some());
    }
}
