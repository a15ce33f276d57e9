use crate::algebra::{graded_nil_check, power_series, Backend, Parity, SuperAlgebra};
use crate::identities::{check_alternative_super, check_superassociative};
use crate::operators::{engel_check, EngelMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub hypotheses: Vec<(String, bool)>,
    pub applicable: bool,
    /// Power-series nilpotency, computed whether or not the hypotheses hold.
    pub nilpotent: bool,
    /// `R_x` nilpotent for all homogeneous `x`; `None` if not checked or
    /// undecided.
    pub r_nilpotent: Option<bool>,
}

impl CorollaryReport {
    /// Whether the conclusion holds whenever the hypotheses do.
    pub fn consistent(&self) -> bool {
        !self.applicable || (self.nilpotent && self.r_nilpotent != Some(false))
    }
}

/// `x x = 0` for every odd `x`: `f_i f_i = 0` and `f_i f_j + f_j f_i = 0` on
/// the odd basis.
pub fn odd_square_zero(a: &SuperAlgebra) -> bool {
    let odd = a.basis_of_parity(Parity::Odd);
    odd.iter().enumerate().all(|(n, &i)| {
        odd[n..].iter().all(|&j| {
            let x = a.basis_element(i);
            let y = a.basis_element(j);
            let xy = a.product(x.coords(), y.coords());
            if i == j {
                xy.iter().all(|c| c.is_zero())
            } else {
                let yx = a.product(y.coords(), x.coords());
                xy.iter().zip(&yx).all(|(p, q)| (p + q).is_zero())
            }
        })
    })
}

/// Alternative, graded-nil, characteristic not 3 and odd elements of square
/// zero imply nilpotency.
pub fn corollary_oddnil2(a: &SuperAlgebra, backend: Backend, budget: u128) -> CorollaryReport {
    let graded_nil = graded_nil_check(a, backend, budget).ok().and_then(|r| r.is_graded_nil()) == Some(true);
    let hypotheses = vec![
        ("alternative".to_string(), check_alternative_super(a).verdict),
        ("graded-nil".to_string(), graded_nil),
        ("characteristic not 3".to_string(), a.field().characteristic() != 3),
        ("odd squares vanish".to_string(), odd_square_zero(a)),
    ];
    let applicable = hypotheses.iter().all(|h| h.1);
    let nilpotent = power_series(a).reaches_zero();
    let r_nilpotent = applicable
        .then(|| engel_check(a, EngelMode::RNilpotencyOnly, backend, budget).ok().and_then(|r| r.verdict))
        .flatten();
    CorollaryReport { hypotheses, applicable, nilpotent, r_nilpotent }
}

/// Graded-nil associative superalgebras are nilpotent.
pub fn corollary_associative_gradednil(a: &SuperAlgebra, backend: Backend, budget: u128) -> CorollaryReport {
    let graded_nil = graded_nil_check(a, backend, budget).ok().and_then(|r| r.is_graded_nil()) == Some(true);
    let hypotheses = vec![
        ("associative".to_string(), check_superassociative(a).verdict),
        ("graded-nil".to_string(), graded_nil),
    ];
    let applicable = hypotheses.iter().all(|h| h.1);
    CorollaryReport { hypotheses, applicable, nilpotent: power_series(a).reaches_zero(), r_nilpotent: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_BUDGET;
    use crate::arith::FieldSpec;
    use crate::corpus;

    #[test]
    fn oddnil2() {
        let s = corollary_oddnil2(&corpus::shestakov_alt(), Backend::Auto, DEFAULT_BUDGET);
        assert!(!s.applicable && !s.nilpotent);
        assert_eq!(s.hypotheses.iter().filter(|h| !h.1).map(|h| h.0.as_str()).collect::<Vec<_>>(), ["characteristic not 3"]);
        let g = corollary_oddnil2(&corpus::grassmann_aug(3, FieldSpec::Rationals).unwrap(), Backend::Auto, DEFAULT_BUDGET);
        assert!(g.applicable && g.nilpotent && g.consistent());
        assert_eq!(g.r_nilpotent, Some(true));
        let m = corollary_oddnil2(&corpus::m11(FieldSpec::Rationals), Backend::Auto, DEFAULT_BUDGET);
        assert!(!m.applicable);
    }

    #[test]
    fn associative() {
        let u = corpus::upper_tri(3, &[0, 1, 0], FieldSpec::Rationals).unwrap();
        let r = corollary_associative_gradednil(&u, Backend::Auto, DEFAULT_BUDGET);
        assert!(r.applicable && r.nilpotent);
        let m = corollary_associative_gradednil(&corpus::m11(FieldSpec::prime(3).unwrap()), Backend::Auto, DEFAULT_BUDGET);
        assert!(!m.applicable);
        let z = corollary_associative_gradednil(&corpus::zero(1, 1, FieldSpec::Rationals), Backend::Auto, DEFAULT_BUDGET);
        assert!(z.applicable && z.nilpotent);
    }
}
