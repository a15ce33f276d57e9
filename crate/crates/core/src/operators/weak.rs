use super::{matrix_nil_index, Nilpotency, OpMatrix, OperatorAlgebra, OperatorSpace};
use crate::algebra::Parity;
use crate::arith::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// The scalar `γ(a, b)` in `ab + γ(a, b) ba`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gamma {
    /// `γ(a, b) = (-1)^{|a||b|}`
    SuperSign,
    Constant(Scalar),
}

impl Gamma {
    pub fn value(&self, field: FieldSpec, a: Parity, b: Parity) -> Scalar {
        match self {
            Gamma::SuperSign if a.sign_flips(b) => -field.one(),
            Gamma::SuperSign => field.one(),
            Gamma::Constant(c) => c.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeaklyClosedSet {
    pub field: FieldSpec,
    pub dim: usize,
    pub elements: Vec<(String, OpMatrix, Parity)>,
    pub gamma: Gamma,
}

impl WeaklyClosedSet {
    pub fn new(field: FieldSpec, dim: usize, elements: Vec<(String, OpMatrix, Parity)>, gamma: Gamma) -> Self {
        WeaklyClosedSet { field, dim, elements, gamma }
    }

    pub fn span(&self) -> OperatorSpace {
        OperatorSpace::from_matrices(self.field, self.dim, self.elements.iter().map(|e| &e.1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakClosureReport {
    pub verdict: bool,
    pub failing_pair: Option<(usize, usize)>,
    /// For each checked pair `(i, j)` with `i <= j`, the coordinates of
    /// `w_i w_j + γ w_j w_i` in the echelon basis of `span(W)`.
    pub witnesses: Vec<((usize, usize), Vec<Scalar>)>,
}

pub fn weakly_closed_verify(w: &WeaklyClosedSet) -> WeakClosureReport {
    let span = w.span();
    let mut witnesses = Vec::new();
    for i in 0..w.elements.len() {
        for j in i..w.elements.len() {
            let (_, a, pa) = &w.elements[i];
            let (_, b, pb) = &w.elements[j];
            let g = w.gamma.value(w.field, *pa, *pb);
            let m = a.mul(b).expect("square").add(&b.mul(a).expect("square").scale(&g)).expect("square");
            match span.coordinates(&m) {
                Some(c) => witnesses.push(((i, j), c)),
                None => return WeakClosureReport { verdict: false, failing_pair: Some((i, j)), witnesses },
            }
        }
    }
    WeakClosureReport { verdict: true, failing_pair: None, witnesses }
}

/// Nilpotency of `alg<W>` for a weakly closed set of nilpotent operators.
pub fn jacobson_nilpotency(w: &WeaklyClosedSet) -> Result<(OperatorAlgebra, usize)> {
    for (label, m, _) in &w.elements {
        if matrix_nil_index(m).is_none() {
            return Err(Error::HypothesisViolated(format!("{label} is not nilpotent")));
        }
    }
    let report = weakly_closed_verify(w);
    if let Some((i, j)) = report.failing_pair {
        return Err(Error::HypothesisViolated(format!(
            "not weakly closed at ({}, {})",
            w.elements[i].0, w.elements[j].0
        )));
    }
    let (labels, gens): (Vec<String>, Vec<OpMatrix>) =
        w.elements.iter().map(|(l, m, _)| (l.clone(), m.clone())).unzip();
    let alg = OperatorAlgebra::generate(w.field, w.dim, gens, labels);
    match alg.nilpotency().verdict {
        Nilpotency::Nilpotent(n) => Ok((alg, n)),
        Nilpotency::Stabilizes { index, dim } => Err(Error::Inconsistency(format!(
            "weakly closed nilpotent set generates a non-nilpotent algebra (power {index} has dimension {dim})"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Matrix;

    fn unit(f: FieldSpec, n: usize, i: usize, j: usize) -> OpMatrix {
        let mut m = Matrix::zeros(f, n, n);
        m.set(i, j, f.one());
        m
    }

    #[test]
    fn matrix_units() {
        let f = FieldSpec::Rationals;
        let w = WeaklyClosedSet::new(
            f,
            2,
            vec![("E12".into(), unit(f, 2, 0, 1), Parity::Even), ("E21".into(), unit(f, 2, 1, 0), Parity::Even)],
            Gamma::Constant(f.one()),
        );
        let r = weakly_closed_verify(&w);
        assert_eq!((r.verdict, r.failing_pair), (false, Some((0, 1))));
        assert!(matches!(jacobson_nilpotency(&w), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn single_nilpotent() {
        let f = FieldSpec::Rationals;
        let w = WeaklyClosedSet::new(f, 3, vec![("N".into(), unit(f, 3, 0, 1), Parity::Even)], Gamma::Constant(-f.one()));
        assert!(weakly_closed_verify(&w).verdict);
        assert_eq!(jacobson_nilpotency(&w).unwrap().1, 2);
        let zero = WeaklyClosedSet::new(f, 3, vec![("0".into(), Matrix::zeros(f, 3, 3), Parity::Even)], Gamma::SuperSign);
        assert_eq!(jacobson_nilpotency(&zero).unwrap().1, 1);
        let id = WeaklyClosedSet::new(f, 2, vec![("I".into(), Matrix::identity(f, 2), Parity::Even)], Gamma::SuperSign);
        assert!(matches!(jacobson_nilpotency(&id), Err(Error::HypothesisViolated(_))));
    }
}
