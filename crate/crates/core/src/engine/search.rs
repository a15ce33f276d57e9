use rayon::prelude::*;

use crate::algebra::{graded_nil_check, power_series, AlgebraData, Backend, SuperAlgebra, TableEntry};
use crate::arith::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::identities::check_alternative_super;
use crate::operators::{engel_check, EngelMode};

/// Structure constants with one free coefficient per support position
/// `(i, j, k)`, meaning `x_i x_j` has coefficient `c` on `x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTemplate {
    pub field: FieldSpec,
    pub parity: Vec<u8>,
    pub basis_names: Vec<String>,
    pub support: Vec<(usize, usize, usize)>,
}

impl SearchTemplate {
    /// Support of the 3-dimensional alternative table together with the
    /// position `e1 e1 -> e1`.
    pub fn shestakov(field: FieldSpec) -> Self {
        SearchTemplate {
            field,
            parity: vec![0, 1, 1],
            basis_names: vec!["e1".into(), "f1".into(), "f2".into()],
            support: vec![(0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0), (0, 0, 0)],
        }
    }

    pub fn assignments(&self) -> Option<u128> {
        let q = self.field.order()? as u128;
        q.checked_pow(self.support.len() as u32)
    }

    fn instantiate(&self, coefficients: &[Scalar]) -> Result<SuperAlgebra> {
        let table = self
            .support
            .iter()
            .zip(coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(i, j, k), c)| TableEntry::new(i, j, k, c.clone()))
            .collect();
        let names: Vec<String> = coefficients.iter().map(ToString::to_string).collect();
        SuperAlgebra::new(AlgebraData {
            name: format!("search[{}]", names.join(",")),
            field: self.field,
            parity: self.parity.clone(),
            basis_names: self.basis_names.clone(),
            table,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchHit {
    pub coefficients: Vec<Scalar>,
    pub algebra: SuperAlgebra,
    pub graded_nil: bool,
    pub r_nilpotent: bool,
    pub nilpotent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub assignments: u128,
    /// Assignments whose table respects the grading.
    pub graded: usize,
    pub alternative: usize,
    /// Alternative, graded-nil and not nilpotent.
    pub hits: Vec<SearchHit>,
    /// Alternative, every `R_x` nilpotent and not nilpotent.
    pub violations: Vec<SearchHit>,
}

/// Enumerates every coefficient assignment (first position varying
/// fastest) and classifies the alternative ones.
pub fn counterexample_search(template: &SearchTemplate, budget: u128) -> Result<SearchReport> {
    let q = template
        .field
        .order()
        .ok_or_else(|| Error::UnsupportedMode("the search needs a finite field".into()))?;
    let total = template.assignments().unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let f = template.field;
    let n = template.support.len();
    let results: Vec<Option<(bool, Option<SearchHit>)>> = (0..total as u64)
        .into_par_iter()
        .map(|mut idx| {
            let coefficients: Vec<Scalar> = (0..n)
                .map(|_| {
                    let c = f.from_u64(idx % q);
                    idx /= q;
                    c
                })
                .collect();
            let algebra = template.instantiate(&coefficients).ok()?;
            if !check_alternative_super(&algebra).verdict {
                return Some((false, None));
            }
            let graded_nil =
                graded_nil_check(&algebra, Backend::Enumerate, budget).ok().and_then(|r| r.is_graded_nil()) == Some(true);
            let r_nilpotent = engel_check(&algebra, EngelMode::RNilpotencyOnly, Backend::Enumerate, budget)
                .ok()
                .and_then(|r| r.verdict)
                == Some(true);
            let nilpotent = power_series(&algebra).reaches_zero();
            Some((true, Some(SearchHit { coefficients, algebra, graded_nil, r_nilpotent, nilpotent })))
        })
        .collect();
    let mut report =
        SearchReport { assignments: total, graded: 0, alternative: 0, hits: vec![], violations: vec![] };
    for r in results.into_iter().flatten() {
        report.graded += 1;
        let Some(hit) = r.1 else { continue };
        report.alternative += 1;
        if hit.nilpotent {
            continue;
        }
        if hit.r_nilpotent {
            report.violations.push(hit.clone());
        }
        if hit.graded_nil {
            report.hits.push(hit);
        }
    }
    Ok(report)
}
