//! The aggregate classification of a superalgebra.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{
    derived_series, graded_nil_check, power_series, Backend, GradedNilOutcome, GradedNilReport, SeriesReport,
    SuperAlgebra, ValidationReport, DEFAULT_BUDGET,
};
use crate::corpus::Expected;
use crate::error::Result;
use crate::format;
use crate::identities::{
    check_alternative_super, check_jordan_super, check_superassociative, check_supercommutative, IdentityReport,
    DEFAULT_ENVELOPE_BUDGET,
};
use crate::operators::{engel_check, EngelMode, EngelReport};

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub backend: Backend,
    pub budget: u128,
    /// Grassmann generators for the Jordan check; default `2 dim A_1 + 2`.
    pub envelope_gens: Option<usize>,
    pub envelope_budget: u128,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            backend: Backend::Auto,
            budget: DEFAULT_BUDGET,
            envelope_gens: None,
            envelope_budget: DEFAULT_ENVELOPE_BUDGET,
        }
    }
}

#[derive(Debug)]
pub struct Classification {
    pub validation: ValidationReport,
    pub associative: IdentityReport,
    pub supercommutative: IdentityReport,
    pub alternative: IdentityReport,
    /// `None` in characteristic 2.
    pub jordan: Option<Result<IdentityReport>>,
    pub graded_nil: Result<GradedNilReport>,
    pub power_series: SeriesReport,
    pub derived_series: SeriesReport,
    pub engel: Result<EngelReport>,
}

pub fn classify(a: &SuperAlgebra, opts: &ClassifyOptions) -> Classification {
    let jordan = (a.field().characteristic() != 2).then(|| check_jordan_super(a, opts.envelope_gens, opts.envelope_budget));
    Classification {
        validation: a.validate(),
        associative: check_superassociative(a),
        supercommutative: check_supercommutative(a),
        alternative: check_alternative_super(a),
        jordan,
        graded_nil: graded_nil_check(a, opts.backend, opts.budget),
        power_series: power_series(a),
        derived_series: derived_series(a),
        engel: engel_check(a, EngelMode::RNilpotencyOnly, opts.backend, opts.budget),
    }
}

impl Classification {
    /// Verdict per property; `None` when undecided or not applicable.
    pub fn summary(&self) -> BTreeMap<&'static str, Option<bool>> {
        BTreeMap::from([
            ("associative", Some(self.associative.verdict)),
            ("supercommutative", Some(self.supercommutative.verdict)),
            ("alternative", Some(self.alternative.verdict)),
            ("jordan", self.jordan.as_ref().and_then(|r| r.as_ref().ok()).map(|r| r.verdict)),
            ("graded_nil", self.graded_nil.as_ref().ok().and_then(GradedNilReport::is_graded_nil)),
            ("nilpotent", Some(self.power_series.reaches_zero())),
            ("solvable", Some(self.derived_series.reaches_zero())),
            ("r_nilpotent", self.engel.as_ref().ok().and_then(|r| r.verdict)),
        ])
    }

    /// Properties whose verdict differs from the expectation.
    pub fn mismatches(&self, e: &Expected) -> Vec<&'static str> {
        let want = BTreeMap::from([
            ("associative", Some(e.associative)),
            ("supercommutative", Some(e.supercommutative)),
            ("alternative", Some(e.alternative)),
            ("jordan", e.jordan),
            ("graded_nil", Some(e.graded_nil)),
            ("nilpotent", Some(e.nilpotent)),
            ("solvable", Some(e.solvable)),
            ("r_nilpotent", Some(e.r_nilpotent)),
        ]);
        let got = self.summary();
        want.into_iter().filter(|(k, v)| got[k] != *v).map(|(k, _)| k).collect()
    }

    pub fn graded_nil_index(&self) -> Option<usize> {
        match self.graded_nil.as_ref().ok()?.outcome {
            GradedNilOutcome::GradedNil { max_index } => max_index,
            _ => None,
        }
    }

    /// The report body, without timing.
    pub fn to_json(&self, a: &SuperAlgebra) -> Value {
        let err = |e: &crate::Error| json!({"error": e.to_string()});
        let summary: serde_json::Map<String, Value> =
            self.summary().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        json!({
            "summary": summary,
            "valid": self.validation.is_valid(),
            "associative": format::identity_report(&self.associative),
            "supercommutative": format::identity_report(&self.supercommutative),
            "alternative": format::identity_report(&self.alternative),
            "jordan": self.jordan.as_ref().map(|r| r.as_ref().map_or_else(err, format::identity_report)),
            "graded_nil": self.graded_nil.as_ref().map_or_else(err, |r| format::graded_nil(a, r)),
            "power_series": format::series(&self.power_series),
            "derived_series": format::series(&self.derived_series),
            "engel": self.engel.as_ref().map_or_else(err, |r| format::engel_report(a, r)),
        })
    }
}

/// A report document: tool, input digest, body and timing.
pub fn report_document(kind: &str, a: &SuperAlgebra, body: Value, millis: u128) -> Value {
    json!({
        "kind": kind,
        "tool": {"name": format::TOOL_NAME, "version": format::TOOL_VERSION},
        "input": {"name": a.name(), "digest": format::digest(a)},
        "report": body,
        "timing_ms": millis.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Parity;
    use crate::corpus;

    #[test]
    fn shestakov_classification() {
        let a = corpus::shestakov_alt();
        let c = classify(&a, &ClassifyOptions::default());
        assert!(c.mismatches(&corpus::entries()[0].expected).is_empty());
        assert_eq!(c.graded_nil_index(), Some(2));
        let w = c.engel.as_ref().unwrap().witness.clone().unwrap();
        assert_eq!(w.parity(), Parity::Odd);
        assert!(!w.coords()[2].is_zero());
    }
}
