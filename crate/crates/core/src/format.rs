//! JSON formats: algebra definition files, subspace files, reports and
//! certificates.
//!
//! Every document is written with sorted keys and two-space indentation,
//! followed by a newline, so equal documents are equal byte for byte.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{
    AlgebraData, Element, GradedNilOutcome, GradedNilReport, HomogeneousElement, SeriesReport, SeriesVerdict,
    SubSuperspace, SuperAlgebra, TableEntry,
};
use crate::arith::{FieldSpec, Scalar};
use crate::engine::{
    ChainCertificate, ChainOutcome, ChainStep, FailureWitness, PipelineCertificate, PipelineOutcome, QIdealCheck,
    SearchHit, SearchReport, StepCase,
};
use crate::error::{Error, Result};
use crate::identities::{Defect, IdentityReport};
use crate::operators::{operator_matrix, EngelReport, Nilpotency, OpKind, OpMatrix};

pub const TOOL_NAME: &str = "superengel";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    field: FieldFile,
    dim: usize,
    parity: Vec<u8>,
    basis_names: Vec<String>,
    table: Vec<EntryFile>,
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn syntax_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

pub fn field_json(f: FieldSpec) -> Value {
    match f {
        FieldSpec::Rationals => json!({"kind": "Q"}),
        FieldSpec::PrimeField(p) => json!({"kind": "GF", "p": p}),
    }
}

pub fn algebra_json(a: &SuperAlgebra) -> Value {
    let mut table: Vec<&TableEntry> = a.table().iter().collect();
    table.sort_by_key(|e| (e.i, e.j, e.k));
    json!({
        "name": a.name(),
        "field": field_json(a.field()),
        "dim": a.dim(),
        "parity": a.parity(),
        "basis_names": a.basis_names(),
        "table": table.iter().map(|e| json!({"i": e.i, "j": e.j, "k": e.k, "c": e.c.to_string()})).collect::<Vec<_>>(),
    })
}

pub fn algebra_to_string(a: &SuperAlgebra) -> String {
    to_canonical_string(&algebra_json(a))
}

/// Reads and validates an algebra definition file.
pub fn parse_algebra(text: &str) -> Result<SuperAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(syntax_error)?;
    let field = match (file.field.kind.as_str(), file.field.p) {
        ("Q", None) => FieldSpec::Rationals,
        ("GF", Some(p)) => FieldSpec::prime(p).map_err(|e| Error::parse("field.p", e.to_string()))?,
        _ => return Err(Error::parse("field", "expected {\"kind\":\"Q\"} or {\"kind\":\"GF\",\"p\":<prime>}")),
    };
    if file.parity.len() != file.dim {
        return Err(Error::parse("parity", format!("{} entries for dimension {}", file.parity.len(), file.dim)));
    }
    if file.basis_names.len() != file.dim {
        return Err(Error::parse(
            "basis_names",
            format!("{} entries for dimension {}", file.basis_names.len(), file.dim),
        ));
    }
    let mut table = Vec::with_capacity(file.table.len());
    for (n, e) in file.table.iter().enumerate() {
        let c = field.parse_scalar(&e.c).map_err(|err| Error::parse(format!("table[{n}].c"), err.to_string()))?;
        table.push(TableEntry::new(e.i, e.j, e.k, c));
    }
    SuperAlgebra::new(AlgebraData { name: file.name, field, parity: file.parity, basis_names: file.basis_names, table })
}

/// Reads a subspace file: an array of coordinate vectors. The span is
/// echelonized and must be graded.
pub fn parse_subspace(a: &SuperAlgebra, text: &str) -> Result<SubSuperspace> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text).map_err(syntax_error)?;
    let mut vectors = Vec::with_capacity(rows.len());
    for (n, row) in rows.iter().enumerate() {
        if row.len() != a.dim() {
            return Err(Error::parse(format!("[{n}]"), format!("{} coordinates for dimension {}", row.len(), a.dim())));
        }
        let coords = row
            .iter()
            .enumerate()
            .map(|(m, s)| a.field().parse_scalar(s).map_err(|e| Error::parse(format!("[{n}][{m}]"), e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        vectors.push(a.element(coords)?);
    }
    SubSuperspace::from_vectors(a, &vectors)
}

pub fn subspace_file(s: &SubSuperspace) -> String {
    let (even, odd) = s.rows();
    let rows: Vec<Value> = even.iter().chain(&odd).map(|r| vector(r)).collect();
    to_canonical_string(&Value::Array(rows))
}

/// `sha256:<hex>` of the canonical algebra file.
pub fn digest(a: &SuperAlgebra) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(algebra_to_string(a).as_bytes())))
}

pub fn scalar(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn element(a: &SuperAlgebra, x: &Element) -> Value {
    json!({"coords": vector(x.coords()), "label": a.describe(x)})
}

pub fn homogeneous(a: &SuperAlgebra, x: &HomogeneousElement) -> Value {
    json!({"coords": vector(x.coords()), "label": a.describe(x.element()), "parity": x.parity().bit()})
}

pub fn subspace(s: &SubSuperspace) -> Value {
    let (even, odd) = s.rows();
    json!({
        "dim": s.dim(),
        "even": even.iter().map(|r| vector(r)).collect::<Vec<_>>(),
        "odd": odd.iter().map(|r| vector(r)).collect::<Vec<_>>(),
    })
}

/// Column-major entries.
pub fn matrix(m: &OpMatrix) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "column_major": vector(&m.column_major())})
}

pub fn nilpotency(n: &Nilpotency) -> Value {
    match n {
        Nilpotency::Nilpotent(k) => json!({"nilpotent": true, "index": k}),
        Nilpotency::Stabilizes { index, dim } => json!({"nilpotent": false, "stabilizes_at": index, "dim": dim}),
    }
}

pub fn identity_report(r: &IdentityReport) -> Value {
    let checks: Map<String, Value> = r.checks.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect();
    let witness = r.witness.as_ref().map(|w| {
        let defect = match &w.defect {
            Defect::Vector(v) => json!({"vector": vector(v)}),
            Defect::Polynomial { coordinate, value } => json!({"coordinate": coordinate, "polynomial": value}),
        };
        json!({
            "instance": w.instance,
            "labels": w.labels,
            "substitution": w.substitution.iter().map(|v| vector(v)).collect::<Vec<_>>(),
            "defect": defect,
        })
    });
    json!({"identity": r.identity, "verdict": r.verdict, "checks": checks, "witness": witness})
}

pub fn series(r: &SeriesReport) -> Value {
    let verdict = match &r.verdict {
        SeriesVerdict::ReachesZero(n) => json!({"reaches_zero": true, "index": n}),
        SeriesVerdict::Stabilizes { index, limit } => {
            json!({"reaches_zero": false, "stabilizes_at": index, "limit_dim": limit.dim()})
        }
    };
    json!({"dims": r.dims(), "verdict": verdict})
}

pub fn graded_nil(a: &SuperAlgebra, r: &GradedNilReport) -> Value {
    let outcome = match &r.outcome {
        GradedNilOutcome::GradedNil { max_index } => json!({"graded_nil": true, "max_index": max_index}),
        GradedNilOutcome::NotGradedNil { witness, right_power_index } => json!({
            "graded_nil": false,
            "witness": homogeneous(a, witness),
            "right_power_index": right_power_index,
        }),
        GradedNilOutcome::Inconclusive { parity } => json!({"graded_nil": null, "parity": parity.bit()}),
    };
    json!({"backend": r.backend.to_string(), "flags": r.flags, "outcome": outcome})
}

pub fn engel_report(a: &SuperAlgebra, r: &EngelReport) -> Value {
    let witness = r.witness.as_ref().map(|w| {
        let (p, rank) = r.stable_rank.expect("witnesses carry a stable rank");
        json!({
            "element": homogeneous(a, w),
            "stable_rank": {"power": p, "rank": rank},
            "matrix": matrix(&operator_matrix(a, OpKind::RightSigned, w.coords(), w.parity())),
        })
    });
    json!({
        "mode": format!("{:?}", r.mode),
        "backend": r.backend.to_string(),
        "verdict": r.verdict,
        "witness": witness,
    })
}

pub fn qideal(a: &SuperAlgebra, q: &QIdealCheck) -> Value {
    json!({
        "i": subspace(&q.i),
        "b": subspace(&q.b),
        "v": homogeneous(a, &q.v),
        "rv_matrix": matrix(&operator_matrix(a, OpKind::RightSigned, q.v.coords(), q.v.parity())),
        "rv_index": q.rv_index,
        "n": q.n,
        "istar_index": q.istar_index,
        "q_dim": q.q_dim,
        "power_dims": q.power_dims,
        "inclusion": q.inclusion,
        "bstar": nilpotency(&q.bstar),
        "word_budget_used": q.word_budget_used,
    })
}

fn step_case(c: StepCase) -> Value {
    match c {
        StepCase::EvenPower(k) => json!({"kind": "even-power", "k": k}),
        StepCase::OddDirect => json!({"kind": "odd-direct"}),
        StepCase::OddViaSquare(k) => json!({"kind": "odd-via-square", "k": k}),
    }
}

fn chain_step(a: &SuperAlgebra, s: &ChainStep) -> Value {
    json!({
        "b_before": subspace(&s.b_before),
        "normalizer": subspace(&s.normalizer),
        "chosen": homogeneous(a, &s.chosen_a),
        "case": step_case(s.case),
        "v": homogeneous(a, &s.v),
        "c": subspace(&s.c),
        "cstar_index": s.cstar_index,
        "qideal": qideal(a, &s.qideal),
    })
}

fn failure(a: &SuperAlgebra, f: &FailureWitness) -> Value {
    let rank_witness = |kind: &str, x: &HomogeneousElement, (p, r): (usize, usize)| {
        json!({
            "kind": kind,
            "element": homogeneous(a, x),
            "stable_rank": {"power": p, "rank": r},
            "matrix": matrix(&operator_matrix(a, OpKind::RightSigned, x.coords(), x.parity())),
        })
    };
    match f {
        FailureWitness::RvNotNilpotent { element, stable_rank } => rank_witness("rv-not-nilpotent", element, *stable_rank),
        FailureWitness::HypothesisFailed { witness, stable_rank } => rank_witness("hypothesis-failed", witness, *stable_rank),
        FailureWitness::NormalizerStuck { b } => json!({"kind": "normalizer-stuck", "b": subspace(b)}),
        FailureWitness::ConstructionFailed { element, reason } => {
            json!({"kind": "construction-failed", "element": homogeneous(a, element), "reason": reason})
        }
    }
}

pub fn chain(a: &SuperAlgebra, c: &ChainCertificate) -> Value {
    let outcome = match &c.outcome {
        ChainOutcome::Nilpotent { operator_index, algebra_index, power_series_index } => json!({
            "kind": "nilpotent",
            "operator_index": operator_index,
            "algebra_index": algebra_index,
            "power_series_index": power_series_index,
        }),
        ChainOutcome::Failed(f) => json!({"kind": "failed", "witness": failure(a, f)}),
    };
    json!({
        "alternative": c.alternative,
        "steps": c.steps.iter().map(|s| chain_step(a, s)).collect::<Vec<_>>(),
        "outcome": outcome,
    })
}

pub fn pipeline(a: &SuperAlgebra, p: &PipelineCertificate) -> Result<Value> {
    let stages = json!({
        "1_jordan": p.jordan,
        "2_engelian": p.engelian,
        "3_even_case": p.even_case,
        "3_phi_homomorphism": p.phi_homomorphism,
        "4_odd_case": p.odd_case,
        "5_rjprime_equals_rj": p.rjprime_equals_rj,
        "6_weakly_closed": p.weak_closure.as_ref().map(|w| w.verdict),
        "6_rj_index": p.rj_index,
        "7_chain_nilpotent": p.jprime_chain.as_ref().map(ChainCertificate::is_nilpotent),
        "8_j_index": p.j_index,
    });
    let basis = p.j.homogeneous_basis();
    let weak = p.weak_closure.as_ref().map(|w| {
        json!({
            "gamma": "(-1)^(|a||b|)",
            "verdict": w.verdict,
            "failing_pair": w.failing_pair.map(|(i, j)| vec![i, j]),
            "witnesses": w.witnesses.iter().map(|((i, j), coords)| json!({
                "pair": [i, j],
                "lands_on": format!(
                    "2({} ∘ {})",
                    a.describe(basis[*i].element()),
                    a.describe(basis[*j].element())
                ),
                "coordinates": vector(coords),
            })).collect::<Vec<_>>(),
        })
    });
    let chain_json = match (&p.jprime, &p.jprime_chain) {
        (Some(jp), Some(c)) => Some(chain(&a.restrict_to(jp, "J'")?, c)),
        _ => None,
    };
    let outcome = match &p.outcome {
        PipelineOutcome::Passed => json!({"kind": "passed"}),
        PipelineOutcome::Failed { stage, witness, reason } => json!({
            "kind": "failed",
            "stage": stage.number(),
            "stage_name": stage.name(),
            "witness": witness.as_ref().map(|w| element(a, w)),
            "reason": reason,
        }),
    };
    Ok(json!({
        "j": subspace(&p.j),
        "jprime": p.jprime.as_ref().map(subspace),
        "rj_dim": p.rj_dim,
        "stages": stages,
        "weak_closure": weak,
        "jprime_chain": chain_json,
        "outcome": outcome,
    }))
}

fn search_hit(h: &SearchHit) -> Value {
    json!({
        "coefficients": vector(&h.coefficients),
        "name": h.algebra.name(),
        "graded_nil": h.graded_nil,
        "r_nilpotent": h.r_nilpotent,
        "nilpotent": h.nilpotent,
    })
}

pub fn search(r: &SearchReport) -> Value {
    json!({
        "assignments": r.assignments.to_string(),
        "graded": r.graded,
        "alternative": r.alternative,
        "hits": r.hits.iter().map(search_hit).collect::<Vec<_>>(),
        "violations": r.violations.iter().map(search_hit).collect::<Vec<_>>(),
    })
}

/// Wraps a certificate body with the tool, the algebra digest and the
/// parameters needed to replay it.
pub fn certificate_document(kind: &str, a: &SuperAlgebra, parameters: Value, body: Value) -> Value {
    json!({
        "kind": kind,
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "algebra": {"name": a.name(), "digest": digest(a)},
        "parameters": parameters,
        "certificate": body,
    })
}

/// Path of the first place where two JSON values differ, in the form
/// `$.certificate.steps[2].cstar_index`.
pub fn first_difference(expected: &Value, found: &Value) -> Option<String> {
    fn walk(e: &Value, f: &Value, path: String) -> Option<String> {
        match (e, f) {
            (Value::Object(x), Value::Object(y)) => {
                let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
                keys.sort();
                keys.dedup();
                keys.into_iter().find_map(|k| match (x.get(k), y.get(k)) {
                    (Some(a), Some(b)) => walk(a, b, format!("{path}.{k}")),
                    _ => Some(format!("{path}.{k}")),
                })
            }
            (Value::Array(x), Value::Array(y)) => {
                let common = x.iter().zip(y).enumerate().find_map(|(n, (a, b))| walk(a, b, format!("{path}[{n}]")));
                common.or_else(|| (x.len() != y.len()).then(|| format!("{path}[{}]", x.len().min(y.len()))))
            }
            _ => (e != f).then_some(path),
        }
    }
    walk(expected, found, "$".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn algebra_round_trip() {
        for a in corpus::regression_algebras() {
            let text = algebra_to_string(&a);
            let b = parse_algebra(&text).unwrap();
            assert_eq!(algebra_to_string(&b), text);
        }
    }

    #[test]
    fn parse_errors() {
        let text = algebra_to_string(&corpus::shestakov_alt());
        let bad = text.replace("\"parity\": [\n    0,", "\"parity\": [");
        assert!(matches!(parse_algebra(&bad), Err(Error::Parse { .. })));
        let frac = text.replacen("\"c\": \"1\"", "\"c\": \"1/2\"", 1);
        assert!(matches!(parse_algebra(&frac), Err(Error::Parse { .. })));
        let extra = text.replacen("\"dim\"", "\"extra\": 1, \"dim\"", 1);
        assert!(matches!(parse_algebra(&extra), Err(Error::Parse { .. })));
        let graded = text.replacen("\"k\": 1", "\"k\": 0", 1);
        assert!(matches!(parse_algebra(&graded), Err(Error::GradingViolation { .. })));
    }

    #[test]
    fn subspaces() {
        let a = corpus::upper_tri(3, &[0, 1, 0], FieldSpec::Rationals).unwrap();
        let s = parse_subspace(&a, r#"[["1","0","1"]]"#).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(parse_subspace(&a, &subspace_file(&s)).unwrap(), s);
        assert!(matches!(parse_subspace(&a, r#"[["1","1","0"]]"#), Err(Error::NotGraded { index: 0 })));
        assert!(matches!(parse_subspace(&a, r#"[["1","1"]]"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn differences() {
        let x = json!({"a": [1, {"b": 2}], "c": 3});
        let y = json!({"a": [1, {"b": 5}], "c": 3});
        assert_eq!(first_difference(&x, &y).as_deref(), Some("$.a[1].b"));
        assert_eq!(first_difference(&x, &x), None);
        assert_eq!(first_difference(&json!([1]), &json!([1, 2])).as_deref(), Some("$[1]"));
    }
}
