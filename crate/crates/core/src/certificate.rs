//! Replayable certificate documents.
//!
//! A certificate records the algebra digest and every parameter needed to
//! recompute it. Verification recomputes the document and compares bytes.

use serde_json::{json, Value};

use crate::algebra::{Backend, HomogeneousElement, SubSuperspace, SuperAlgebra};
use crate::engine::{engel_chain_with, special_jordan_pipeline, verify_qideal};
use crate::error::{Error, Result};
use crate::format::{self, certificate_document, first_difference, to_canonical_string};

fn rows(s: &SubSuperspace) -> Value {
    let (even, odd) = s.rows();
    Value::Array(even.iter().chain(&odd).map(|r| format::vector(r)).collect())
}

fn engine_parameters(backend: Backend, budget: u128) -> Value {
    json!({"backend": backend.to_string(), "budget": budget.to_string()})
}

pub fn chain_certificate(a: &SuperAlgebra, backend: Backend, budget: u128) -> (bool, Value) {
    let c = engel_chain_with(a, backend, budget);
    let doc = certificate_document("chain", a, engine_parameters(backend, budget), format::chain(a, &c));
    (c.is_nilpotent(), doc)
}

pub fn pipeline_certificate(a: &SuperAlgebra, j: &SubSuperspace, backend: Backend, budget: u128) -> Result<(bool, Value)> {
    let p = special_jordan_pipeline(a, j, backend, budget)?;
    let mut params = engine_parameters(backend, budget);
    params["j"] = rows(j);
    Ok((p.passed(), certificate_document("pipeline", a, params, format::pipeline(a, &p)?)))
}

/// The certificate holds when the inclusion and the nilpotency of `B*`
/// both verify.
pub fn qideal_certificate(a: &SuperAlgebra, i: &SubSuperspace, v: &HomogeneousElement) -> Result<(bool, Value)> {
    let q = verify_qideal(a, i, v)?;
    let params = json!({"i": rows(i), "v": format::vector(v.coords())});
    let holds = q.inclusion && q.bstar.is_nilpotent();
    Ok((holds, certificate_document("qideal", a, params, format::qideal(a, &q))))
}

fn param<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get("parameters").and_then(|p| p.get(key)).ok_or_else(|| Error::parse(format!("parameters.{key}"), "missing"))
}

fn param_str<'a>(doc: &'a Value, key: &str) -> Result<&'a str> {
    param(doc, key)?.as_str().ok_or_else(|| Error::parse(format!("parameters.{key}"), "expected a string"))
}

fn subspace_param(a: &SuperAlgebra, doc: &Value, key: &str) -> Result<SubSuperspace> {
    format::parse_subspace(a, &param(doc, key)?.to_string())
}

/// Recomputes a certificate document from its kind and parameters.
pub fn replay(a: &SuperAlgebra, doc: &Value) -> Result<Value> {
    let kind = doc.get("kind").and_then(Value::as_str).ok_or_else(|| Error::parse("kind", "missing"))?;
    let engine = || -> Result<(Backend, u128)> {
        let backend = param_str(doc, "backend")?.parse()?;
        let budget = param_str(doc, "budget")?
            .parse()
            .map_err(|_| Error::parse("parameters.budget", "expected an integer"))?;
        Ok((backend, budget))
    };
    match kind {
        "chain" => {
            let (backend, budget) = engine()?;
            Ok(chain_certificate(a, backend, budget).1)
        }
        "pipeline" => {
            let (backend, budget) = engine()?;
            let j = subspace_param(a, doc, "j")?;
            Ok(pipeline_certificate(a, &j, backend, budget)?.1)
        }
        "qideal" => {
            let i = subspace_param(a, doc, "i")?;
            let coords: Vec<String> = serde_json::from_value(param(doc, "v")?.clone())
                .map_err(|e| Error::parse("parameters.v", e.to_string()))?;
            let coords = coords.iter().map(|c| a.field().parse_scalar(c)).collect::<Result<Vec<_>>>()?;
            let v = HomogeneousElement::new(a, a.element(coords)?)?;
            Ok(qideal_certificate(a, &i, &v)?.1)
        }
        other => Err(Error::parse("kind", format!("unknown certificate kind {other:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Identical,
    /// The first JSON path where the replay differs from the file.
    Mismatch { path: String },
}

/// Replays a certificate file against the algebra and compares it byte
/// for byte.
pub fn verify_certificate(a: &SuperAlgebra, text: &str) -> Result<Verification> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}", e.line()), e.to_string()))?;
    let expected = replay(a, &doc)?;
    if to_canonical_string(&expected) == text {
        return Ok(Verification::Identical);
    }
    let path = first_difference(&expected, &doc).unwrap_or_else(|| "$ (formatting)".into());
    Ok(Verification::Mismatch { path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_BUDGET;
    use crate::corpus;

    #[test]
    fn chain_replays() {
        let a = corpus::shestakov_alt();
        let (ok, doc) = chain_certificate(&a, Backend::Auto, DEFAULT_BUDGET);
        assert!(!ok);
        let text = to_canonical_string(&doc);
        assert_eq!(verify_certificate(&a, &text).unwrap(), Verification::Identical);
        let tampered = text.replacen("\"cstar_index\": 2", "\"cstar_index\": 3", 1);
        assert_ne!(tampered, text);
        match verify_certificate(&a, &tampered).unwrap() {
            Verification::Mismatch { path } => assert!(path.ends_with("cstar_index"), "{path}"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn qideal_replays() {
        let a = corpus::shestakov_alt();
        let i = SubSuperspace::basis_span(&a, &[0]);
        let (ok, doc) = qideal_certificate(&a, &i, &a.homogeneous_basis_element(1)).unwrap();
        assert!(ok);
        assert_eq!(verify_certificate(&a, &to_canonical_string(&doc)).unwrap(), Verification::Identical);
    }
}
