use serde::{Deserialize, Serialize};
use serde_json::json;

use super::eval::Value;
use super::{Field, SessionConfig};
use crate::multiindex::{bits_to_indices, lex_cmp, MultiIndex};
use crate::multivector::{format_scalar, re, Multivector, Scalar};
use crate::spaces::SubspaceBasis;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub indices: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonMultivector {
    pub dimension: usize,
    pub field: Field,
    pub terms: Vec<JsonTerm>,
}

/// Indices ascending, terms in lexicographic order of their index lists.
pub fn mv_to_json(m: &Multivector, field: Field) -> JsonMultivector {
    let mut terms: Vec<(u32, Scalar)> = m.terms().collect();
    terms.sort_by(|a, b| lex_cmp(a.0, b.0));
    JsonMultivector {
        dimension: m.dim(),
        field,
        terms: terms
            .into_iter()
            .map(|(b, c)| JsonTerm { indices: bits_to_indices(b).collect(), re: c.re, im: c.im })
            .collect(),
    }
}

/// Rebuilds a multivector from [`mv_to_json`] output, pruning at `tol`.
pub fn mv_from_json(j: &JsonMultivector, tol: f64) -> Result<Multivector, String> {
    let n = j.dimension;
    if n == 0 || n > crate::multiindex::MAX_DIM {
        return Err(format!("bad dimension {n}"));
    }
    let mut terms = Vec::with_capacity(j.terms.len());
    for t in &j.terms {
        if !t.indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(format!("indices {:?} are not strictly ascending", t.indices));
        }
        let idx = MultiIndex::from_indices(&t.indices, n).map_err(|e| e.to_string())?;
        if j.field == Field::Real && t.im != 0.0 {
            return Err("imaginary part in a real multivector".into());
        }
        terms.push((idx.bits(), Scalar::new(t.re, t.im)));
    }
    Ok(Multivector::from_terms_tol(n, tol, terms))
}

pub fn parse_json_mv(text: &str, tol: f64) -> Result<Multivector, String> {
    let j: JsonMultivector = serde_json::from_str(text).map_err(|e| e.to_string())?;
    mv_from_json(&j, tol)
}

pub fn format_real(x: f64) -> String {
    format_scalar(re(x))
}

pub fn vector_text(v: &[Scalar], tol: f64) -> String {
    let n = v.len();
    Multivector::from_terms_tol(n, tol, v.iter().enumerate().map(|(k, c)| (1u32 << k, *c))).to_string()
}

/// `span{v₁, …}` over the reduced echelon basis, or `{0}`.
pub fn space_text(s: &SubspaceBasis, tol: f64) -> String {
    if s.dim() == 0 {
        return "{0}".into();
    }
    let vs: Vec<String> = s.echelon().iter().map(|v| vector_text(v, tol)).collect();
    format!("span{{{}}}", vs.join(", "))
}

fn vector_json(v: &[Scalar]) -> serde_json::Value {
    json!(v.iter().map(|c| json!({"re": c.re, "im": c.im})).collect::<Vec<_>>())
}

pub fn space_json(s: &SubspaceBasis) -> serde_json::Value {
    json!({
        "dim": s.dim(),
        "basis": s.echelon().iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
    })
}

pub fn value_text(v: &Value, cfg: &SessionConfig) -> String {
    match v {
        Value::Mv(m) => m.to_string(),
        Value::Space(s) => space_text(s, cfg.tol),
        Value::Bool(b) => b.to_string(),
    }
}

pub fn value_json(v: &Value, cfg: &SessionConfig) -> serde_json::Value {
    match v {
        Value::Mv(m) => serde_json::to_value(mv_to_json(m, cfg.field)).expect("plain data"),
        Value::Space(s) => json!({"dimension": cfg.n, "field": cfg.field, "subspace": space_json(s)}),
        Value::Bool(b) => json!({"dimension": cfg.n, "field": cfg.field, "bool": b}),
    }
}
