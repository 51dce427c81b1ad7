//! JSON interchange: the lattice file format and report serialization.
//!
//! A lattice file is `{"name": <optional string>, "gram": [[int,...],...]}`
//! with arbitrary-precision integer entries; squareness and symmetry
//! violations are load-time errors carrying row/column indices. Unknown
//! keys are ignored, so metadata-rich exports re-import cleanly. Output
//! uses arbitrary-precision JSON numbers and sorted object keys, so
//! identical inputs produce byte-identical documents.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use sha2::{Digest, Sha256};

use crate::chambers::ChamberDecomposition;
use crate::embedding::UnWitness;
use crate::error::{Error, Result};
use crate::lattice::{GramLattice, IntVector};
use crate::surd::SurdRay;

/// Renders a BigInt as an arbitrary-precision JSON number.
pub fn bigint_to_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integers are JSON numbers"))
}

fn is_integer_token(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
}

/// Reads an exact integer from a JSON value; floats and exponent forms
/// are rejected.
pub fn value_to_bigint(v: &Value, context: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            let token = n.to_string();
            if !is_integer_token(&token) {
                return Err(Error::Parse(format!(
                    "{context} must be an integer, got {token}"
                )));
            }
            BigInt::from_str(&token)
                .map_err(|e| Error::Parse(format!("{context}: unreadable integer ({e})")))
        }
        other => Err(Error::Parse(format!(
            "{context} must be an integer, got {other}"
        ))),
    }
}

pub fn vector_to_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_to_value).collect())
}

pub fn matrix_to_value(m: &[Vec<BigInt>]) -> Value {
    Value::Array(m.iter().map(|row| vector_to_value(row)).collect())
}

pub fn vector_from_value(v: &Value, context: &str) -> Result<IntVector> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{context} must be an array of integers")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| value_to_bigint(x, &format!("{context}[{i}]")))
        .collect()
}

pub fn vector_from_str(s: &str, context: &str) -> Result<IntVector> {
    let v: Value = serde_json::from_str(s)
        .map_err(|e| Error::Parse(format!("{context}: invalid JSON ({e})")))?;
    vector_from_value(&v, context)
}

pub fn matrix_from_value(v: &Value, context: &str) -> Result<Vec<IntVector>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{context} must be an array of arrays")))?;
    arr.iter()
        .enumerate()
        .map(|(i, row)| vector_from_value(row, &format!("{context}[{i}]")))
        .collect()
}

/// Serializes a lattice to the file format.
pub fn lattice_to_value(l: &GramLattice) -> Value {
    let mut obj = Map::new();
    if let Some(name) = l.name() {
        obj.insert("name".into(), Value::String(name.into()));
    }
    obj.insert("gram".into(), matrix_to_value(l.gram()));
    Value::Object(obj)
}

/// Parses the lattice file format from a JSON value, reporting offending
/// row/column indices for malformed Gram matrices.
pub fn lattice_from_value(v: &Value) -> Result<GramLattice> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("lattice input must be a JSON object".into()))?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(other) => {
            return Err(Error::Parse(format!(
                "\"name\" must be a string, got {other}"
            )))
        }
    };
    let gram_value = obj
        .get("gram")
        .ok_or_else(|| Error::Parse("missing \"gram\" field".into()))?;
    let rows = gram_value
        .as_array()
        .ok_or_else(|| Error::Parse("\"gram\" must be an array of rows".into()))?;
    let mut gram: Vec<IntVector> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("gram row {i} is not an array")))?;
        let mut out = Vec::with_capacity(entries.len());
        for (j, entry) in entries.iter().enumerate() {
            out.push(value_to_bigint(entry, &format!("gram[{i}][{j}]"))?);
        }
        gram.push(out);
    }
    GramLattice::new(name, gram)
}

/// Parses either a full lattice file or a bare Gram matrix array.
pub fn lattice_from_str(s: &str) -> Result<GramLattice> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    if v.is_array() {
        let gram = matrix_from_value(&v, "gram")?;
        return GramLattice::new(None, gram);
    }
    lattice_from_value(&v)
}

/// Hex SHA-256 of the Gram matrix in canonical decimal row form.
pub fn gram_sha256(l: &GramLattice) -> String {
    let mut hasher = Sha256::new();
    for row in l.gram() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        hasher.update(line.join(","));
        hasher.update(";");
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Witness report: ambient identification, basis rows, N, the
/// primitivity index, and the divisor certificate.
pub fn witness_to_value(ambient: &GramLattice, w: &UnWitness, bound: u64) -> Value {
    json!({
        "ambient": {
            "name": ambient.name(),
            "sha256": gram_sha256(ambient),
            "rank": ambient.rank(),
        },
        "basis": matrix_to_value(&w.embedding.basis),
        "induced_gram": matrix_to_value(&w.embedding.induced_gram),
        "n": bigint_to_value(&w.n_value),
        "min_n_exclusive": bound,
        "saturation_index": bigint_to_value(&w.saturation_index),
        "basis_change": matrix_to_value(w.basis_change.as_ref()),
        "generators": matrix_to_value(w.generators.as_ref()),
        "value_divisor": bigint_to_value(&w.embedding.induced_lattice().value_divisor()),
    })
}

/// Ray report: (p, q, d) of the slope p + q·√d plus the at-infinity flag;
/// p and q are exact rationals rendered as strings.
pub fn ray_to_value(r: &SurdRay) -> Value {
    match r {
        SurdRay::Infinite => json!({ "at_infinity": true }),
        SurdRay::Slope(q) => json!({
            "at_infinity": false,
            "p": q.rational_part().to_string(),
            "q": q.surd_coefficient().to_string(),
            "d": bigint_to_value(q.radicand()),
        }),
    }
}

pub fn decomposition_to_value(d: &ChamberDecomposition) -> Value {
    json!({
        "boundary": [ray_to_value(&d.boundary.0), ray_to_value(&d.boundary.1)],
        "walls": d.walls.iter().map(|w| json!({
            "class": vector_to_value(&w.class),
            "ray": ray_to_value(&w.ray),
        })).collect::<Vec<_>>(),
        "chambers": d.chambers.iter().map(|(a, b)| {
            json!([ray_to_value(a), ray_to_value(b)])
        }).collect::<Vec<_>>(),
        "truncated": d.truncated,
    })
}
