//! JSON formats for simplices and body descriptors, in both scalar modes.
//!
//! Simplex: `{"dim": n, "vertices": [[..n numbers..], .. n+1 rows ..]}`.
//! Body: `{"kind": "ball"|"unit_cube"|"sym_cube", "center": [..], "radius": r}`
//! (center/radius for balls only).

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::bodies::ConvexBody;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplexJson {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BodyJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::PreconditionFailed(msg.into())
}

/// Parses a simplex from JSON text (float mode).
pub fn parse_simplex(text: &str) -> Result<Simplex<f64>> {
    let raw: SimplexJson =
        serde_json::from_str(text).map_err(|e| parse_error(format!("bad simplex JSON: {e}")))?;
    if raw.vertices.len() != raw.dim + 1 {
        return Err(parse_error(format!(
            "expected {} vertices for dim {}, got {}",
            raw.dim + 1,
            raw.dim,
            raw.vertices.len()
        )));
    }
    Simplex::new(raw.vertices)
}

/// Serializes a simplex to the JSON format.
pub fn simplex_to_json(s: &Simplex<f64>) -> String {
    let raw = SimplexJson {
        dim: s.dim(),
        vertices: s.vertices().to_vec(),
    };
    serde_json::to_string_pretty(&raw).expect("simplex serialization cannot fail")
}

/// Parses a simplex from JSON text in exact rational mode. Numbers may be
/// integers, decimals, or strings of the form "p/q".
pub fn parse_simplex_rational(text: &str) -> Result<Simplex<BigRational>> {
    let raw: serde_json::Value =
        serde_json::from_str(text).map_err(|e| parse_error(format!("bad simplex JSON: {e}")))?;
    let dim = raw
        .get("dim")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| parse_error("missing dim"))? as usize;
    let rows = raw
        .get("vertices")
        .and_then(|v| v.as_array())
        .ok_or_else(|| parse_error("missing vertices"))?;
    if rows.len() != dim + 1 {
        return Err(parse_error("vertex count does not match dim"));
    }
    let vertices = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_error("vertex is not an array"))?
                .iter()
                .map(rational_from_value)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Simplex::new(vertices)
}

/// Exact rational from a JSON value: a number literal (kept verbatim by
/// serde_json's arbitrary-precision mode) or a "p/q" string.
fn rational_from_value(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(parse_error(format!("expected a number, got {other}"))),
    }
}

/// Parses "123", "-4.75", "1e3", "2.5e-2" or "p/q" into an exact rational.
pub fn parse_rational(token: &str) -> Result<BigRational> {
    use num::bigint::BigInt;
    use std::str::FromStr;

    let token = token.trim();
    if let Some((num_part, den_part)) = token.split_once('/') {
        let numer = BigInt::from_str(num_part.trim())
            .map_err(|_| parse_error(format!("bad numerator in {token}")))?;
        let denom = BigInt::from_str(den_part.trim())
            .map_err(|_| parse_error(format!("bad denominator in {token}")))?;
        if denom == BigInt::from(0) {
            return Err(parse_error("zero denominator"));
        }
        return Ok(BigRational::new(numer, denom));
    }

    let (mantissa, exponent) = match token.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| parse_error(format!("bad exponent in {token}")))?;
            (m, exp)
        }
        None => (token, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    let numer =
        BigInt::from_str(&digits).map_err(|_| parse_error(format!("bad number {token}")))?;
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(num::pow::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num::pow::pow(ten, (-scale) as usize));
    }
    Ok(value)
}

/// Parses a body descriptor; cubes take their dimension from `dim_hint`.
pub fn parse_body(text: &str, dim_hint: usize) -> Result<ConvexBody> {
    let raw: BodyJson =
        serde_json::from_str(text).map_err(|e| parse_error(format!("bad body JSON: {e}")))?;
    match raw.kind.as_str() {
        "ball" => {
            let center = raw.center.unwrap_or_else(|| vec![0.0; dim_hint]);
            let radius = raw.radius.unwrap_or(1.0);
            if radius <= 0.0 {
                return Err(parse_error("ball radius must be positive"));
            }
            Ok(ConvexBody::Ball { center, radius })
        }
        "unit_cube" => Ok(ConvexBody::UnitCube { dim: dim_hint }),
        "sym_cube" => Ok(ConvexBody::SymCube { dim: dim_hint }),
        other => Err(parse_error(format!("unknown body kind {other:?}"))),
    }
}
