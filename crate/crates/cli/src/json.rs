//! JSON encoding of tower elements, towers and polynomials.
//!
//! Rationals are written as strings `"n"` or `"n/d"`; a tower element is a
//! nested list of coefficients of increasing powers of the top generator.

use std::sync::Arc;

use osculant::algebra::rational::{format_rational, parse_rational};
use osculant::algebra::{FieldElement, MPoly, Nested, Tower};
use serde_json::{json, Value};
use thiserror::Error;

/// Why a JSON document could not be decoded.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("expected {0}")]
    Shape(&'static str),
    #[error("invalid rational '{0}'")]
    Rational(String),
    #[error("invalid tower: {0}")]
    Tower(String),
    #[error("coefficient does not fit the tower")]
    Coefficient,
}

fn nested_json(n: &Nested) -> Value {
    match n {
        Nested::Leaf(r) => Value::String(format_rational(r)),
        Nested::List(items) => Value::Array(items.iter().map(nested_json).collect()),
    }
}

fn nested_from_json(v: &Value) -> Result<Nested, DecodeError> {
    match v {
        Value::String(s) => parse_rational(s).map(Nested::Leaf).ok_or_else(|| DecodeError::Rational(s.clone())),
        Value::Array(items) => Ok(Nested::List(items.iter().map(nested_from_json).collect::<Result<_, _>>()?)),
        _ => Err(DecodeError::Shape("a string or a list")),
    }
}

/// Nested coefficient list of `x`.
#[must_use]
pub fn element_json(x: &FieldElement) -> Value {
    nested_json(&x.to_nested())
}

/// Inverse of [`element_json`].
///
/// # Errors
/// [`DecodeError`] for malformed input.
pub fn element_from_json(tower: &Arc<Tower>, v: &Value) -> Result<FieldElement, DecodeError> {
    FieldElement::from_nested(tower, &nested_from_json(v)?).map_err(|_| DecodeError::Coefficient)
}

/// `[{"name": .., "minpoly": [c0, c1, ..]}, ..]`, each `cᵢ` an element of
/// the tower below the level.
#[must_use]
pub fn tower_json(tower: &Tower) -> Value {
    let levels = tower
        .levels()
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let lower = tower.prefix(k);
            let coeffs: Vec<Value> = level
                .minpoly()
                .iter()
                .map(|c| element_json(&FieldElement::from_coords(&lower, c.clone())))
                .collect();
            json!({ "name": level.name(), "minpoly": coeffs })
        })
        .collect();
    Value::Array(levels)
}

/// Inverse of [`tower_json`].
///
/// # Errors
/// [`DecodeError`] for malformed input or an invalid level.
pub fn tower_from_json(v: &Value) -> Result<Arc<Tower>, DecodeError> {
    let levels = v.as_array().ok_or(DecodeError::Shape("a list of levels"))?;
    let mut tower = Tower::rationals();
    for level in levels {
        let name = level.get("name").and_then(Value::as_str).ok_or(DecodeError::Shape("a level name"))?;
        let coeffs = level.get("minpoly").and_then(Value::as_array).ok_or(DecodeError::Shape("a minpoly list"))?;
        let minpoly = coeffs
            .iter()
            .map(|c| element_from_json(&tower, c).map(|e| e.coords().to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        tower = tower.push_unchecked(name, minpoly).map_err(|e| DecodeError::Tower(e.to_string()))?;
    }
    Ok(tower)
}

/// Terms only, in graded-lex descending order.
#[must_use]
pub fn terms_json(p: &MPoly) -> Value {
    Value::Array(
        p.terms()
            .rev()
            .map(|(m, c)| json!({ "exp": m.0, "coeff": element_json(c) }))
            .collect(),
    )
}

/// `{"tower": .., "terms": ..}`.
#[must_use]
pub fn poly_json(p: &MPoly) -> Value {
    json!({ "tower": tower_json(p.tower()), "terms": terms_json(p) })
}

/// Inverse of [`poly_json`].
///
/// # Errors
/// [`DecodeError`] for malformed input.
pub fn poly_from_json(v: &Value) -> Result<MPoly, DecodeError> {
    let tower = tower_from_json(v.get("tower").ok_or(DecodeError::Shape("a tower field"))?)?;
    let terms = v.get("terms").and_then(Value::as_array).ok_or(DecodeError::Shape("a terms list"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let exp = t.get("exp").and_then(Value::as_array).ok_or(DecodeError::Shape("an exponent list"))?;
        if exp.len() != 3 {
            return Err(DecodeError::Shape("three exponents"));
        }
        let mut e = [0u32; 3];
        for (slot, x) in e.iter_mut().zip(exp) {
            *slot = x
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or(DecodeError::Shape("a nonnegative exponent"))?;
        }
        let c = element_from_json(&tower, t.get("coeff").ok_or(DecodeError::Shape("a coefficient"))?)?;
        out.push((e, c));
    }
    MPoly::from_terms(&tower, out).map_err(|_| DecodeError::Coefficient)
}

/// Parses a JSON string holding a polynomial document.
///
/// # Errors
/// [`DecodeError`] for malformed input.
pub fn parse_poly(s: &str) -> Result<MPoly, DecodeError> {
    let v: Value = serde_json::from_str(s).map_err(|e| DecodeError::Syntax(e.to_string()))?;
    poly_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use osculant::hesse::eisenstein_sqrt3;

    #[test]
    fn element_layout() {
        let tw = eisenstein_sqrt3();
        let eps = FieldElement::named_generator(&tw, "eps").unwrap();
        let s = FieldElement::named_generator(&tw, "sqrt3").unwrap();
        let x = &(&eps * &s) + &FieldElement::from_int(&tw, 2);
        assert_eq!(element_json(&x), json!([["2"], ["0", "1"]]));
        assert_eq!(element_from_json(&tw, &element_json(&x)).unwrap(), x);
    }

    #[test]
    fn tower_layout() {
        let v = tower_json(&Tower::eisenstein());
        assert_eq!(v, json!([{ "name": "eps", "minpoly": ["1", "-1", "1"] }]));
        assert_eq!(*tower_from_json(&v).unwrap(), *Tower::eisenstein());
    }

    #[test]
    fn terms_are_graded_lex_descending() {
        let tw = Tower::rationals();
        let p = MPoly::from_int_terms(&tw, &[([0, 0, 1], 1), ([1, 0, 0], 2), ([0, 2, 0], 3)]);
        let exps: Vec<Value> = terms_json(&p).as_array().unwrap().iter().map(|t| t["exp"].clone()).collect();
        assert_eq!(exps, vec![json!([0, 2, 0]), json!([1, 0, 0]), json!([0, 0, 1])]);
    }
}
