//! JSON helpers. Rationals are written as strings `"p/q"` (or `"p"`);
//! matrices as arrays of rows.

use std::any::Any;

use serde::Serializer;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Matrix};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};
use crate::weyl::SubsetJ;

pub fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub fn ser_rational_blocks<S: Serializer>(v: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.iter().map(format_rational).collect::<Vec<_>>()))
}

pub fn rationals_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(format_rational(r))).collect())
}

/// Exact matrices become rows of strings, float matrices rows of numbers.
pub fn matrix_to_json<T: Scalar>(m: &Matrix<T>) -> Value {
    let cell = |x: &T| -> Value {
        let any: &dyn Any = x;
        match any.downcast_ref::<Rational>() {
            Some(r) => Value::String(format_rational(r)),
            None => serde_json::json!(x.to_f64()),
        }
    };
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(cell).collect())).collect())
}

/// A rational from a JSON string (`"p/q"`, `"p"`, decimal) or number.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(Rational::from_int(i))
            } else {
                parse_rational(&num.to_string())
            }
        }
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

pub fn rationals_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(rational_from_json)
        .collect()
}

/// A float from a JSON number or rational string.
pub fn f64_from_json(v: &Value) -> Result<f64> {
    match v {
        Value::Number(num) => num.as_f64().ok_or_else(|| Error::Parse(format!("bad number {num}"))),
        Value::String(_) => Ok(rational_from_json(v)?.to_f64()),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

pub fn matrix_from_json(v: &Value) -> Result<ExactMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let rows = rows.iter().map(rationals_from_json).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn subset_from_json(n: usize, v: &Value) -> Result<SubsetJ> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("expected an index array, got {v}")))?;
    let members = arr
        .iter()
        .map(|x| x.as_u64().map(|i| i as usize).ok_or_else(|| Error::Parse(format!("bad index {x}"))))
        .collect::<Result<Vec<_>>>()?;
    SubsetJ::new(n, &members)
}
