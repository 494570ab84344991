//! Helpers for emitting exact integers and rationals as JSON.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::lattice::IntMatrix;

/// A JSON number when it fits in 64 bits, a decimal string otherwise.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn int_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| int_vec(r)).collect())
}

/// Rationals are written as `"p/q"` strings (or `"p"` when integral).
pub fn rational(x: &BigRational) -> Value {
    Value::from(x.to_string())
}

pub fn rational_vec(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}
