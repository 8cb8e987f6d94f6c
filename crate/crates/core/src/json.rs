//! Small helpers for deterministic JSON rendering of exact values.

use num_bigint::BigInt;
use serde::Serializer;
use serde_json::Value;

use crate::exact::Rational;

/// Integers that fit in i64 become JSON numbers, larger ones strings.
pub fn bigint(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

/// Integral rationals as numbers (when small), everything else as `"p/q"`.
pub fn rational(x: &Rational) -> Value {
    if x.denom() == &BigInt::from(1) {
        return bigint(x.numer());
    }
    Value::String(x.to_string())
}

pub fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

pub fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&bigint(x), s)
}

pub fn ser_bigints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&xs.iter().map(bigint).collect::<Vec<_>>(), s)
}

pub fn ser_rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&rational(x), s)
}

pub fn ser_rationals<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&rationals(xs), s)
}

pub fn ser_matrix<S: Serializer>(m: &crate::exact::ExactMatrix, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&m.to_json_value(), s)
}
