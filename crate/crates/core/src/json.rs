//! JSON helpers: integers stay exact by switching to strings past 2^53.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serializer};
use serde_json::Value;

const SAFE: i64 = 1 << 53;

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() < SAFE => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn int_from_value(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

pub fn ints_value(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

/// serde adapter for `BigInt` fields.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) if v.abs() < SAFE => s.serialize_i64(v),
            _ => s.serialize_str(&x.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = Value::deserialize(d)?;
        int_from_value(&v).ok_or_else(|| serde::de::Error::custom(format!("expected an integer, got {v}")))
    }
}

/// serde adapter for `Vec<BigInt>` fields.
pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(int_value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let vs = Vec::<Value>::deserialize(d)?;
        vs.iter()
            .map(|v| int_from_value(v).ok_or_else(|| serde::de::Error::custom(format!("expected an integer, got {v}"))))
            .collect()
    }
}

/// Large values are rendered as strings, small ones as numbers.
pub fn is_big(x: &BigInt) -> bool {
    x.abs() >= BigInt::from(SAFE)
}
