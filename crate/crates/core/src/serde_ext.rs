//! JSON helpers: infinite floats are written as `"inf"` / `"-inf"`.

use serde::{Deserialize, Deserializer, Serializer};
use serde_json::Value;

pub fn to_value(x: f64) -> Value {
    if x == f64::INFINITY {
        Value::from("inf")
    } else if x == f64::NEG_INFINITY {
        Value::from("-inf")
    } else {
        Value::from(x)
    }
}

pub fn from_value(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => match s.as_str() {
            "inf" | "+inf" | "infinity" | "∞" => Some(f64::INFINITY),
            "-inf" | "-infinity" | "-∞" => Some(f64::NEG_INFINITY),
            t => t.parse().ok(),
        },
        Value::Null => Some(f64::INFINITY),
        _ => None,
    }
}

pub mod ext_f64 {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_some(&to_value(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let v = Value::deserialize(d)?;
        from_value(&v).ok_or_else(|| serde::de::Error::custom("expected a number, \"inf\" or \"-inf\""))
    }
}

pub mod ext_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| to_value(*x)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        let v = Vec::<Value>::deserialize(d)?;
        v.iter()
            .map(|x| from_value(x).ok_or_else(|| serde::de::Error::custom("expected a number, \"inf\" or \"-inf\"")))
            .collect()
    }
}
