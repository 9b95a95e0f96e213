//! JSON emission with every real written to 17 significant digits.

use std::str::FromStr;

use serde::Serialize;
use serde_json::{Number, Value};

use crate::format::fmt_real;

fn rewrite(v: &mut Value) {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            if let Some(x) = n.as_f64() {
                *n = Number::from_str(&fmt_real(x)).expect("formatted real is valid JSON");
            }
        }
        Value::Array(items) => items.iter_mut().for_each(rewrite),
        Value::Object(map) => map.values_mut().for_each(rewrite),
        _ => {}
    }
}

pub fn to_value<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    rewrite(&mut v);
    v
}

pub fn to_string_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(&to_value(value)).expect("value serializes")
}
