use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Exact integers render as JSON numbers when they fit a machine word and
/// as decimal strings beyond that.
pub fn big_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn print_json(v: &Value) {
    println!("{v}");
}

pub fn csv_line(fields: &[String]) -> String {
    fields.join(",")
}
