//! Deterministic JSON certificate envelope.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// `{kind, version, input_sha256, seed, payload}` with every object's keys
/// sorted, pretty-printed with a trailing newline.
pub fn render(kind: &str, input_sha256: &str, seed: u64, payload: impl Serialize) -> anyhow::Result<String> {
    let payload = serde_json::to_value(payload)?;
    let mut top = Map::new();
    top.insert("input_sha256".into(), Value::from(input_sha256));
    top.insert("kind".into(), Value::from(kind));
    top.insert("payload".into(), payload);
    top.insert("seed".into(), Value::from(seed));
    top.insert("version".into(), Value::from(VERSION));
    Ok(serde_json::to_string_pretty(&sorted(Value::Object(top)))? + "\n")
}

/// Rebuilds objects with keys inserted in sorted order, so the output is
/// sorted whatever map type backs `serde_json::Map`.
pub fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_stable() {
        let a = render("value", "00", 7, serde_json::json!({"z": 1, "a": {"y": 2, "b": 3}})).unwrap();
        let b = render("value", "00", 7, serde_json::json!({"a": {"b": 3, "y": 2}, "z": 1})).unwrap();
        assert_eq!(a, b);
        let order: Vec<usize> = ["input_sha256", "kind", "payload", "seed", "version"]
            .iter()
            .map(|k| a.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
