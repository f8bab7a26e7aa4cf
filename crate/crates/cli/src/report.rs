//! JSON reports. Every float is written with 17 significant digits in
//! scientific notation; non-finite values become `null`.

use serde::Serialize;
use serde_json::{json, Map, Number, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

pub fn float(x: f64) -> Value {
    if x.is_finite() {
        let x = if x == 0.0 { 0.0 } else { x };
        Value::Number(format!("{x:.16e}").parse::<Number>().expect("valid JSON number"))
    } else {
        Value::Null
    }
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| float(*x)).collect())
}

/// Rewrites every float in `v` to the canonical 17-digit form.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => float(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, canonical(v))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    canonical(serde_json::to_value(t).expect("report types serialize"))
}

pub fn digest(inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Common envelope around a command payload.
pub struct Report {
    pub command: &'static str,
    pub seed: Option<u64>,
    pub inputs_digest: Option<String>,
    pub pass: bool,
    pub payload: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            seed: None,
            inputs_digest: None,
            pass: true,
            payload: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.payload.insert(key.to_string(), value);
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert(
            "versions".into(),
            json!({ "sspread": env!("CARGO_PKG_VERSION"), "schema": SCHEMA_VERSION }),
        );
        out.insert("seed".into(), json!(self.seed));
        out.insert("inputs_digest".into(), json!(self.inputs_digest));
        out.insert("pass".into(), json!(self.pass));
        for (k, v) in &self.payload {
            out.insert(k.clone(), canonical(v.clone()));
        }
        Value::Object(out)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}
