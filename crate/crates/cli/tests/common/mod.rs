//! Helpers shared by the CLI integration tests.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

pub fn qaffine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaffine"))
        .args(args)
        .env_remove("QAFFINE_THREADS")
        .output()
        .expect("spawn qaffine")
}

pub fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

pub fn schema() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/qaffine-output.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema parses")
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        other => panic!("unsupported type `{other}` in schema"),
    }
}

/// Validates `v` against the draft 2020-12 keywords the shipped schema uses.
/// Unknown keywords are rejected so the schema cannot silently outgrow this.
pub fn validate(schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let s = match schema {
        Value::Bool(true) => return,
        Value::Bool(false) => {
            errors.push(format!("{path}: not allowed"));
            return;
        }
        Value::Object(s) => s,
        other => panic!("schema node is not an object: {other}"),
    };
    for (key, sub) in s {
        match key.as_str() {
            "$schema" | "$id" | "title" | "description" => {}
            "type" => {
                let ok = match sub {
                    Value::String(t) => type_matches(t, v),
                    Value::Array(ts) => ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)),
                    _ => panic!("bad type keyword"),
                };
                if !ok {
                    errors.push(format!("{path}: expected type {sub}, got {v}"));
                }
            }
            "enum" => {
                if !sub.as_array().unwrap().contains(v) {
                    errors.push(format!("{path}: {v} not in {sub}"));
                }
            }
            "const" => {
                if sub != v {
                    errors.push(format!("{path}: {v} != {sub}"));
                }
            }
            "minimum" => {
                if let (Some(x), Some(m)) = (v.as_f64(), sub.as_f64()) {
                    if x < m {
                        errors.push(format!("{path}: {x} < {m}"));
                    }
                }
            }
            "required" => {
                if let Some(o) = v.as_object() {
                    for k in sub.as_array().unwrap() {
                        if !o.contains_key(k.as_str().unwrap()) {
                            errors.push(format!("{path}: missing {k}"));
                        }
                    }
                }
            }
            "properties" => {
                if let Some(o) = v.as_object() {
                    for (k, ps) in sub.as_object().unwrap() {
                        if let Some(x) = o.get(k) {
                            validate(ps, x, &format!("{path}/{k}"), errors);
                        }
                    }
                }
            }
            "additionalProperties" => {
                let known = s.get("properties").and_then(Value::as_object);
                if let Some(o) = v.as_object() {
                    for (k, x) in o {
                        if known.is_none_or(|p| !p.contains_key(k)) {
                            validate(sub, x, &format!("{path}/{k}"), errors);
                        }
                    }
                }
            }
            "items" => {
                if let Some(a) = v.as_array() {
                    for (i, x) in a.iter().enumerate() {
                        validate(sub, x, &format!("{path}/{i}"), errors);
                    }
                }
            }
            "allOf" => {
                for part in sub.as_array().unwrap() {
                    validate(part, v, path, errors);
                }
            }
            "if" => {
                let mut probe = Vec::new();
                validate(sub, v, path, &mut probe);
                let branch = if probe.is_empty() { s.get("then") } else { s.get("else") };
                if let Some(b) = branch {
                    validate(b, v, path, errors);
                }
            }
            "then" | "else" => {}
            other => panic!("unsupported schema keyword `{other}`"),
        }
    }
}

pub fn assert_valid(v: &Value) {
    let mut errors = Vec::new();
    validate(&schema(), v, "", &mut errors);
    assert!(errors.is_empty(), "schema violations: {errors:?}\nin {v}");
}
