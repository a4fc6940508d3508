//! A validator for the JSON Schema subset used by output.schema.json:
//! type (with null unions), required, properties, additionalProperties,
//! items, enum, minimum, and pattern.

use serde_json::Value;

pub fn validate(schema: &Value, instance: &Value) -> Result<(), String> {
    validate_at(schema, instance, "$")
}

fn validate_at(schema: &Value, instance: &Value, path: &str) -> Result<(), String> {
    if let Some(types) = schema.get("type") {
        let allowed: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: malformed type keyword")),
        };
        let actual = match instance {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Number(n) => {
                if n.is_i64() || n.is_u64() {
                    "integer"
                } else {
                    "number"
                }
            }
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        };
        let ok = allowed
            .iter()
            .any(|&t| t == actual || (t == "number" && actual == "integer"));
        if !ok {
            return Err(format!("{path}: type {actual} not in {allowed:?}"));
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        let obj = instance
            .as_object()
            .ok_or_else(|| format!("{path}: required on non-object"))?;
        for key in required.iter().filter_map(Value::as_str) {
            if !obj.contains_key(key) {
                return Err(format!("{path}: missing required property `{key}`"));
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        if let Some(obj) = instance.as_object() {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate_at(sub, v, &format!("{path}.{key}"))?;
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in obj.keys() {
                    if !props.contains_key(key) {
                        return Err(format!("{path}: unexpected property `{key}`"));
                    }
                }
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = instance.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate_at(items, v, &format!("{path}[{i}]"))?;
            }
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(instance) {
            return Err(format!("{path}: value {instance} not in enum {options:?}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if let Some(v) = instance.as_i64() {
            if v < min {
                return Err(format!("{path}: {v} below minimum {min}"));
            }
        }
    }
    if let Some(pattern) = schema.get("pattern").and_then(Value::as_str) {
        let s = instance
            .as_str()
            .ok_or_else(|| format!("{path}: pattern on non-string"))?;
        if !notation_pattern_matches(pattern, s) {
            return Err(format!("{path}: `{s}` does not match `{pattern}`"));
        }
    }
    Ok(())
}

/// The schema uses a single pattern, for the table notation; check it
/// structurally rather than pulling in a regex engine.
fn notation_pattern_matches(pattern: &str, s: &str) -> bool {
    assert_eq!(
        pattern, "^[0-9]+\\[[0-9,]*\\][0-9]+\\+[0-9]+$",
        "unexpected pattern in schema"
    );
    let Some(open) = s.find('[') else {
        return false;
    };
    let Some(close) = s.find(']') else {
        return false;
    };
    let Some(plus) = s.rfind('+') else {
        return false;
    };
    if !(open < close && close < plus) {
        return false;
    }
    let digits = |t: &str| !t.is_empty() && t.chars().all(|c| c.is_ascii_digit());
    digits(&s[..open])
        && s[open + 1..close]
            .chars()
            .all(|c| c.is_ascii_digit() || c == ',')
        && digits(&s[close + 1..plus])
        && digits(&s[plus + 1..])
}
