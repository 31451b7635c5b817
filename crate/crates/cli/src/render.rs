//! Plain-text rendering of a JSON report.

use serde_json::Value;

const INDENT: &str = "  ";

fn is_int_vector(v: &Value) -> bool {
    matches!(v, Value::Array(xs) if !xs.is_empty() && xs.iter().all(Value::is_number))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.is_empty() => Some("{}".into()),
        Value::Array(xs) if is_int_vector(v) => {
            let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            Some(format!("({})", parts.join(", ")))
        }
        Value::Array(xs) if xs.iter().all(|x| is_int_vector(x) || scalar_leaf(x)) => {
            let parts: Vec<String> = xs.iter().filter_map(scalar).collect();
            Some(format!("{{{}}}", parts.join(", ")))
        }
        _ => None,
    }
}

fn scalar_leaf(v: &Value) -> bool {
    matches!(v, Value::Bool(_) | Value::Number(_) | Value::String(_))
}

fn write(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = INDENT.repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                write(out, depth + 1, k, x);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                write(out, depth + 1, &format!("[{i}]"), x);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = report else {
        return report.to_string();
    };
    for key in ["command", "label", "version"] {
        if let Some(v) = map.get(key) {
            write(&mut out, 0, key, v);
        }
    }
    if let Some(v) = map.get("results").filter(|v| !v.is_null()) {
        write(&mut out, 0, "results", v);
    }
    if let Some(v) = map.get("error") {
        write(&mut out, 0, "error", v);
    }
    if let Some(v) = map.get("timings") {
        write(&mut out, 0, "timings", v);
    }
    out
}
