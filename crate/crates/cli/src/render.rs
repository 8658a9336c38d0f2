//! Aligned plain-text rendering of the JSON documents.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object() && is_flat(i)),
        Value::Object(_) => false,
        _ => true,
    }
}

/// Array of objects sharing one key set with flat values: render as a table.
fn table_columns(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    let uniform = items.iter().all(|i| {
        i.as_object().is_some_and(|o| {
            o.len() == keys.len() && keys.iter().all(|k| o.get(k).is_some_and(is_flat))
        })
    });
    uniform.then_some(keys)
}

fn table(items: &[Value], keys: &[String], indent: &str, out: &mut String) {
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|i| keys.iter().map(|k| scalar(&i[k])).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(c, k)| cells.iter().map(|r| r[c].len()).chain([k.len()]).max().unwrap_or(0))
        .collect();
    let line = |row: Vec<&str>| {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        format!("{indent}{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(keys.iter().map(String::as_str).collect()));
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
}

fn object(map: &serde_json::Map<String, Value>, indent: &str, out: &mut String) {
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (k, v) in map {
        match v {
            Value::Object(inner) if !inner.is_empty() => {
                out.push_str(&format!("{indent}{k}:\n"));
                object(inner, &format!("{indent}  "), out);
            }
            Value::Array(items) if !is_flat(v) => {
                out.push_str(&format!("{indent}{k}:\n"));
                let sub = format!("{indent}  ");
                match table_columns(items) {
                    Some(keys) => table(items, &keys, &sub, out),
                    None => {
                        for (i, item) in items.iter().enumerate() {
                            match item {
                                Value::Object(o) => {
                                    out.push_str(&format!("{sub}[{i}]\n"));
                                    object(o, &format!("{sub}  "), out);
                                }
                                other => out.push_str(&format!("{sub}{}\n", scalar(other))),
                            }
                        }
                    }
                }
            }
            _ => out.push_str(&format!("{indent}{k:<width$}  {}\n", scalar(v))),
        }
    }
}

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => object(map, "", &mut out),
        Value::Array(items) => match table_columns(items) {
            Some(keys) => table(items, &keys, "", &mut out),
            None => items.iter().for_each(|i| out.push_str(&format!("{}\n", scalar(i)))),
        },
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn aligned_keys() {
        let v = json!({"i_level": 2, "split_heights": [0]});
        assert_eq!(text(&v), "i_level        2\nsplit_heights  [0]\n");
    }

    #[test]
    fn term_tables() {
        let v = json!({"terms": [{"x": 1, "y": 0, "coeff": "1"}, {"x": 1, "y": 1, "coeff": "v1"}]});
        assert_eq!(text(&v), "terms:\n  x  y  coeff\n  1  0  1\n  1  1  v1\n");
    }
}
