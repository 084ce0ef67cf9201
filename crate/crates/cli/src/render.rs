//! Text output.
//!
//! `dump` writes any JSON value as an indented `key: value` listing. Scalar
//! arrays go inline as `[a, b]`; other array items start with a bare `-` line
//! and are indented one level. `parse_dump` reads it back with every scalar
//! as a string.

use std::fmt::Write;

use serde_json::{Map, Value};

use crate::report::{TableReport, VerifyReport};

const INDENT: &str = "  ";

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline_ok(s: &str) -> bool {
    !s.is_empty() && !s.contains([',', '[', ']', '{', '}', '\n']) && s.trim() == s
}

fn inline(items: &[Value]) -> Option<String> {
    let parts: Option<Vec<String>> = items
        .iter()
        .map(|v| scalar(v).filter(|s| inline_ok(s)))
        .collect();
    parts.map(|p| format!("[{}]", p.join(", ")))
}

fn write_value(out: &mut String, depth: usize, v: &Value) {
    match v {
        Value::Object(m) if m.is_empty() => {
            let _ = writeln!(out, "{}{{}}", INDENT.repeat(depth));
        }
        Value::Array(items) if items.is_empty() => {
            let _ = writeln!(out, "{}[]", INDENT.repeat(depth));
        }
        Value::Object(m) => write_object(out, depth, m),
        Value::Array(items) => {
            for it in items {
                let _ = writeln!(out, "{}-", INDENT.repeat(depth));
                write_value(out, depth + 1, it);
            }
        }
        other => {
            let _ = writeln!(out, "{}{}", INDENT.repeat(depth), scalar(other).unwrap_or_default());
        }
    }
}

fn write_object(out: &mut String, depth: usize, m: &Map<String, Value>) {
    let pad = INDENT.repeat(depth);
    for (k, v) in m {
        match v {
            Value::Object(o) if o.is_empty() => {
                let _ = writeln!(out, "{pad}{k}: {{}}");
            }
            Value::Object(o) => {
                let _ = writeln!(out, "{pad}{k}:");
                write_object(out, depth + 1, o);
            }
            Value::Array(items) => match inline(items) {
                Some(s) => {
                    let _ = writeln!(out, "{pad}{k}: {s}");
                }
                None => {
                    let _ = writeln!(out, "{pad}{k}:");
                    write_value(out, depth + 1, v);
                }
            },
            other => {
                let _ = writeln!(out, "{pad}{k}: {}", scalar(other).unwrap_or_default());
            }
        }
    }
}

pub fn dump(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, 0, v);
    out
}

// ---------------------------------------------------------------- read back

struct Line<'a> {
    depth: usize,
    text: &'a str,
}

fn lines(s: &str) -> Result<Vec<Line<'_>>, String> {
    s.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let n = l.len() - l.trim_start_matches(' ').len();
            if n % INDENT.len() != 0 {
                return Err(format!("line {}: odd indentation", i + 1));
            }
            Ok(Line {
                depth: n / INDENT.len(),
                text: &l[n..],
            })
        })
        .collect()
}

fn parse_inline(s: &str) -> Value {
    if s == "{}" {
        return Value::Object(Map::new());
    }
    match s.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        Some("") => Value::Array(vec![]),
        Some(body) => Value::Array(body.split(", ").map(|x| Value::String(x.into())).collect()),
        None => Value::String(s.into()),
    }
}

fn parse_block(ls: &[Line], i: &mut usize, depth: usize) -> Result<Value, String> {
    if *i >= ls.len() || ls[*i].depth != depth {
        return Err(format!("expected a block at depth {depth}"));
    }
    if ls[*i].text == "-" {
        let mut items = Vec::new();
        while *i < ls.len() && ls[*i].depth == depth && ls[*i].text == "-" {
            *i += 1;
            if *i < ls.len() && ls[*i].depth == depth + 1 && !is_key(ls[*i].text) && ls[*i].text != "-" {
                items.push(parse_inline(ls[*i].text));
                *i += 1;
            } else {
                items.push(parse_block(ls, i, depth + 1)?);
            }
        }
        return Ok(Value::Array(items));
    }
    let mut m = Map::new();
    while *i < ls.len() && ls[*i].depth == depth {
        let t = ls[*i].text;
        let (k, rest) = t
            .split_once(':')
            .ok_or_else(|| format!("expected 'key: value', got '{t}'"))?;
        *i += 1;
        let v = match rest.strip_prefix(' ') {
            Some(r) => parse_inline(r),
            None if rest.is_empty() => parse_block(ls, i, depth + 1)?,
            None => return Err(format!("expected a space after '{k}:'")),
        };
        m.insert(k.to_string(), v);
    }
    Ok(Value::Object(m))
}

fn is_key(t: &str) -> bool {
    t.contains(": ") || t.ends_with(':')
}

/// Reads a `dump` back; every scalar becomes a string.
pub fn parse_dump(s: &str) -> Result<Value, String> {
    let ls = lines(s)?;
    let mut i = 0;
    let v = parse_block(&ls, &mut i, 0)?;
    if i != ls.len() {
        return Err(format!("trailing content at line {}", i + 1));
    }
    Ok(v)
}

/// `v` with every scalar replaced by its dump string, for comparison with
/// [`parse_dump`].
pub fn stringify(v: &Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(m.iter().map(|(k, v)| (k.clone(), stringify(v))).collect()),
        Value::Array(a) => Value::Array(a.iter().map(stringify).collect()),
        other => Value::String(scalar(other).unwrap_or_default()),
    }
}

// ---------------------------------------------------------------- tables

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let s: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<width$}", width = w[i]))
            .collect();
        let _ = writeln!(out, "{}", s.join("  ").trim_end());
    };
    line(header.to_vec());
    line(w.iter().map(|&n| "-".repeat(n)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect());
    for r in rows {
        line(r.iter().map(|s| s.as_str()).collect());
    }
    out
}

fn opt(x: Option<usize>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

pub fn table_text(t: &TableReport) -> String {
    let with_formula = t.formula.is_some();
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| {
            let modules: Vec<String> = r
                .modules
                .iter()
                .map(|m| format!("{}:{}", m.word, opt(m.u_mu)))
                .collect();
            let mut row = vec![
                r.algebra.clone(),
                format!("{{{}}}", r.cross.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")),
                modules.join(" "),
                opt(r.u),
            ];
            if with_formula {
                let e = r.expected.as_ref().map_or(String::new(), |e| {
                    e.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
                });
                row.push(e);
                row.push(if r.matches == Some(true) { "yes".into() } else { "NO".into() });
            }
            row
        })
        .collect();
    let mut header = vec!["algebra", "cross", "U_mu", "U"];
    if with_formula {
        header.extend(["expected", "match"]);
    }
    aligned(&header, &rows)
}

pub fn verify_text(v: &VerifyReport) -> String {
    let rows: Vec<Vec<String>> = v
        .checks
        .iter()
        .map(|c| {
            let status = serde_json::to_value(&c.check.status)
                .ok()
                .and_then(|s| s.as_str().map(str::to_string))
                .unwrap_or_default();
            vec![c.name.clone(), status, c.check.witness.clone().unwrap_or_default()]
        })
        .collect();
    let cross: Vec<String> = v.cross.iter().map(|c| c.to_string()).collect();
    format!(
        "{} / P{{{}}}\n{}",
        v.algebra,
        cross.join(","),
        aligned(&["check", "status", "witness"], &rows)
    )
}
