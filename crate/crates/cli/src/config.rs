//! `--config FILE` support. The file is a JSON object whose keys are long
//! flag names and whose "command" key names the subcommand, e.g.
//!
//! ```json
//! {"command": "verify", "identity": "kp", "a": [1, "2pi"], "x": "0:10:1"}
//! ```
//!
//! It is spliced into the argument list ahead of the remaining command-line
//! arguments, so flags given on the command line come last and win.

use std::ffi::OsString;

use serde_json::Value;

use crate::Failure;

fn scalar(key: &str, v: &Value) -> Result<Option<String>, Failure> {
    match v {
        Value::String(s) => Ok(Some(s.clone())),
        Value::Number(n) => Ok(Some(n.to_string())),
        Value::Null => Ok(None),
        _ => Err(Failure::Invalid(format!(
            "config key {key:?}: expected a string or number, got {v}"
        ))),
    }
}

/// Turns the config object into command-line tokens.
pub fn tokens(config: &Value) -> Result<Vec<String>, Failure> {
    let obj = config
        .as_object()
        .ok_or_else(|| Failure::Invalid("config must be a JSON object".into()))?;
    let mut out = Vec::new();
    match obj.get("command") {
        Some(Value::String(s)) => out.extend(s.split_whitespace().map(String::from)),
        Some(Value::Array(parts)) => {
            for p in parts {
                out.extend(scalar("command", p)?);
            }
        }
        _ => return Err(Failure::Invalid("config needs a \"command\" key".into())),
    }
    for (key, v) in obj {
        if key == "command" {
            continue;
        }
        if key == "config" {
            return Err(Failure::Invalid("config files cannot nest".into()));
        }
        let flag = format!("--{key}");
        match v {
            Value::Bool(true) => out.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                out.push(flag);
                for item in items {
                    out.extend(scalar(key, item)?);
                }
            }
            _ => {
                out.push(flag);
                out.extend(scalar(key, v)?);
            }
        }
    }
    Ok(out)
}

/// Replaces `--config PATH` in `args` by the file's contents.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, Failure> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    let program = it.next();
    while let Some(arg) = it.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            let p = it
                .next()
                .ok_or_else(|| Failure::Invalid("--config needs a path".into()))?;
            path = Some(p);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(OsString::from(p));
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(program.into_iter().chain(rest.into_iter().map(mark_negative)).collect());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        Failure::Invalid(format!("cannot read config {}: {e}", path.to_string_lossy()))
    })?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(format!("config is not valid JSON: {e}")))?;
    let mut out: Vec<OsString> = program.into_iter().collect();
    out.extend(tokens(&value)?.into_iter().map(OsString::from));
    out.extend(rest);
    Ok(out.into_iter().enumerate().map(|(i, a)| if i == 0 { a } else { mark_negative(a) }).collect())
}

/// Marker standing in for the sign of a negative value, so that tokens such
/// as `-2:2:0.5` or `-pi` are not mistaken for flags.
pub const MINUS: char = '\u{2212}';

fn mark_negative(arg: OsString) -> OsString {
    let Some(s) = arg.to_str() else {
        return arg;
    };
    match s.strip_prefix('-') {
        Some(rest) if rest.starts_with(|c: char| c.is_ascii_digit() || c == '.' || c == 'p') => {
            OsString::from(format!("{MINUS}{rest}"))
        }
        _ => arg,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flags_from_object() {
        let t = tokens(&json!({
            "command": "zeros certify",
            "fn": "k",
            "a": "2pi",
            "rect": [0, 20, -2, 2],
            "emit-coeffs": false
        }))
        .unwrap();
        assert_eq!(t[..2], ["zeros", "certify"]);
        let joined = t.join(" ");
        assert!(joined.contains("--fn k"));
        assert!(joined.contains("--a 2pi"));
        assert!(joined.contains("--rect 0 20 -2 2"));
        assert!(!joined.contains("emit"));
    }

    #[test]
    fn negative_values_are_marked() {
        let args = ["realzeros", "--y", "-2:2:0.5", "--rect", "-pi", "--format"];
        let out = expand(args.iter().map(OsString::from).collect()).unwrap();
        assert_eq!(out[2], OsString::from("\u{2212}2:2:0.5"));
        assert_eq!(out[4], OsString::from("\u{2212}pi"));
        assert_eq!(out[5], OsString::from("--format"));
    }

    #[test]
    fn command_required() {
        assert!(tokens(&json!({"fn": "k"})).is_err());
        assert!(tokens(&json!([1, 2])).is_err());
    }
}
