//! Helpers for reading the structured-text spec grammars.

use serde_json::Value;

use crate::error::{Error, Result};

pub(crate) fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

pub(crate) fn object<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(path, "expected an object"))
}

pub(crate) fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::parse(path, format!("missing field \"{key}\"")))
}

pub(crate) fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

pub(crate) fn int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::parse(path, "expected an integer"))
}

pub(crate) fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

pub(crate) fn uint_list(v: &Value, path: &str) -> Result<Vec<u64>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| uint(x, &format!("{path}[{i}]"))).collect()
}

pub(crate) fn int_matrix(v: &Value, path: &str) -> Result<Vec<Vec<i64>>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let p = format!("{path}[{i}]");
            array(row, &p)?.iter().enumerate().map(|(j, x)| int(x, &format!("{p}[{j}]"))).collect()
        })
        .collect()
}

/// Rejects keys outside `allowed`, naming the first offender.
pub(crate) fn only_keys(obj: &serde_json::Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::parse(path, format!("unexpected field \"{k}\""))),
        None => Ok(()),
    }
}
