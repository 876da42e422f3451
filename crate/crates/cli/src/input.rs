use std::path::Path;

use anyhow::{Context, Result};
use grunwald_core::gmodule::ModuleSpec;
use grunwald_core::group::GroupSpec;
use grunwald_core::local::{LocalActionSpec, TameLocalDatum};
use serde_json::Value;

/// Inline JSON, or the contents of a file.
fn text_of(arg: &str) -> Result<Option<String>> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(arg.to_string()));
    }
    let p = Path::new(arg);
    if p.is_file() {
        return Ok(Some(std::fs::read_to_string(p).with_context(|| format!("reading {arg}"))?));
    }
    Ok(None)
}

/// Parsed again without positions, for the inputs digest.
fn canonical(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or(Value::Null)
}

pub fn group_spec(arg: &str) -> Result<(GroupSpec, Value)> {
    match text_of(arg)? {
        Some(text) => Ok((GroupSpec::parse(&text)?, canonical(&text))),
        // A bare word names a catalog group.
        None => {
            let v = serde_json::json!({ "named": arg });
            Ok((GroupSpec::parse(&v.to_string())?, v))
        }
    }
}

pub fn module_spec(arg: &str) -> Result<(ModuleSpec, Value)> {
    let text = text_of(arg)?.with_context(|| format!("module spec {arg:?} is neither JSON nor a file"))?;
    Ok((ModuleSpec::parse(&text)?, canonical(&text)))
}

pub fn datum(arg: &str) -> Result<TameLocalDatum> {
    let text = text_of(arg)?.with_context(|| format!("datum {arg:?} is neither JSON nor a file"))?;
    Ok(TameLocalDatum::parse(&text)?)
}

pub fn action(arg: Option<&str>) -> Result<(LocalActionSpec, Value)> {
    match arg {
        None => Ok((LocalActionSpec::Identity, serde_json::json!({ "identity": true }))),
        Some(a) => {
            let text = text_of(a)?.with_context(|| format!("action {a:?} is neither JSON nor a file"))?;
            Ok((LocalActionSpec::parse(&text)?, canonical(&text)))
        }
    }
}
