use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use super::LocalAction;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TameLocalDatum {
    Finite { q: u64, n: u64 },
    Real,
    Complex,
}

impl TameLocalDatum {
    /// `{"kind":"finite","q":Q,"n":N} | {"kind":"real"} | {"kind":"complex"}`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_value(&json::parse_value(text)?, "$")
    }

    pub fn from_value(v: &Value, path: &str) -> Result<Self> {
        let obj = json::object(v, path)?;
        let kind = json::field(obj, "kind", path)?
            .as_str()
            .ok_or_else(|| Error::parse(format!("{path}.kind"), "expected a string"))?;
        match kind {
            "finite" => {
                json::only_keys(obj, &["kind", "q", "n"], path)?;
                let q = json::uint(json::field(obj, "q", path)?, &format!("{path}.q"))?;
                let n = json::uint(json::field(obj, "n", path)?, &format!("{path}.n"))?;
                if q == 0 || n == 0 {
                    return Err(Error::parse(path, "q and n must be positive"));
                }
                Ok(TameLocalDatum::Finite { q, n })
            }
            "real" => {
                json::only_keys(obj, &["kind"], path)?;
                Ok(TameLocalDatum::Real)
            }
            "complex" => {
                json::only_keys(obj, &["kind"], path)?;
                Ok(TameLocalDatum::Complex)
            }
            other => Err(Error::parse(format!("{path}.kind"), format!("unknown kind {other:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

impl fmt::Display for TameLocalDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TameLocalDatum::Finite { q, n } => write!(f, "finite(q={q}, n={n})"),
            TameLocalDatum::Real => write!(f, "real"),
            TameLocalDatum::Complex => write!(f, "complex"),
        }
    }
}

/// How σ acts on `G`: `{"identity":true}`, `{"conjugation":g}` or
/// `{"generator_images":[...]}` (element indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalActionSpec {
    Identity,
    Conjugation(usize),
    GeneratorImages(Vec<usize>),
}

impl LocalActionSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let v = json::parse_value(text)?;
        let path = "$";
        let obj = json::object(&v, path)?;
        if obj.len() != 1 {
            return Err(Error::parse(path, "expected exactly one of identity, conjugation, generator_images"));
        }
        let (key, val) = obj.iter().next().expect("one entry");
        match key.as_str() {
            "identity" => match val {
                Value::Bool(true) => Ok(LocalActionSpec::Identity),
                _ => Err(Error::parse("$.identity", "expected true")),
            },
            "conjugation" => Ok(LocalActionSpec::Conjugation(json::uint(val, "$.conjugation")? as usize)),
            "generator_images" => Ok(LocalActionSpec::GeneratorImages(
                json::uint_list(val, "$.generator_images")?.into_iter().map(|x| x as usize).collect(),
            )),
            other => Err(Error::parse(format!("$.{other}"), "unknown action kind")),
        }
    }

    pub fn build(&self, group: &Arc<FiniteGroup>) -> Result<LocalAction> {
        match self {
            LocalActionSpec::Identity => Ok(LocalAction::identity(group)),
            LocalActionSpec::Conjugation(g) => LocalAction::conjugation(group, *g),
            LocalActionSpec::GeneratorImages(images) => {
                if let Some(&bad) = images.iter().find(|&&x| x >= group.order()) {
                    return Err(Error::InvalidInput(format!("element {bad} out of range")));
                }
                LocalAction::from_generator_images(group, images)
            }
        }
    }
}
