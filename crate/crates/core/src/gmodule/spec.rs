use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::json;
use crate::zmod::{lcm, ResidueMatrix};

use super::{augmentation_ideal, GModule};

/// Parsed module description; the acting group is supplied separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Explicit { moduli: Vec<u64>, action: Vec<Vec<Vec<i64>>> },
    GroupRing { m: u64 },
    AugmentationIdeal { m: u64 },
    Dual(Box<ModuleSpec>),
    Trivial { m: u64, rank: usize },
}

impl ModuleSpec {
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_value(&json::parse_value(text)?, "$")
    }

    pub fn from_value(v: &Value, path: &str) -> Result<Self> {
        let obj = json::object(v, path)?;
        if let Some(b) = obj.get("builtin") {
            let name = b.as_str().ok_or_else(|| Error::parse(format!("{path}.builtin"), "expected a string"))?;
            let m = |obj: &serde_json::Map<String, Value>| -> Result<u64> {
                let m = json::uint(json::field(obj, "m", path)?, &format!("{path}.m"))?;
                if m == 0 {
                    return Err(Error::parse(format!("{path}.m"), "modulus must be positive"));
                }
                Ok(m)
            };
            return match name {
                "group_ring" => {
                    json::only_keys(obj, &["builtin", "m"], path)?;
                    Ok(ModuleSpec::GroupRing { m: m(obj)? })
                }
                "augmentation_ideal" => {
                    json::only_keys(obj, &["builtin", "m"], path)?;
                    Ok(ModuleSpec::AugmentationIdeal { m: m(obj)? })
                }
                "trivial" => {
                    json::only_keys(obj, &["builtin", "m", "rank"], path)?;
                    let rank = match obj.get("rank") {
                        Some(r) => json::uint(r, &format!("{path}.rank"))? as usize,
                        None => 1,
                    };
                    Ok(ModuleSpec::Trivial { m: m(obj)?, rank })
                }
                "dual" => {
                    json::only_keys(obj, &["builtin", "of"], path)?;
                    let inner = json::field(obj, "of", path)?;
                    Ok(ModuleSpec::Dual(Box::new(Self::from_value(inner, &format!("{path}.of"))?)))
                }
                other => Err(Error::parse(format!("{path}.builtin"), format!("unknown builtin \"{other}\""))),
            };
        }
        json::only_keys(obj, &["moduli", "action"], path)?;
        let moduli = json::uint_list(json::field(obj, "moduli", path)?, &format!("{path}.moduli"))?;
        if let Some(i) = moduli.iter().position(|&d| d == 0) {
            return Err(Error::parse(format!("{path}.moduli[{i}]"), "modulus must be positive"));
        }
        let action_path = format!("{path}.action");
        let action = json::array(json::field(obj, "action", path)?, &action_path)?
            .iter()
            .enumerate()
            .map(|(k, m)| json::int_matrix(m, &format!("{action_path}[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleSpec::Explicit { moduli, action })
    }
}

pub fn build_module(spec: &ModuleSpec, group: &Arc<FiniteGroup>) -> Result<GModule> {
    match spec {
        ModuleSpec::Explicit { moduli, action } => {
            let m = moduli.iter().fold(1u64, |acc, &d| lcm(acc, d));
            let mats = action
                .iter()
                .enumerate()
                .map(|(k, rows)| {
                    if rows.len() != moduli.len() || rows.iter().any(|r| r.len() != moduli.len()) {
                        return Err(Error::InvalidAction(format!("matrix {k} is not {0}x{0}", moduli.len())));
                    }
                    ResidueMatrix::from_signed(m, rows)
                })
                .collect::<Result<Vec<_>>>()?;
            let mats = if moduli.is_empty() {
                vec![ResidueMatrix::zeros(1, 0, 0); group.generators().len()]
            } else {
                mats
            };
            GModule::new(group, moduli, mats)
        }
        ModuleSpec::GroupRing { m } => GModule::group_ring(group, *m),
        ModuleSpec::AugmentationIdeal { m } => augmentation_ideal(group, *m),
        ModuleSpec::Trivial { m, rank } => GModule::trivial(group, &vec![*m; *rank]),
        ModuleSpec::Dual(inner) => build_module(inner, group)?.cartier_dual(),
    }
}
