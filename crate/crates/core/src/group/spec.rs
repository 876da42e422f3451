use std::sync::Arc;

use serde_json::Value;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::catalog::named;
use crate::group::finite::FiniteGroup;
use crate::group::semidirect::{semidirect_from_parts, Semidirect};
use crate::json;
use crate::zmod::{invariant_factors_of_cyclic, lcm, ResidueMatrix};

/// Parsed group description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Table(Vec<Vec<usize>>),
    /// Point images, 0- or 1-based.
    Permutations(Vec<Vec<usize>>),
    Abelian(Vec<u64>),
    /// `A` in the coordinates given (not normalized), one matrix per generator of `G`.
    Semidirect { a: Vec<u64>, g: Box<GroupSpec>, action: Vec<Vec<Vec<i64>>> },
    Named(String),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_value(&json::parse_value(text)?, "$")
    }

    pub fn from_value(v: &Value, path: &str) -> Result<Self> {
        let obj = json::object(v, path)?;
        if obj.len() != 1 {
            return Err(Error::parse(path, "expected exactly one of table, perm_gens, abelian, semidirect, named"));
        }
        let (key, body) = obj.iter().next().expect("one entry");
        let p = format!("{path}.{key}");
        match key.as_str() {
            "table" => {
                let rows = json::int_matrix(body, &p)?;
                let rows = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, &x)| {
                                usize::try_from(x).map_err(|_| Error::parse(format!("{p}[{i}][{j}]"), "negative entry"))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupSpec::Table(rows))
            }
            "perm_gens" => {
                let gens = json::array(body, &p)?
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        json::uint_list(g, &format!("{p}[{i}]")).map(|v| v.into_iter().map(|x| x as usize).collect())
                    })
                    .collect::<Result<Vec<Vec<usize>>>>()?;
                Ok(GroupSpec::Permutations(gens))
            }
            "abelian" => Ok(GroupSpec::Abelian(json::uint_list(body, &p)?)),
            "named" => {
                let s = body.as_str().ok_or_else(|| Error::parse(&p, "expected a string"))?;
                Ok(GroupSpec::Named(s.to_string()))
            }
            "semidirect" => {
                let o = json::object(body, &p)?;
                json::only_keys(o, &["A", "G", "action"], &p)?;
                let a_val = json::field(o, "A", &p)?;
                let a = match GroupSpec::from_value(a_val, &format!("{p}.A"))? {
                    GroupSpec::Abelian(m) => m,
                    _ => return Err(Error::parse(format!("{p}.A"), "the normal factor must be an abelian spec")),
                };
                let g = GroupSpec::from_value(json::field(o, "G", &p)?, &format!("{p}.G"))?;
                let ap = format!("{p}.action");
                let action = json::array(json::field(o, "action", &p)?, &ap)?
                    .iter()
                    .enumerate()
                    .map(|(k, m)| json::int_matrix(m, &format!("{ap}[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupSpec::Semidirect { a, g: Box::new(g), action })
            }
            other => Err(Error::parse(path, format!("unknown group kind \"{other}\""))),
        }
    }
}

/// Group built from a spec, together with the semidirect data when present.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub group: Arc<FiniteGroup>,
    pub semidirect: Option<Semidirect>,
}

pub fn build_group(spec: &GroupSpec, caps: &Caps) -> Result<Arc<FiniteGroup>> {
    Ok(build_group_full(spec, caps)?.group)
}

pub fn build_group_full(spec: &GroupSpec, caps: &Caps) -> Result<BuiltGroup> {
    let group = match spec {
        GroupSpec::Table(rows) => {
            if rows.len() > caps.max_group_order {
                return Err(Error::cap("table order", rows.len() as u128, caps.max_group_order as u128));
            }
            FiniteGroup::from_table(rows)?
        }
        GroupSpec::Permutations(gens) => {
            // Lists that never mention 0 are read as 1-based.
            let one_based = !gens.is_empty() && gens.iter().all(|g| g.iter().all(|&x| x >= 1));
            let gens: Vec<Vec<usize>> = if one_based {
                gens.iter().map(|g| g.iter().map(|&x| x - 1).collect()).collect()
            } else {
                gens.clone()
            };
            FiniteGroup::from_permutations(&gens, caps.max_group_order)?
        }
        GroupSpec::Abelian(moduli) => {
            if moduli.contains(&0) {
                return Err(Error::InvalidInput("cyclic factor of order 0".into()));
            }
            let factors = invariant_factors_of_cyclic(moduli);
            let g = FiniteGroup::abelian(&factors)?;
            if g.order() > caps.max_group_order {
                return Err(Error::cap("group order", g.order() as u128, caps.max_group_order as u128));
            }
            g
        }
        GroupSpec::Named(name) => named(name, caps)?,
        GroupSpec::Semidirect { a, g, action } => {
            let gg = build_group(g, caps)?;
            let ag = FiniteGroup::abelian(a)?;
            let m = a.iter().fold(1u64, |acc, &d| lcm(acc, d));
            let mats = action
                .iter()
                .map(|rows| {
                    if rows.len() != a.len() || rows.iter().any(|r| r.len() != a.len()) {
                        return Err(Error::InvalidAction(format!("action matrices must be {0}x{0}", a.len())));
                    }
                    ResidueMatrix::from_signed(m, rows)
                })
                .collect::<Result<Vec<_>>>()?;
            let sd = semidirect_from_parts(&ag, &gg, mats)?;
            return Ok(BuiltGroup { group: sd.group.clone(), semidirect: Some(sd) });
        }
    };
    Ok(BuiltGroup { group, semidirect: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_spec_is_normalized() {
        let g = build_group(&GroupSpec::parse(r#"{"abelian":[2,3,2]}"#).unwrap(), &Caps::default()).unwrap();
        assert_eq!(g.abelian_moduli(), Some(&[2u64, 6][..]));
        let g = build_group(&GroupSpec::parse(r#"{"abelian":[2,2,2]}"#).unwrap(), &Caps::default()).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.elements().all(|x| g.mul(x, x) == 0));
    }

    #[test]
    fn perms_one_based() {
        let s = GroupSpec::parse(r#"{"perm_gens":[[2,1,3],[2,3,1]]}"#).unwrap();
        assert_eq!(build_group(&s, &Caps::default()).unwrap().order(), 6);
    }

    #[test]
    fn malformed_specs_report_positions() {
        match GroupSpec::parse(r#"{"abelian":[2,"x"]}"#) {
            Err(Error::SpecParse { position, .. }) => assert_eq!(position, "$.abelian[1]"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(GroupSpec::parse("{\"abelian\": [2,"), Err(Error::SpecParse { .. })));
        assert!(matches!(GroupSpec::parse(r#"{"cube":[2]}"#), Err(Error::SpecParse { .. })));
    }

    #[test]
    fn semidirect_spec() {
        let s = GroupSpec::parse(r#"{"semidirect":{"A":{"abelian":[3]},"G":{"abelian":[2]},"action":[[[-1]]]}}"#).unwrap();
        let built = build_group_full(&s, &Caps::default()).unwrap();
        assert_eq!(built.group.order(), 6);
        assert!(built.semidirect.is_some());
    }
}
