pub mod counterexample;
pub mod group;
pub mod local;
pub mod sha;

use std::sync::Arc;

use grunwald_core::cohomology::AbelianCocycle;
use grunwald_core::group::{FiniteGroup, Subgroup};
use serde_json::Value;

/// A cocycle as an explicit table of `[label, value]` pairs in index order.
pub(crate) fn cocycle_table(group: &Arc<FiniteGroup>, a: &AbelianCocycle) -> Value {
    Value::Array(a.values.iter().enumerate().map(|(x, v)| serde_json::json!([group.label(x), v])).collect())
}

pub(crate) fn subgroup_json(h: &Subgroup) -> Value {
    let g = h.parent();
    serde_json::json!({
        "order": h.order(),
        "generators": h.generators().iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
        "invariants": h.abelian_invariants(),
    })
}
