use std::collections::BTreeSet;
use std::sync::Arc;

use anyhow::Result;
use grunwald_core::cohomology::{h1, h1_solver_cost};
use grunwald_core::gmodule::GModule;
use grunwald_core::group::{bicyclic_family, build_group, conjugacy_data, subgroups, FiniteGroup, Subgroup};
use serde_json::json;

use super::subgroup_json;
use crate::input;
use crate::report::{CrossCheck, Report};
use crate::Ctx;

/// Maximal subgroups generated by a commuting pair, found by closing every
/// pair. A subgroup is bicyclic exactly when it arises this way.
fn brute_maximal_bicyclic(g: &Arc<FiniteGroup>) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in 0..n {
        for y in x..n {
            if g.mul(x, y) == g.mul(y, x) {
                let mut c = g.closure(&[x, y]);
                c.sort_unstable();
                sets.insert(c);
            }
        }
    }
    let all: Vec<Vec<usize>> = sets.into_iter().collect();
    let contains = |big: &Vec<usize>, small: &Vec<usize>| small.iter().all(|x| big.binary_search(x).is_ok());
    let mut out: Vec<Vec<usize>> = all
        .iter()
        .filter(|h| !all.iter().any(|k| k.len() > h.len() && contains(k, h)))
        .cloned()
        .collect();
    out.sort();
    out
}

pub fn analyze(ctx: &Ctx, spec_arg: &str) -> Result<Report> {
    let (spec, spec_json) = input::group_spec(spec_arg)?;
    let mut report = Report::new("group analyze", &ctx.digest_input("group analyze", json!({ "group": spec_json })));
    let g = build_group(&spec, &ctx.caps)?;
    let whole = Subgroup::whole(&g);
    let invariants = whole.abelian_invariants();
    let bicyclic = whole.is_bicyclic();
    let subs = subgroups(&g, &ctx.caps)?;
    let family = bicyclic_family(&g, &ctx.caps)?;
    let classes = conjugacy_data(&g).classes.len();

    report.line(format!("order: {}", g.order()));
    match &invariants {
        Some(inv) => report.line(format!("abelian, invariant factors {inv:?}")),
        None => report.line("nonabelian"),
    }
    report.line(format!("bicyclic: {bicyclic}"));
    report.line(format!("subgroups: {}", subs.len()));
    report.line(format!("conjugacy classes: {classes}"));
    report.line(format!("maximal bicyclic subgroups: {}", family.len()));
    for h in &family {
        report.line(format!("  order {} generated by {:?}", h.order(), h.generators().iter().map(|&x| g.label(x)).collect::<Vec<_>>()));
    }
    report.results = json!({
        "order": g.order(),
        "abelian": invariants.is_some(),
        "abelian_invariants": invariants,
        "bicyclic": bicyclic,
        "subgroup_count": subs.len(),
        "conjugacy_class_count": classes,
        "maximal_bicyclic": family.iter().map(subgroup_json).collect::<Vec<_>>(),
    });

    if ctx.oracle {
        let n = g.order() as u128;
        if n * n * n <= ctx.caps.max_enumeration as u128 / 8 {
            let brute = brute_maximal_bicyclic(&g);
            let mut lib: Vec<Vec<usize>> = family.iter().map(|h| h.elements().to_vec()).collect();
            for h in &mut lib {
                h.sort_unstable();
            }
            lib.sort();
            let check = CrossCheck::compare(
                "maximal bicyclic subgroups",
                ("subgroup lattice", json!(lib)),
                ("commuting-pair closures", json!(brute)),
            );
            report.check(check);
        } else {
            report.check(CrossCheck::skipped("maximal bicyclic subgroups", "pair search exceeds the enumeration cap"));
        }
        // Hom(G, Z/e) ≅ G for abelian G of exponent e, computed by the
        // cocycle solver instead of element orders.
        if let Some(inv) = &invariants {
            let e = inv.last().copied().unwrap_or(1);
            let module = GModule::trivial(&g, &[e])?;
            if h1_solver_cost(&module) <= ctx.caps.solver_budget() {
                let hom = h1(&module, &ctx.caps)?;
                report.check(CrossCheck::compare(
                    "abelian invariants",
                    ("element orders", json!(inv)),
                    ("Hom(G, Z/exponent)", json!(hom.invariant_factors())),
                ));
            } else {
                report.check(CrossCheck::skipped("abelian invariants", "solver cost exceeds the budget"));
            }
        }
    }
    Ok(report)
}
