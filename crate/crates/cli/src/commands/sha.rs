use anyhow::Result;
use grunwald_core::cohomology::{brute::brute_h1, h1, sha_bic_formula, sha_kernel};
use grunwald_core::gmodule::{build_module, ModuleSpec};
use grunwald_core::group::{bicyclic_family, build_group, Subgroup};
use grunwald_core::Error;
use serde_json::json;

use super::{cocycle_table, subgroup_json};
use crate::input;
use crate::report::{CrossCheck, Report};
use crate::Ctx;

pub fn sha_bic(ctx: &Ctx, group_arg: &str, module_arg: &str) -> Result<Report> {
    let (gspec, gjson) = input::group_spec(group_arg)?;
    let (mspec, mjson) = input::module_spec(module_arg)?;
    let mut report =
        Report::new("sha-bic", &ctx.digest_input("sha-bic", json!({ "group": gjson, "module": mjson })));
    let g = build_group(&gspec, &ctx.caps)?;
    let module = build_module(&mspec, &g)?;
    let coh = h1(&module, &ctx.caps)?;
    let family = bicyclic_family(&g, &ctx.caps)?;
    let sha = sha_kernel(&coh, &family, &ctx.caps)?;
    let bicyclic = Subgroup::whole(&g).is_bicyclic();

    report.line(format!("group order {}, module {} of order {}", g.order(), module.origin(), module.order()));
    report.line(format!("H¹ invariant factors: {:?}", coh.invariant_factors()));
    report.line(format!("maximal bicyclic subgroups: {}", family.len()));
    report.line(format!("Ш¹_bic invariant factors: {:?} (order {})", sha.invariant_factors(), sha.structure.order()));
    if bicyclic {
        report.notes.push("G is bicyclic, so it belongs to its own family and Ш¹_bic vanishes".into());
    }
    let witnesses: Vec<_> = sha
        .witnesses
        .iter()
        .zip(&sha.witness_coordinates)
        .map(|(w, c)| json!({ "h1_coordinates": c, "values": cocycle_table(&g, w) }))
        .collect();
    let mut results = json!({
        "group_order": g.order(),
        "module": { "origin": module.origin(), "moduli": module.moduli() },
        "group_is_bicyclic": bicyclic,
        "h1_invariants": coh.invariant_factors(),
        "family": family.iter().map(subgroup_json).collect::<Vec<_>>(),
        "sha_invariants": sha.invariant_factors(),
        "sha_order": sha.structure.order().to_string(),
        "witnesses": witnesses,
    });

    if let ModuleSpec::AugmentationIdeal { m } = mspec {
        let formula = sha_bic_formula(&g, m, &ctx.caps)?;
        report.line(format!("formula kernel: {:?}", formula.invariant_factors));
        report.check(CrossCheck::compare(
            "Ш¹_bic invariant factors",
            ("restriction kernels", json!(sha.invariant_factors())),
            ("diagonal reduction formula", json!(formula.invariant_factors)),
        ));
        results["formula"] = serde_json::to_value(&formula)?;
    }

    if ctx.oracle {
        match brute_h1(&module, ctx.caps.max_enumeration) {
            Ok(b) => report.check(CrossCheck::compare(
                "H¹ invariant factors",
                ("linear solver", json!(coh.invariant_factors())),
                ("cocycle enumeration", json!(b.invariant_factors)),
            )),
            Err(Error::CapExceeded { .. }) => {
                report.check(CrossCheck::skipped("H¹ invariant factors", "enumeration exceeds the cap"))
            }
            Err(e) => return Err(e.into()),
        }
    }
    report.results = results;
    Ok(report)
}
