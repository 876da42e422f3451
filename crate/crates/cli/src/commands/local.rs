use std::collections::BTreeSet;
use std::sync::Arc;

use anyhow::{bail, Result};
use grunwald_core::group::{build_group, FiniteGroup};
use grunwald_core::local::{
    local_cocycles, local_h1, reoccurrence_iso, tame_realizability, LocalAction, LocalClass, TameLocalDatum,
};
use serde_json::{json, Value};

use crate::args::{LocalArgs, ReoccurArgs};
use crate::input;
use crate::report::{CrossCheck, Report};
use crate::Ctx;

fn datum_of(datum: &Option<String>, q: Option<u64>, n: Option<u64>, which: &str) -> Result<TameLocalDatum> {
    match (datum, q, n) {
        (Some(d), _, _) => input::datum(d),
        (None, Some(q), Some(n)) => Ok(TameLocalDatum::Finite { q, n }),
        _ => bail!("{which}: give a datum or both q and n"),
    }
}

fn setup(ctx: &Ctx, group: &str, action: Option<&str>) -> Result<(Arc<FiniteGroup>, LocalAction, Value, Value)> {
    let (gspec, gjson) = input::group_spec(group)?;
    let (aspec, ajson) = input::action(action)?;
    let g = build_group(&gspec, &ctx.caps)?;
    let act = aspec.build(&g)?;
    Ok((g, act, gjson, ajson))
}

fn class_json(g: &FiniteGroup, c: &LocalClass) -> Value {
    json!({ "s": g.label(c.s), "t": g.label(c.t), "unramified": c.is_unramified() })
}

/// Pairs satisfying the defining relations, checked by repeated
/// multiplication rather than powering.
fn brute_pairs(d: &TameLocalDatum, act: &LocalAction) -> Vec<(usize, usize)> {
    let g = act.group();
    let power = |x: usize, k: u64| (0..k).fold(0, |acc, _| g.mul(acc, x));
    let mut out = Vec::new();
    for s in g.elements() {
        for t in g.elements() {
            let ok = match *d {
                TameLocalDatum::Finite { q, n } => {
                    power(t, n) == 0 && g.mul(g.mul(s, act.apply(t)), g.inv(s)) == power(t, q % n)
                }
                TameLocalDatum::Real => t == 0 && g.mul(s, act.apply(s)) == 0,
                TameLocalDatum::Complex => s == 0 && t == 0,
            };
            if ok {
                out.push((s, t));
            }
        }
    }
    out
}

/// Orbit count by Burnside's lemma over the brute-force cocycle list.
fn burnside_count(act: &LocalAction, pairs: &[(usize, usize)]) -> usize {
    let g = act.group();
    let fixed: usize = g
        .elements()
        .map(|x| {
            pairs
                .iter()
                .filter(|&&(s, t)| g.mul(g.mul(x, s), g.inv(act.apply(x))) == s && g.conjugate(x, t) == t)
                .count()
        })
        .sum();
    fixed / g.order()
}

fn oracle_fits(ctx: &Ctx, g: &FiniteGroup) -> bool {
    let n = g.order() as u128;
    n * n * n <= ctx.caps.max_enumeration as u128
}

pub fn h1(ctx: &Ctx, a: &LocalArgs) -> Result<Report> {
    let d = datum_of(&a.datum, a.q, a.n, "datum")?;
    let (g, act, gjson, ajson) = setup(ctx, &a.group, a.action.as_deref())?;
    let mut report = Report::new(
        "local h1",
        &ctx.digest_input("local h1", json!({ "datum": d, "group": gjson, "action": ajson })),
    );
    let classes = local_h1(&d, &act, &ctx.caps)?;
    let cocycles = local_cocycles(&d, &act, &ctx.caps)?;
    let unramified = classes.iter().filter(|c| c.is_unramified()).count();
    report.line(format!("datum {d}, group of order {}", g.order()));
    report.line(format!("{} cocycles, {} classes, {} unramified", cocycles.len(), classes.len(), unramified));
    for c in &classes {
        report.line(format!("  (s, t) = ({}, {})", g.label(c.s), g.label(c.t)));
    }
    if ctx.oracle {
        if oracle_fits(ctx, &g) {
            let pairs = brute_pairs(&d, &act);
            report.check(CrossCheck::compare(
                "cocycle count",
                ("library enumeration", json!(cocycles.len())),
                ("relation check on all pairs", json!(pairs.len())),
            ));
            report.check(CrossCheck::compare(
                "class count",
                ("canonical representatives", json!(classes.len())),
                ("Burnside count", json!(burnside_count(&act, &pairs))),
            ));
        } else {
            report.check(CrossCheck::skipped("class count", "Burnside count exceeds the enumeration cap"));
        }
    }
    report.results = json!({
        "datum": d,
        "group_order": g.order(),
        "cocycle_count": cocycles.len(),
        "class_count": classes.len(),
        "unramified_count": unramified,
        "classes": classes.iter().map(|c| class_json(&g, c)).collect::<Vec<_>>(),
    });
    Ok(report)
}

pub fn reoccur(ctx: &Ctx, a: &ReoccurArgs) -> Result<Report> {
    let d_v = datum_of(&a.datum, a.q, a.n, "source datum")?;
    let d_w = datum_of(&a.datum2, a.q2, a.n, "target datum")?;
    let (g, act, gjson, ajson) = setup(ctx, &a.group, a.action.as_deref())?;
    let mut report = Report::new(
        "local reoccur",
        &ctx.digest_input("local reoccur", json!({ "source": d_v, "target": d_w, "group": gjson, "action": ajson })),
    );
    let fwd = reoccurrence_iso(&d_v, &d_w, &act, &ctx.caps)?;
    report.line(format!("{d_v} -> {d_w}: {} -> {} classes", fwd.source.len(), fwd.target.len()));
    report.line(format!("injective: {}, bijective: {}", fwd.injective, fwd.bijective));
    let mut results = json!({
        "source": d_v,
        "target": d_w,
        "source_classes": fwd.source.iter().map(|c| class_json(&g, c)).collect::<Vec<_>>(),
        "target_classes": fwd.target.iter().map(|c| class_json(&g, c)).collect::<Vec<_>>(),
        "map": fwd.map,
        "injective": fwd.injective,
        "bijective": fwd.bijective,
    });
    if ctx.oracle {
        if oracle_fits(ctx, &g) {
            let count = |d| burnside_count(&act, &brute_pairs(d, &act));
            report.check(CrossCheck::compare(
                "class counts",
                ("source Burnside count", json!(count(&d_v))),
                ("target Burnside count", json!(count(&d_w))),
            ));
        } else {
            report.check(CrossCheck::skipped("class counts", "Burnside count exceeds the enumeration cap"));
        }
    }
    // The reverse comparison exists only between finite data.
    if matches!((d_v, d_w), (TameLocalDatum::Finite { .. }, TameLocalDatum::Finite { .. })) {
        let back = reoccurrence_iso(&d_w, &d_v, &act, &ctx.caps)?;
        let round: Vec<usize> = fwd.map.iter().map(|&i| back.map[i]).collect();
        let identity: Vec<usize> = (0..fwd.source.len()).collect();
        report.check(CrossCheck::compare("round trip", ("backward after forward", json!(round)), ("identity", json!(identity))));
        results["round_trip_identity"] = json!(round == identity);
    }
    report.results = results;
    Ok(report)
}

pub fn realizable(ctx: &Ctx, a: &LocalArgs) -> Result<Report> {
    let d = datum_of(&a.datum, a.q, a.n, "datum")?;
    let (g, act, gjson, ajson) = setup(ctx, &a.group, a.action.as_deref())?;
    let mut report = Report::new(
        "local realizable",
        &ctx.digest_input("local realizable", json!({ "datum": d, "group": gjson, "action": ajson })),
    );
    let r = tame_realizability(&d, &act, &ctx.caps)?;
    report.line(format!("datum {d}, group of order {}: realizable {}", g.order(), r.realizable));
    if let Some(w) = &r.witness {
        report.line(format!("witness (s, t) = ({}, {})", g.label(w.s), g.label(w.t)));
    }
    if ctx.oracle {
        if oracle_fits(ctx, &g) {
            let pairs = brute_pairs(&d, &act);
            // Generation checked by a BFS of our own over right multiplication.
            let generates = |s: usize, t: usize| {
                let mut seen = BTreeSet::from([0usize]);
                let mut stack = vec![0usize];
                while let Some(x) = stack.pop() {
                    for y in [g.mul(x, s), g.mul(x, t)] {
                        if seen.insert(y) {
                            stack.push(y);
                        }
                    }
                }
                seen.len() == g.order()
            };
            let brute = pairs.iter().any(|&(s, t)| generates(s, t));
            report.check(CrossCheck::compare(
                "realizable",
                ("library scan", json!(r.realizable)),
                ("brute pair search", json!(brute)),
            ));
            if let Some(w) = &r.witness {
                let ok = pairs.binary_search(&(w.s, w.t)).is_ok() && generates(w.s, w.t);
                report.check(CrossCheck::compare("witness", ("cocycle that generates", json!(ok)), ("expected", json!(true))));
            }
        } else {
            report.check(CrossCheck::skipped("realizable", "pair search exceeds the enumeration cap"));
        }
    }
    report.results = json!({
        "datum": d,
        "group_order": g.order(),
        "realizable": r.realizable,
        "witness": r.witness.map(|w| json!({ "s": g.label(w.s), "t": g.label(w.t), "canonical": w.canonical })),
    });
    Ok(report)
}
