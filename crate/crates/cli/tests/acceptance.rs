//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::Instant;

use grunwald_core::cohomology::brute::{brute_h1, coboundaries, cocycles_by_generators};
use grunwald_core::cohomology::{connecting_delta, h1, pullback_map, sha_bic_formula, sha_kernel, tate_h0_subgroup};
use grunwald_core::gmodule::{augmentation_ideal, AugmentationSequence, GModule};
use grunwald_core::group::{bicyclic_family, named, subgroups, Subgroup};
use grunwald_core::local::{reoccurrence_iso, tame_realizability, LocalAction, TameLocalDatum};
use grunwald_core::nonabelian::{split_extension_catalog, twist_bijection};
use grunwald_core::samples::{catalog_up_to, random_module, random_surjection, SampleRng, SeedableRng};
use grunwald_core::zmod::gcd;
use grunwald_core::Caps;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn caps() -> Caps {
    Caps::default()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn grunwald(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grunwald")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("unparseable report: {e}"))
}

fn counterexample_p2() -> Outcome {
    let start = Instant::now();
    let out = grunwald(&["--format", "json", "counterexample", "verify", "--p", "2"]);
    let secs = start.elapsed().as_secs_f64();
    ensure(out.status.success(), format!("exit status {}", out.status))?;
    let r = json_of(&out)?;
    let res = &r["results"];
    ensure(res["sha_bic"]["order"] == 2, format!("formula order {}", res["sha_bic"]["order"]))?;
    ensure(res["restriction_route"]["sha_order"] == "2", "restriction route did not give order 2")?;
    let agreed = r["cross_checks"]
        .as_array()
        .into_iter()
        .flatten()
        .any(|c| c["name"].as_str().is_some_and(|n| n.starts_with("Ш¹_bic")) && c["verdict"] == "equal");
    ensure(agreed, "restriction and formula routes were not compared as equal")?;
    ensure(secs < 60.0, format!("took {secs:.1}s"))?;
    Ok(format!("order 2 by both routes in {secs:.2}s"))
}

fn sha_catalog() -> Outcome {
    let mut checked = Vec::new();
    let mut zero_non_p = Vec::new();
    for g in catalog_up_to(16).map_err(|e| e.to_string())? {
        if Subgroup::whole(&g).is_bicyclic() {
            continue;
        }
        let n = g.order() as u64;
        let i = augmentation_ideal(&g, n).map_err(|e| e.to_string())?;
        let coh = h1(&i, &caps()).map_err(|e| e.to_string())?;
        let family = bicyclic_family(&g, &caps()).map_err(|e| e.to_string())?;
        let k = sha_kernel(&coh, &family, &caps()).map_err(|e| e.to_string())?;
        let f = sha_bic_formula(&g, n, &caps()).map_err(|e| e.to_string())?;
        ensure(k.invariant_factors() == f.invariant_factors.as_slice(), format!("order {n}: kernel {:?} vs formula {:?}", k.invariant_factors(), f.invariant_factors))?;
        if n.is_power_of_two() {
            ensure(!f.invariant_factors.is_empty(), format!("2-group of order {n} has zero kernel"))?;
            checked.push(n);
        } else if f.invariant_factors.is_empty() {
            zero_non_p.push(n);
        }
    }
    for name in ["elementary-2-3", "dihedral-8", "quaternion-8"] {
        let g = named(name, &caps()).map_err(|e| e.to_string())?;
        ensure(!Subgroup::whole(&g).is_bicyclic(), format!("{name} unexpectedly bicyclic"))?;
    }
    ensure(checked.contains(&16), "no order-16 example")?;
    Ok(format!(
        "{} non-bicyclic 2-groups nonzero and equal to the formula; non-p-groups of orders {:?} have zero kernel by both routes",
        checked.len(),
        zero_non_p
    ))
}

fn induced_vanishing() -> Outcome {
    let mut count = 0;
    for g in catalog_up_to(12).map_err(|e| e.to_string())? {
        for m in [2u64, 3, 4, g.order() as u64] {
            let r = GModule::group_ring(&g, m).map_err(|e| e.to_string())?;
            for h in subgroups(&g, &caps()).map_err(|e| e.to_string())? {
                let c = h1(&r.restrict(&h).map_err(|e| e.to_string())?, &caps()).map_err(|e| e.to_string())?;
                ensure(c.is_trivial(), format!("nonzero H¹ for |G| = {}, |H| = {}, m = {m}", g.order(), h.order()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (group, subgroup, modulus) cases vanish"))
}

fn tate_identification() -> Outcome {
    let g = named("elementary-2-3", &caps()).map_err(|e| e.to_string())?;
    let aug = AugmentationSequence::new(&g, 8).map_err(|e| e.to_string())?;
    let subs = subgroups(&g, &caps()).map_err(|e| e.to_string())?;
    ensure(subs.len() == 16, format!("{} subgroups", subs.len()))?;
    for h in &subs {
        let t = tate_h0_subgroup(&aug.quotient, h).map_err(|e| e.to_string())?;
        let expect: Vec<u64> = if h.order() == 1 { vec![] } else { vec![h.order() as u64] };
        ensure(t.invariant_factors() == expect, format!("Ĥ⁰ {:?} for |H| = {}", t.invariant_factors(), h.order()))?;
        let d = connecting_delta(h, &aug, &caps()).map_err(|e| e.to_string())?;
        ensure(d.orders_equal && d.injective, format!("δ not bijective for |H| = {}", h.order()))?;
    }
    Ok("Ĥ⁰(H, Z/8) ≅ Z/|H| and δ bijective on all 16 subgroups".into())
}

fn cardinality_law() -> Outcome {
    const CAP: u64 = 1 << 22;
    let mut rng = SampleRng::seed_from_u64(0xacce97);
    let groups = catalog_up_to(8).map_err(|e| e.to_string())?;
    let mut nonzero = 0;
    for i in 0..100 {
        let g = &groups[i % groups.len()];
        let m = random_module(&mut rng, g, 81);
        let coh = h1(&m, &caps()).map_err(|e| e.to_string())?;
        let z = cocycles_by_generators(&m, CAP).map_err(|e| e.to_string())?.len();
        let b = coboundaries(&m, CAP).map_err(|e| e.to_string())?.len();
        ensure((coh.order() * b as u64).to_string() == z.to_string(), format!("instance {i}: |Z¹| = {z}, |B¹| = {b}, |H¹| = {}", coh.order()))?;
        let brute = brute_h1(&m, CAP).map_err(|e| e.to_string())?;
        ensure(brute.invariant_factors == coh.invariant_factors(), format!("instance {i}: invariants differ"))?;
        if !coh.is_trivial() {
            nonzero += 1;
        }
    }
    Ok(format!("100 instances exact ({nonzero} with nonzero H¹)"))
}

fn reoccurrence() -> Outcome {
    let fin = |q, n| TameLocalDatum::Finite { q, n };
    let mut pairs = 0;
    for name in ["symmetric-3", "dihedral-8", "quaternion-8"] {
        let act = LocalAction::identity(&named(name, &caps()).map_err(|e| e.to_string())?);
        for n in [4u64, 6, 8] {
            let qs: Vec<u64> = (1..=50).filter(|&q| gcd(q, n) == 1).collect();
            for &q in &qs {
                for &q2 in qs.iter().filter(|&&q2| q2 % n == q % n) {
                    let there = reoccurrence_iso(&fin(q, n), &fin(q2, n), &act, &caps()).map_err(|e| e.to_string())?;
                    let back = reoccurrence_iso(&fin(q2, n), &fin(q, n), &act, &caps()).map_err(|e| e.to_string())?;
                    ensure(there.source.len() == there.target.len() && there.bijective, format!("{name} q={q} q'={q2} n={n}"))?;
                    let round = there.map.iter().enumerate().all(|(i, &j)| back.map[j] == i);
                    ensure(round, format!("{name} q={q} q'={q2} n={n}: no round trip"))?;
                    pairs += 1;
                }
            }
        }
    }
    for n in [4u64, 6, 8] {
        let (q, q2) = (1u64, n - 1);
        let out = grunwald(&["local", "reoccur", "--q", &q.to_string(), "--q2", &q2.to_string(), "--n", &n.to_string(), "--group", "symmetric-3"]);
        let err = String::from_utf8_lossy(&out.stderr);
        ensure(out.status.code() == Some(2) && err.contains("IncongruentResidues"), format!("n = {n}: {err}"))?;
    }
    Ok(format!("{pairs} congruent pairs round-trip; incongruent pairs rejected for n = 4, 6, 8"))
}

fn twisting() -> Outcome {
    let insts = split_extension_catalog().map_err(|e| e.to_string())?;
    for inst in &insts {
        let ext = &inst.ext;
        ensure(ext.sd.group.order() <= 24 && ext.gamma().order() <= 8, format!("{} outside the bounds", inst.name))?;
        let seq = ext.sequence_maps(&caps()).map_err(|e| e.to_string())?;
        for k in &seq.e_classes.classes {
            let b = twist_bijection(&ext.act_e, &k.representative, &caps()).map_err(|e| e.to_string())?;
            ensure(b.round_trips(), format!("{}: twist bijection", inst.name))?;
        }
        for (j, k) in seq.g_classes.classes.iter().enumerate() {
            let fiber = ext.fiber_over(&k.representative, &seq.e_classes, &caps()).map_err(|e| e.to_string())?;
            ensure(fiber == seq.fiber_direct(j), format!("{}: fiber over class {j}", inst.name))?;
            let (orbits, fibers) = ext.orbit_and_fiber_partitions(&k.representative, &caps()).map_err(|e| e.to_string())?;
            ensure(orbits == fibers, format!("{}: orbit partition over class {j}", inst.name))?;
        }
    }
    Ok(format!("{} split extensions agree exhaustively", insts.len()))
}

fn pullback() -> Outcome {
    let mut rng = SampleRng::seed_from_u64(0x9b1);
    for i in 0..20 {
        let f = random_surjection(&mut rng, 16).map_err(|e| e.to_string())?;
        ensure(f.is_surjective() && f.source().order() <= 16, format!("surjection {i} malformed"))?;
        let m = random_module(&mut rng, f.target(), 81);
        let coh = h1(&m, &caps()).map_err(|e| e.to_string())?;
        let (_, map) = pullback_map(&f, &coh, &caps()).map_err(|e| e.to_string())?;
        ensure(map.is_injective().map_err(|e| e.to_string())?, format!("surjection {i}: not injective"))?;
    }
    Ok("20 surjections give injective pullbacks".into())
}

fn tame_realizability_check() -> Outcome {
    let g = named("elementary-2-3", &caps()).map_err(|e| e.to_string())?;
    let act = LocalAction::identity(&g);
    let mut data = vec![TameLocalDatum::Real, TameLocalDatum::Complex];
    for n in 1..=12u64 {
        data.extend((2..40).filter(|&q| gcd(q, n) == 1).take(2).map(|q| TameLocalDatum::Finite { q, n }));
    }
    data.truncate(20);
    ensure(data.len() == 20, "sweep too short")?;
    for d in &data {
        let r = tame_realizability(d, &act, &caps()).map_err(|e| e.to_string())?;
        ensure(!r.realizable, format!("{d} realizes (Z/2)^3"))?;
    }
    let s3 = named("symmetric-3", &caps()).map_err(|e| e.to_string())?;
    let act = LocalAction::identity(&s3);
    for q in [5u64, 11, 17, 23] {
        let d = TameLocalDatum::Finite { q, n: 6 };
        let r = tame_realizability(&d, &act, &caps()).map_err(|e| e.to_string())?;
        let w = r.witness.ok_or(format!("{d}: no witness"))?;
        let relation = s3.pow(w.t, 6) == 0 && s3.mul(s3.mul(w.s, w.t), s3.inv(w.s)) == s3.pow(w.t, q);
        ensure(r.realizable && relation && s3.closure(&[w.s, w.t]).len() == 6, format!("{d}: bad witness"))?;
    }
    Ok("(Z/2)^3 unrealized over 20 data; S3 realized with verified witnesses for q ≡ 5 mod 6".into())
}

fn determinism() -> Outcome {
    let runs: Vec<Vec<&str>> = vec![
        vec!["group", "analyze", "{\"abelian\":[2,2,2]}"],
        vec!["group", "analyze", "dihedral-8"],
        vec!["sha-bic", "--group", "quaternion-8", "--module", "{\"builtin\":\"augmentation_ideal\",\"m\":8}"],
        vec!["counterexample", "verify", "--p", "2"],
        vec!["local", "h1", "--q", "7", "--n", "6", "--group", "symmetric-3"],
        vec!["local", "reoccur", "--q", "3", "--q2", "11", "--n", "8", "--group", "dihedral-8"],
        vec!["local", "realizable", "--q", "5", "--n", "6", "--group", "symmetric-3"],
    ];
    for args in &runs {
        for format in ["text", "json"] {
            let mut full = vec!["--format", format];
            full.extend(args.iter().copied());
            let a = grunwald(&full);
            let b = grunwald(&full);
            ensure(a.status.success(), format!("{args:?} failed"))?;
            let (a, b) = (String::from_utf8_lossy(&a.stdout), String::from_utf8_lossy(&b.stdout));
            let ma = grunwald_cli::machine_section(&a).ok_or("no machine section")?;
            let mb = grunwald_cli::machine_section(&b).ok_or("no machine section")?;
            ensure(!ma.is_empty() && ma == mb, format!("{args:?} ({format}) differs between runs"))?;
        }
    }
    Ok(format!("{} commands identical across runs in both formats", runs.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "counterexample at p = 2", counterexample_p2),
        (2, "Ш¹_bic formula across the catalog", sha_catalog),
        (3, "induced-module vanishing", induced_vanishing),
        (4, "Tate identification and δ", tate_identification),
        (5, "cardinality law", cardinality_law),
        (6, "reoccurrence", reoccurrence),
        (7, "twisting machinery", twisting),
        (8, "pullback injectivity", pullback),
        (9, "tame non-realizability", tame_realizability_check),
        (10, "report determinism", determinism),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {why} [{secs:.2}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
