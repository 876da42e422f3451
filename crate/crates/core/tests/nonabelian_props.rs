use grunwald_core::nonabelian::{
    is_cocycle, nab_cocycles, nab_cocycles_by_tables, split_extension_catalog, twist_bijection,
};
use grunwald_core::Caps;

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn cocycles_agree_with_table_search_and_satisfy_the_identity() {
    for inst in split_extension_catalog().unwrap() {
        let act = &inst.ext.act_e;
        let by_gens = nab_cocycles(act, &caps()).unwrap();
        for a in &by_gens {
            assert!(is_cocycle(act, a), "{}", inst.name);
        }
        if act.target().order().pow(act.gamma().order() as u32 - 1) <= 1 << 16 {
            assert_eq!(by_gens, nab_cocycles_by_tables(act, &caps()).unwrap(), "{}", inst.name);
        }
    }
}

#[test]
fn twist_bijection_round_trips_on_every_class() {
    for inst in split_extension_catalog().unwrap() {
        let act = &inst.ext.act_e;
        let seq = inst.ext.sequence_maps(&caps()).unwrap();
        for k in &seq.e_classes.classes {
            let b = twist_bijection(act, &k.representative, &caps()).unwrap();
            assert!(b.round_trips(), "{}", inst.name);
        }
    }
}

#[test]
fn fibers_partition_and_match_direct_enumeration() {
    for inst in split_extension_catalog().unwrap() {
        let ext = &inst.ext;
        let seq = ext.sequence_maps(&caps()).unwrap();
        let mut seen = vec![false; seq.e_classes.len()];
        for (j, k) in seq.g_classes.classes.iter().enumerate() {
            let fiber = ext.fiber_over(&k.representative, &seq.e_classes, &caps()).unwrap();
            assert_eq!(fiber, seq.fiber_direct(j), "{}", inst.name);
            for e in fiber {
                assert!(!seen[e], "{}: fibers overlap", inst.name);
                seen[e] = true;
            }
        }
        assert!(seen.iter().all(|&x| x), "{}: fibers do not cover", inst.name);
        for (j, &k) in seq.s_star.iter().enumerate() {
            assert_eq!(seq.pi_star[k], j, "{}", inst.name);
        }
    }
}

#[test]
fn h0_orbits_are_the_fibers_of_iota() {
    for inst in split_extension_catalog().unwrap() {
        let ext = &inst.ext;
        let seq = ext.sequence_maps(&caps()).unwrap();
        for k in &seq.g_classes.classes {
            let (orbits, fibers) = ext.orbit_and_fiber_partitions(&k.representative, &caps()).unwrap();
            assert_eq!(orbits, fibers, "{}", inst.name);
        }
    }
}

#[test]
fn abelian_and_nonabelian_counts_agree_on_a() {
    use grunwald_core::nonabelian::nab_h1;
    use num_bigint::BigUint;
    for inst in split_extension_catalog().unwrap() {
        let seq = inst.ext.sequence_maps(&caps()).unwrap();
        let nab = nab_h1(&inst.ext.act_a, &caps()).unwrap();
        assert_eq!(seq.h1_a.order(), BigUint::from(nab.len()), "{}", inst.name);
    }
}
