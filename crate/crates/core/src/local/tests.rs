use std::sync::Arc;

use super::*;
use crate::group::{catalog, conjugacy_data};

fn caps() -> Caps {
    Caps::default()
}

fn named(name: &str) -> Arc<FiniteGroup> {
    catalog::named(name, &caps()).unwrap()
}

fn fin(q: u64, n: u64) -> TameLocalDatum {
    TameLocalDatum::Finite { q, n }
}

/// Orbit count by Burnside's lemma over the raw cocycle pairs.
fn burnside(d: &TameLocalDatum, act: &LocalAction) -> usize {
    let pairs = local_cocycles(d, act, &caps()).unwrap();
    let g = act.group();
    let fixed: usize = g
        .elements()
        .map(|x| pairs.iter().filter(|&&(s, t)| equivalent(act, x, s, t) == (s, t)).count())
        .sum();
    assert_eq!(fixed % g.order(), 0);
    fixed / g.order()
}

#[test]
fn real_z2_has_two_classes() {
    let act = LocalAction::identity(&named("cyclic-2"));
    assert_eq!(local_h1(&TameLocalDatum::Real, &act, &caps()).unwrap().len(), 2);
    let cx = local_h1(&TameLocalDatum::Complex, &act, &caps()).unwrap();
    assert_eq!(cx, vec![LocalClass { s: 0, t: 0, canonical: true }]);
}

#[test]
fn s3_with_q_one_mod_six() {
    let act = LocalAction::identity(&named("symmetric-3"));
    for q in [1, 7, 13, 43] {
        let classes = local_h1(&fin(q, 6), &act, &caps()).unwrap();
        assert_eq!(classes.len(), 8);
        assert_eq!(burnside(&fin(q, 6), &act), 8);
        assert_eq!(unramified_classes(&fin(q, 6), &act, &caps()).unwrap().len(), 3);
    }
    assert_eq!(local_h1(&fin(2, 6), &act, &caps()), Err(Error::NotTame { q: 2, n: 6 }));
}

#[test]
fn classes_match_burnside_across_catalog() {
    for name in ["symmetric-3", "dihedral-8", "quaternion-8", "alternating-4", "cyclic-6", "klein-4"] {
        let act = LocalAction::identity(&named(name));
        for d in [fin(1, 4), fin(3, 4), fin(5, 6), fin(3, 8), fin(7, 12), TameLocalDatum::Real] {
            let n = local_h1(&d, &act, &caps()).unwrap().len();
            assert_eq!(n, burnside(&d, &act), "{name} {d}");
        }
    }
}

#[test]
fn nonconstant_action() {
    // σ acts on Z/3 by inversion; real kind needs s α(s) = s - s = 0, so
    // every s is a cocycle and s ~ s + 2g leaves one class.
    let g = named("cyclic-3");
    let act = LocalAction::from_generator_images(&g, &[2]).unwrap();
    assert_eq!(local_h1(&TameLocalDatum::Real, &act, &caps()).unwrap().len(), 1);
    let d = fin(5, 3);
    assert_eq!(local_h1(&d, &act, &caps()).unwrap().len(), burnside(&d, &act));
    assert!(LocalAction::from_generator_images(&g, &[0]).is_err());
}

#[test]
fn depends_only_on_q_mod_n() {
    for name in ["symmetric-3", "dihedral-8", "quaternion-8"] {
        let act = LocalAction::identity(&named(name));
        for n in [4u64, 6, 8] {
            for q in (1..n).filter(|&q| gcd(q, n) == 1) {
                assert_eq!(
                    local_h1(&fin(q, n), &act, &caps()).unwrap(),
                    local_h1(&fin(q + n, n), &act, &caps()).unwrap()
                );
            }
        }
    }
}

#[test]
fn unramified_classes_are_conjugacy_classes() {
    for name in catalog::catalog_names() {
        let g = named(name);
        if g.order() > 48 {
            continue;
        }
        let act = LocalAction::identity(&g);
        let k = conjugacy_data(&g).classes.len();
        assert_eq!(unramified_classes(&fin(1, 2), &act, &caps()).unwrap().len(), k, "{name}");
    }
    let act = LocalAction::identity(&named("symmetric-3"));
    assert_eq!(unramified_classes(&TameLocalDatum::Complex, &act, &caps()).unwrap().len(), 1);
}

#[test]
fn reoccurrence_examples() {
    let act = LocalAction::identity(&named("dihedral-8"));
    let same = reoccurrence_iso(&fin(3, 8), &fin(3, 8), &act, &caps()).unwrap();
    assert_eq!(same.map, (0..same.source.len()).collect::<Vec<_>>());

    let r = reoccurrence_iso(&fin(3, 8), &fin(11, 8), &act, &caps()).unwrap();
    assert!(r.bijective);
    let back = reoccurrence_iso(&fin(11, 8), &fin(3, 8), &act, &caps()).unwrap();
    for (i, &j) in r.map.iter().enumerate() {
        assert_eq!(back.map[j], i);
    }
    let s3 = LocalAction::identity(&named("symmetric-3"));
    assert_eq!(
        reoccurrence_iso(&fin(1, 6), &fin(5, 6), &s3, &caps()).unwrap_err(),
        Error::IncongruentResidues { q_v: 1, q_w: 5, n: 6 }
    );
}

#[test]
fn real_source_injects() {
    let act = LocalAction::identity(&named("dihedral-8"));
    let r = reoccurrence_iso(&TameLocalDatum::Real, &fin(7, 8), &act, &caps()).unwrap();
    assert!(r.injective);
    assert!(!r.bijective);
    assert!(matches!(
        reoccurrence_iso(&TameLocalDatum::Real, &fin(3, 8), &act, &caps()),
        Err(Error::IncongruentResidues { .. })
    ));
    assert!(matches!(
        reoccurrence_iso(&fin(7, 8), &TameLocalDatum::Real, &act, &caps()),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn realizability_examples() {
    let z2 = LocalAction::identity(&named("cyclic-2"));
    for q in [1, 3, 5, 7] {
        assert!(tame_realizability(&fin(q, 8), &z2, &caps()).unwrap().realizable);
    }
    let e8 = LocalAction::identity(&named("elementary-2-3"));
    for n in [1u64, 3, 5, 15] {
        for q in [2u64, 4, 7, 8] {
            if gcd(q, n) == 1 {
                assert!(!tame_realizability(&fin(q, n), &e8, &caps()).unwrap().realizable);
            }
        }
    }
    let s3 = named("symmetric-3");
    let act = LocalAction::identity(&s3);
    for q in [5, 11, 17] {
        let r = tame_realizability(&fin(q, 6), &act, &caps()).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(s3.element_order(w.s), 2);
        assert_eq!(s3.element_order(w.t), 3);
        assert_eq!(s3.conjugate(w.s, w.t), s3.inv(w.t));
        assert_eq!(s3.closure(&[w.s, w.t]).len(), 6);
    }
    // q = 1 forces s and t to commute, which cannot generate S3.
    assert!(!tame_realizability(&fin(1, 6), &act, &caps()).unwrap().realizable);
}

#[test]
fn datum_grammar() {
    assert_eq!(TameLocalDatum::parse(r#"{"kind":"finite","q":7,"n":6}"#).unwrap(), fin(7, 6));
    assert_eq!(TameLocalDatum::parse(r#"{"kind":"real"}"#).unwrap(), TameLocalDatum::Real);
    assert_eq!(TameLocalDatum::parse(r#"{"kind":"complex"}"#).unwrap(), TameLocalDatum::Complex);
    assert!(matches!(TameLocalDatum::parse(r#"{"kind":"real","q":1}"#), Err(Error::SpecParse { .. })));
    assert!(matches!(TameLocalDatum::parse(r#"{"kind":"finite","q":7}"#), Err(Error::SpecParse { .. })));
    assert!(matches!(TameLocalDatum::parse(r#"{"kind":"#), Err(Error::SpecParse { .. })));
    let d = fin(3, 8);
    assert_eq!(TameLocalDatum::parse(&d.to_json()).unwrap(), d);
    assert_eq!(LocalActionSpec::parse(r#"{"identity":true}"#).unwrap(), LocalActionSpec::Identity);
    assert_eq!(LocalActionSpec::parse(r#"{"conjugation":1}"#).unwrap(), LocalActionSpec::Conjugation(1));
    assert!(LocalActionSpec::parse(r#"{"identity":true,"conjugation":1}"#).is_err());
}
