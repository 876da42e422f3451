use num_bigint::BigUint;

use super::brute::{brute_h1, brute_tate_h0, cocycles_by_tables};
use super::*;
use crate::caps::Caps;
use crate::gmodule::{augmentation_ideal, AugmentationSequence, GModule};
use crate::group::{bicyclic_family, named, subgroups, GroupHom, Subgroup};

fn caps() -> Caps {
    Caps::default()
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn trivial_action_h1_is_hom() {
    let c2 = named("cyclic-2", &caps()).unwrap();
    let a = GModule::trivial(&c2, &[4]).unwrap();
    let h = h1(&a, &caps()).unwrap();
    assert_eq!(h.invariant_factors(), &[2]);
    assert_eq!(h.cocycle_order(), &big(2));
    assert_eq!(h.coboundary_order(), &big(1));
}

#[test]
fn augmentation_ideal_of_cyclic_two() {
    let c2 = named("cyclic-2", &caps()).unwrap();
    let i = augmentation_ideal(&c2, 2).unwrap();
    let h = h1(&i, &caps()).unwrap();
    assert_eq!(h.invariant_factors(), &[2]);
    // The class g -> 1 + g, i.e. value 1 in the basis b_g = g - 1.
    let a = AbelianCocycle { values: vec![vec![0], vec![1]] };
    assert!(a.is_cocycle(&i));
    assert!(!h.is_zero_class(&a));
    let all = cocycles_by_tables(&i, 1 << 10).unwrap();
    assert_eq!(all.len(), 2);
    assert_eq!(brute_h1(&i, 1 << 10).unwrap().invariant_factors, vec![2]);
}

#[test]
fn counterexample_ideal_h1() {
    let g = named("elementary-2-3", &caps()).unwrap();
    let i = augmentation_ideal(&g, 8).unwrap();
    let h = h1(&i, &caps()).unwrap();
    assert_eq!(h.invariant_factors(), &[8]);
    let b = GModule::trivial(&g, &[8]).unwrap();
    assert_eq!(tate_h0(&b).unwrap().invariant_factors(), &[8]);
    for gen in h.generators() {
        assert!(gen.is_cocycle(&i));
    }
    assert_eq!(h.cocycle_order(), &(h.order() * h.coboundary_order()));
}

#[test]
fn tate_h0_examples() {
    let g = named("elementary-2-3", &caps()).unwrap();
    let b = GModule::trivial(&g, &[8]).unwrap();
    for h in subgroups(&g, &caps()).unwrap() {
        let t = tate_h0_subgroup(&b, &h).unwrap();
        assert_eq!(t.order(), big(h.order() as u64));
    }
    let s3 = named("symmetric-3", &caps()).unwrap();
    let r = GModule::group_ring(&s3, 6).unwrap();
    assert!(tate_h0(&r).unwrap().is_trivial());
    let b = GModule::trivial(&s3, &[4]).unwrap();
    assert_eq!(tate_h0(&b).unwrap().invariant_factors(), &[2]);
    assert!(tate_h0_subgroup(&b, &Subgroup::trivial(&s3)).unwrap().is_trivial());
}

#[test]
fn solver_matches_enumeration() {
    let cases: Vec<GModule> = vec![
        augmentation_ideal(&named("cyclic-3", &caps()).unwrap(), 3).unwrap(),
        augmentation_ideal(&named("klein-4", &caps()).unwrap(), 2).unwrap(),
        GModule::group_ring(&named("cyclic-2", &caps()).unwrap(), 4).unwrap(),
        augmentation_ideal(&named("symmetric-3", &caps()).unwrap(), 2).unwrap(),
        augmentation_ideal(&named("cyclic-4", &caps()).unwrap(), 2).unwrap().cartier_dual().unwrap(),
    ];
    for a in cases {
        let s = h1(&a, &caps()).unwrap();
        let b = brute_h1(&a, 1 << 20).unwrap();
        assert_eq!(s.invariant_factors(), &b.invariant_factors[..], "{a:?}");
        assert_eq!(s.cocycle_order(), &big(b.numerator as u64));
        assert_eq!(s.coboundary_order(), &big(b.denominator as u64));
        let t = tate_h0(&a).unwrap();
        let bt = brute_tate_h0(&a, 1 << 20).unwrap();
        assert_eq!(t.invariant_factors(), &bt.invariant_factors[..]);
    }
}

#[test]
fn mixed_moduli_module() {
    // Z/2 + Z/4 with the generator of Z/2 acting by (x, y) -> (x, y + 2x).
    let c2 = named("cyclic-2", &caps()).unwrap();
    let m = crate::zmod::ResidueMatrix::from_rows(4, 2, &[[1u64, 2], [0, 1]]).unwrap();
    let a = GModule::new(&c2, &[2, 4], vec![m]).unwrap();
    let s = h1(&a, &caps()).unwrap();
    let b = brute_h1(&a, 1 << 20).unwrap();
    assert_eq!(s.invariant_factors(), &b.invariant_factors[..]);
    assert_eq!(s.cocycle_order(), &big(b.numerator as u64));
}

#[test]
fn normal_form_separates_classes() {
    let g = named("klein-4", &caps()).unwrap();
    let a = augmentation_ideal(&g, 4).unwrap();
    let h = h1(&a, &caps()).unwrap();
    let z = brute::cocycles_by_generators(&a, 1 << 20).unwrap();
    let bset = brute::coboundaries(&a, 1 << 20).unwrap();
    for x in z.iter().step_by(7).take(40) {
        for y in z.iter().step_by(11).take(40) {
            let diff = x.add(&y.scale(3, &a), &a);
            let same = bset.contains(&diff);
            assert_eq!(h.normal_form(x) == h.normal_form(y), same);
            assert_eq!(h.coordinates(x).unwrap() == h.coordinates(y).unwrap(), same);
        }
    }
}

#[test]
fn restriction_examples() {
    let g = named("elementary-2-3", &caps()).unwrap();
    let i = augmentation_ideal(&g, 8).unwrap();
    let h = h1(&i, &caps()).unwrap();
    let (whole, id) = restriction_map(&h, &Subgroup::whole(&g), &caps()).unwrap();
    assert_eq!(whole.invariant_factors(), h.invariant_factors());
    assert_eq!(id.images, vec![vec![1]]);
    let (_, zero) = restriction_map(&h, &Subgroup::trivial(&g), &caps()).unwrap();
    assert!(zero.is_zero());
    let four = subgroups(&g, &caps()).unwrap().into_iter().find(|k| k.order() == 4).unwrap();
    let (target, map) = restriction_map(&h, &four, &caps()).unwrap();
    assert_eq!(target.invariant_factors(), &[4]);
    // Surjective: the image of the generator generates Z/4.
    assert_eq!(crate::zmod::gcd(map.images[0][0], 4), 1);
}

#[test]
fn restriction_is_transitive() {
    let g = named("dihedral-8", &caps()).unwrap();
    let a = augmentation_ideal(&g, 4).unwrap();
    let h = h1(&a, &caps()).unwrap();
    let subs = subgroups(&g, &caps()).unwrap();
    for big_h in subs.iter().filter(|x| x.order() == 4) {
        for k in subs.iter().filter(|x| x.order() == 2 && x.is_subgroup_of(big_h)) {
            let (hh, to_h) = restriction_map(&h, big_h, &caps()).unwrap();
            let (_, direct) = restriction_map(&h, k, &caps()).unwrap();
            let (hg, incl) = big_h.to_group().unwrap();
            let k_local: Vec<usize> =
                k.elements().iter().map(|&x| hg.elements().find(|&y| incl.apply(y) == x).unwrap()).collect();
            let k_in_h = Subgroup::from_elements(&hg, &k_local).unwrap();
            let (_, second) = restriction_map(&hh, &k_in_h, &caps()).unwrap();
            let composite = to_h.then(&second).unwrap();
            for c in 0..h.invariant_factors().first().copied().unwrap_or(1) {
                let coords: Vec<u64> = h.invariant_factors().iter().map(|_| c).collect();
                assert_eq!(composite.apply(&coords), direct.apply(&coords));
            }
        }
    }
}

#[test]
fn pullback_examples() {
    let c4 = named("cyclic-4", &caps()).unwrap();
    let c2 = named("cyclic-2", &caps()).unwrap();
    let a = GModule::trivial(&c2, &[2]).unwrap();
    let h = h1(&a, &caps()).unwrap();
    let (_, id) = pullback_map(&GroupHom::identity(&c2), &h, &caps()).unwrap();
    assert_eq!(id.images, vec![vec![1]]);
    let f = GroupHom::from_generator_images(&c4, &c2, &[1]).unwrap();
    let (target, map) = pullback_map(&f, &h, &caps()).unwrap();
    assert_eq!(target.invariant_factors(), &[2]);
    assert!(map.is_injective().unwrap());
    let t = GroupHom::from_generator_images(&c4, &c2, &[0]).unwrap();
    assert!(pullback_map(&t, &h, &caps()).unwrap().1.is_zero());
    let wrong = GroupHom::identity(&c4);
    assert!(matches!(pullback_map(&wrong, &h, &caps()), Err(crate::Error::ActionMismatch(_))));
}

#[test]
fn connecting_map_small_and_counterexample() {
    let c2 = named("cyclic-2", &caps()).unwrap();
    let aug = AugmentationSequence::new(&c2, 2).unwrap();
    let d = connecting_delta(&Subgroup::whole(&c2), &aug, &caps()).unwrap();
    assert!(d.is_bijective());
    let w = delta_cocycle(&Subgroup::whole(&c2), &aug, 1).unwrap();
    assert_eq!(w.values, vec![vec![0], vec![1]]);
    assert!(delta_cocycle(&Subgroup::whole(&c2), &aug, 0).unwrap().values.iter().all(|v| v == &vec![0]));

    let g = named("elementary-2-3", &caps()).unwrap();
    let aug = AugmentationSequence::new(&g, 8).unwrap();
    for h in subgroups(&g, &caps()).unwrap() {
        let d = connecting_delta(&h, &aug, &caps()).unwrap();
        assert!(d.is_bijective());
        assert_eq!(d.h1.order(), big(h.order() as u64));
    }
}

#[test]
fn sha_kernel_examples() {
    let g = named("elementary-2-3", &caps()).unwrap();
    let i = augmentation_ideal(&g, 8).unwrap();
    let h = h1(&i, &caps()).unwrap();
    assert!(sha_kernel(&h, &[Subgroup::whole(&g)], &caps()).unwrap().structure.is_trivial());
    let all = sha_kernel(&h, &[Subgroup::trivial(&g)], &caps()).unwrap();
    assert_eq!(all.invariant_factors(), h.invariant_factors());
    let fam = bicyclic_family(&g, &caps()).unwrap();
    let sha = sha_kernel(&h, &fam, &caps()).unwrap();
    assert_eq!(sha.invariant_factors(), &[2]);
    let w = &sha.witnesses[0];
    assert!(w.is_cocycle(&i));
    assert!(!h.is_zero_class(w));
    // Restrict every one of the 8 classes by hand.
    let mut in_kernel = 0;
    for c in 0..8u64 {
        let a = h.cocycle(&[c]);
        let dies = fam.iter().zip(&sha.restrictions).all(|(k, t)| t.is_zero_class(&a.restrict(k)));
        in_kernel += usize::from(dies);
    }
    assert_eq!(in_kernel, 2);
    let f = sha_bic_formula(&g, 8, &caps()).unwrap();
    assert_eq!(f.invariant_factors, vec![2]);
}

#[test]
fn formula_examples() {
    let q8 = named("quaternion-8", &caps()).unwrap();
    assert_eq!(sha_bic_formula(&q8, 8, &caps()).unwrap().invariant_factors, vec![2]);
    let c4 = named("cyclic-4", &caps()).unwrap();
    let f = sha_bic_formula(&c4, 4, &caps()).unwrap();
    assert!(f.group_is_bicyclic && f.invariant_factors.is_empty());
    // Every Sylow subgroup of S3 is cyclic, so the formula kernel vanishes.
    let s3 = named("symmetric-3", &caps()).unwrap();
    let f = sha_bic_formula(&s3, 6, &caps()).unwrap();
    assert!(!f.group_is_bicyclic && f.invariant_factors.is_empty());
}

#[test]
fn zero_module_short_circuits() {
    let g = named("cyclic-3", &caps()).unwrap();
    let z = GModule::trivial(&g, &[1]).unwrap();
    assert!(h1(&z, &caps()).unwrap().is_trivial());
    assert!(tate_h0(&z).unwrap().is_trivial());
}

#[test]
fn solver_cap_is_enforced() {
    let g = named("elementary-2-3", &caps()).unwrap();
    let i = augmentation_ideal(&g, 8).unwrap();
    let tiny = Caps { max_group_order: 512, max_enumeration: 16 };
    assert!(matches!(h1(&i, &tiny), Err(crate::Error::CapExceeded { .. })));
}
