use std::collections::BTreeSet;

use grunwald_core::zmod::{canonical_form, howell, kernel, quotient_structure, span_order, CoordinateIter, ResidueMatrix};
use num_bigint::BigUint;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = ResidueMatrix> {
    (2u64..=12, 1usize..=3, 1usize..=3).prop_flat_map(|(m, r, c)| {
        proptest::collection::vec(0..m, r * c).prop_map(move |d| ResidueMatrix::new(m, r, c, d).unwrap())
    })
}

/// Every `x * M`, by enumerating coefficient vectors.
fn brute_span(m: &ResidueMatrix) -> BTreeSet<Vec<u64>> {
    CoordinateIter::new(vec![m.modulus(); m.rows()]).map(|x| m.apply(&x)).collect()
}

proptest! {
    #[test]
    fn canonical_form_keeps_the_span(m in matrix()) {
        let (h, u) = canonical_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert_eq!(brute_span(&h), brute_span(&m));
        let hf = howell(&m);
        for r in m.row_iter() {
            prop_assert!(hf.contains(r));
        }
    }

    #[test]
    fn kernel_times_image_is_everything(m in matrix()) {
        let total = BigUint::from(m.modulus()).pow(m.rows() as u32);
        let ker = kernel(&m);
        prop_assert_eq!(ker.order() * span_order(&m), total);
        let brute = CoordinateIter::new(vec![m.modulus(); m.rows()])
            .filter(|x| m.apply(x).iter().all(|&y| y == 0))
            .count();
        prop_assert_eq!(ker.order(), BigUint::from(brute));
    }

    #[test]
    fn quotient_order_is_ratio_of_spans(gens in matrix(), mix in proptest::collection::vec(0u64..12, 9)) {
        let md = gens.modulus();
        let mut rels = ResidueMatrix::zeros(md, 0, gens.cols());
        for k in 0..2 {
            let coeffs: Vec<u64> = (0..gens.rows()).map(|i| mix[(3 * k + i) % mix.len()] % md).collect();
            rels.push_row(&gens.apply(&coeffs));
        }
        let q = quotient_structure(&gens, &rels).unwrap();
        let num = brute_span(&gens).len();
        let den = brute_span(&rels).len();
        prop_assert_eq!(num % den, 0);
        prop_assert_eq!(q.order(), BigUint::from(num / den));
        let factors = q.invariant_factors();
        for w in factors.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }
}
