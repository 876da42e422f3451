use num_bigint::BigUint;
use serde::Serialize;

use super::arith::{add_mod, mul_mod};
use super::howell::{howell, HowellForm};
use super::matrix::ResidueMatrix;
use super::smith::column_smith;
use crate::error::{Error, Result};

/// Abstract type `Z/d_1 + ... + Z/d_r` of a finite abelian group together
/// with generators in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianStructure {
    pub invariant_factors: Vec<u64>,
    #[serde(skip)]
    pub generator_reps: ResidueMatrix,
}

impl AbelianStructure {
    pub fn order(&self) -> BigUint {
        self.invariant_factors.iter().fold(BigUint::from(1u32), |acc, &d| acc * BigUint::from(d))
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// `span(gens) / span(rels)` inside `(Z/m)^n`, with canonical coset labels
/// and coordinates along the invariant-factor generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    gens: HowellForm,
    rels: HowellForm,
    structure: AbelianStructure,
    /// Maps Howell coefficients of `gens` to structure coordinates.
    coord_map: ResidueMatrix,
}

/// Number of elements in the row span of `m`.
pub fn span_order(m: &ResidueMatrix) -> BigUint {
    howell(m).span_order()
}

/// Generators of `{x : x * M = 0}` as rows (a Howell basis).
pub fn kernel_basis(m: &ResidueMatrix) -> ResidueMatrix {
    let empty = ResidueMatrix::zeros(m.modulus(), 0, m.cols());
    kernel_with_relations(m, &empty).expect("empty relations are compatible")
}

/// Generators of `{x : x * M in span(target_rels)}`.
pub fn kernel_with_relations(m: &ResidueMatrix, target_rels: &ResidueMatrix) -> Result<ResidueMatrix> {
    if target_rels.cols() != m.cols() || target_rels.modulus() != m.modulus() {
        return Err(Error::DimensionMismatch("target relations do not match the map".into()));
    }
    let md = m.modulus();
    let (n, k) = (m.rows(), m.cols());
    let mut aug = ResidueMatrix::zeros(md, 0, k + n);
    let mut row = vec![0u64; k + n];
    for i in 0..n {
        row[..k].copy_from_slice(m.row(i));
        row[k..].iter_mut().for_each(|x| *x = 0);
        row[k + i] = 1 % md;
        aug.push_row(&row);
    }
    for r in target_rels.row_iter() {
        row[..k].copy_from_slice(r);
        row[k..].iter_mut().for_each(|x| *x = 0);
        aug.push_row(&row);
    }
    let hf = howell(&aug);
    let mut out = ResidueMatrix::zeros(md, 0, n);
    for (idx, &(col, _)) in hf.pivots().iter().enumerate() {
        if col >= k {
            out.push_row(&hf.basis().row(idx)[k..]);
        }
    }
    Ok(out)
}

/// The kernel of `x -> x * M` as an abstract group with generators.
pub fn kernel(m: &ResidueMatrix) -> AbelianStructure {
    let basis = kernel_basis(m);
    let empty = ResidueMatrix::zeros(m.modulus(), 0, m.rows());
    quotient_structure(&basis, &empty).expect("empty relations lie in any span").structure
}

/// Kernel of a homomorphism `Z/o_1 + ... -> Z/t_1 + ...` given by the
/// target coordinates of the source generators, all viewed modulo a common
/// `modulus` that every order divides. Returns kernel generators in source
/// coordinates.
pub fn hom_kernel(
    modulus: u64,
    source_orders: &[u64],
    target_orders: &[u64],
    images: &[Vec<u64>],
) -> Result<ResidueMatrix> {
    if images.len() != source_orders.len() || images.iter().any(|r| r.len() != target_orders.len()) {
        return Err(Error::DimensionMismatch("hom images do not match the orders".into()));
    }
    let map = ResidueMatrix::from_rows(modulus, target_orders.len(), images)?;
    let mut trels = ResidueMatrix::zeros(modulus, 0, target_orders.len());
    for (j, &o) in target_orders.iter().enumerate() {
        let mut r = vec![0u64; target_orders.len()];
        r[j] = o % modulus;
        trels.push_row(&r);
    }
    let mut ker = kernel_with_relations(&map, &trels)?;
    for (i, &o) in source_orders.iter().enumerate() {
        let mut r = vec![0u64; source_orders.len()];
        r[i] = o % modulus;
        ker.push_row(&r);
    }
    Ok(ker)
}

/// Structure of `span(gens) / span(rels)`.
pub fn quotient_structure(gens: &ResidueMatrix, rels: &ResidueMatrix) -> Result<Quotient> {
    if gens.cols() != rels.cols() || gens.modulus() != rels.modulus() {
        return Err(Error::DimensionMismatch("generators and relations differ in shape".into()));
    }
    let m = gens.modulus();
    let ghf = howell(gens);
    let rhf = howell(rels);
    let s = ghf.len();
    let mut coeff_rels: Vec<Vec<u64>> = kernel_basis(ghf.basis()).to_rows();
    for (i, r) in rels.row_iter().enumerate() {
        let (c, rem) = ghf.decompose(r);
        if rem.iter().any(|&x| x != 0) {
            return Err(Error::RelationNotInSpan(i));
        }
        coeff_rels.push(c);
    }
    let sm = column_smith(m, s, &coeff_rels);
    let keep: Vec<usize> = (0..s).filter(|&k| sm.orders[k] != 1).collect();
    let invariant_factors: Vec<u64> = keep.iter().map(|&k| sm.orders[k]).collect();
    let mut generator_reps = ResidueMatrix::zeros(m, 0, gens.cols());
    for &k in &keep {
        generator_reps.push_row(&ghf.basis().apply(&sm.col_inv[k]));
    }
    let mut coord_map = ResidueMatrix::zeros(m, s, keep.len());
    for i in 0..s {
        for (c, &k) in keep.iter().enumerate() {
            coord_map.set(i, c, sm.col[i][k]);
        }
    }
    Ok(Quotient {
        gens: ghf,
        rels: rhf,
        structure: AbelianStructure { invariant_factors, generator_reps },
        coord_map,
    })
}

impl Quotient {
    pub fn structure(&self) -> &AbelianStructure {
        &self.structure
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.structure.invariant_factors
    }

    pub fn order(&self) -> BigUint {
        self.structure.order()
    }

    pub fn modulus(&self) -> u64 {
        self.gens.modulus()
    }

    pub fn ambient_dim(&self) -> usize {
        self.gens.basis().cols()
    }

    /// Order of `span(gens)`.
    pub fn numerator_order(&self) -> BigUint {
        self.gens.span_order()
    }

    /// Order of `span(rels)`.
    pub fn denominator_order(&self) -> BigUint {
        self.rels.span_order()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.gens.contains(v)
    }

    /// Canonical label of the coset `v + span(rels)`.
    pub fn normal_form(&self, v: &[u64]) -> Vec<u64> {
        self.rels.reduce(v)
    }

    pub fn is_zero(&self, v: &[u64]) -> bool {
        self.rels.contains(v)
    }

    /// Coordinates of `v` along the invariant-factor generators.
    pub fn coordinates(&self, v: &[u64]) -> Result<Vec<u64>> {
        let (c, rem) = self.gens.decompose(v);
        if rem.iter().any(|&x| x != 0) {
            return Err(Error::InvalidInput("vector is outside the generator span".into()));
        }
        let raw = self.coord_map.apply(&c);
        Ok(raw.iter().zip(&self.structure.invariant_factors).map(|(&x, &d)| x % d).collect())
    }

    /// Ambient vector for the given coordinates.
    pub fn element(&self, coords: &[u64]) -> Vec<u64> {
        let m = self.modulus();
        let mut out = vec![0u64; self.ambient_dim()];
        for (k, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (x, &g) in out.iter_mut().zip(self.structure.generator_reps.row(k)) {
                *x = add_mod(*x, mul_mod(c, g, m), m);
            }
        }
        out
    }

    /// Iterates over every coordinate tuple of the quotient.
    pub fn all_coordinates(&self) -> CoordinateIter {
        CoordinateIter::new(self.structure.invariant_factors.clone())
    }
}

/// Mixed-radix enumeration of `Z/d_1 x ... x Z/d_r`.
#[derive(Clone, Debug)]
pub struct CoordinateIter {
    radices: Vec<u64>,
    current: Option<Vec<u64>>,
}

impl CoordinateIter {
    pub fn new(radices: Vec<u64>) -> Self {
        let current = if radices.contains(&0) { None } else { Some(vec![0; radices.len()]) };
        CoordinateIter { radices, current }
    }
}

impl Iterator for CoordinateIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut k = 0;
        loop {
            if k == next.len() {
                self.current = None;
                break;
            }
            next[k] += 1;
            if next[k] < self.radices[k] {
                self.current = Some(next);
                break;
            }
            next[k] = 0;
            k += 1;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn scan_kernel(m: &ResidueMatrix) -> usize {
        let md = m.modulus();
        CoordinateIter::new(vec![md; m.rows()])
            .filter(|x| m.apply(x).iter().all(|&y| y == 0))
            .count()
    }

    #[test]
    fn kernel_examples() {
        let unit = ResidueMatrix::from_rows(5, 1, &[[1u64]]).unwrap();
        assert!(kernel(&unit).invariant_factors.is_empty());
        let two = ResidueMatrix::from_rows(8, 1, &[[2u64]]).unwrap();
        let k = kernel(&two);
        assert_eq!(k.invariant_factors, vec![2]);
        assert_eq!(k.generator_reps.to_rows(), vec![vec![4]]);
        let d = ResidueMatrix::from_rows(8, 2, &[[2u64, 0], [0, 4]]).unwrap();
        let k = kernel(&d);
        assert_eq!(k.invariant_factors, vec![2, 4]);
        assert_eq!(k.order(), BigUint::from(scan_kernel(&d)));
    }

    #[test]
    fn quotient_examples() {
        let id = ResidueMatrix::identity(4, 2);
        let empty = ResidueMatrix::zeros(4, 0, 2);
        assert_eq!(quotient_structure(&id, &empty).unwrap().invariant_factors(), &[4, 4]);
        let id1 = ResidueMatrix::identity(8, 1);
        let four = ResidueMatrix::from_rows(8, 1, &[[4u64]]).unwrap();
        assert_eq!(quotient_structure(&id1, &four).unwrap().invariant_factors(), &[4]);
        let err = quotient_structure(&four, &id1).unwrap_err();
        assert_eq!(err, Error::RelationNotInSpan(0));
    }

    #[test]
    fn kernel_times_image_is_full_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for &md in &[2u64, 4, 6, 9, 12] {
            for _ in 0..10 {
                let data = (0..9).map(|_| rng.gen_range(0..md)).collect();
                let m = ResidueMatrix::new(md, 3, 3, data).unwrap();
                let k = kernel(&m).order();
                let image = span_order(&m.transpose().transpose());
                let img: BTreeSet<Vec<u64>> = CoordinateIter::new(vec![md; 3]).map(|x| m.apply(&x)).collect();
                assert_eq!(image, BigUint::from(img.len()));
                assert_eq!(k * image, BigUint::from(md.pow(3)));
            }
        }
    }

    #[test]
    fn coordinates_round_trip_on_cosets() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..15 {
            let md = 12u64;
            let g = ResidueMatrix::new(md, 2, 2, (0..4).map(|_| rng.gen_range(0..md)).collect()).unwrap();
            let mix = ResidueMatrix::new(md, 2, 2, (0..4).map(|_| rng.gen_range(0..md)).collect()).unwrap();
            let r = mix.mul(&g).unwrap();
            let q = quotient_structure(&g, &r).unwrap();
            let span: BTreeSet<Vec<u64>> = CoordinateIter::new(vec![md; 2]).map(|x| g.apply(&x)).collect();
            let sub: BTreeSet<Vec<u64>> = CoordinateIter::new(vec![md; 2]).map(|x| r.apply(&x)).collect();
            assert_eq!(q.order() * BigUint::from(sub.len()), BigUint::from(span.len()));
            for v in &span {
                let c = q.coordinates(v).unwrap();
                let back = q.element(&c);
                assert_eq!(q.normal_form(&back), q.normal_form(v));
            }
        }
    }
}
