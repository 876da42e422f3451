use num_bigint::BigUint;

use super::arith::{add_mod, mul_mod, reduce_signed, unit_normalizer, xgcd};
use super::matrix::ResidueMatrix;

/// Howell normal form of a row span over `Z/m`.
///
/// Rows are in echelon form, each pivot is a divisor of `m`, entries above a
/// pivot are reduced below it, and the span is saturated by annihilator rows
/// so that reduction against the rows is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellForm {
    basis: ResidueMatrix,
    transform: Option<ResidueMatrix>,
    pivots: Vec<(usize, u64)>,
}

struct Work {
    m: u64,
    rows: Vec<Vec<u64>>,
    combos: Option<Vec<Vec<u64>>>,
}

impl Work {
    fn scale(&mut self, r: usize, u: u64) {
        let m = self.m;
        for x in self.rows[r].iter_mut() {
            *x = mul_mod(*x, u, m);
        }
        if let Some(c) = self.combos.as_mut() {
            for x in c[r].iter_mut() {
                *x = mul_mod(*x, u, m);
            }
        }
    }

    /// `row_i -= q * row_r`.
    fn sub_multiple(&mut self, i: usize, r: usize, q: u64) {
        let m = self.m;
        let nq = (m - q % m) % m;
        if nq == 0 {
            return;
        }
        axpy(&mut self.rows, i, r, nq, m);
        if let Some(c) = self.combos.as_mut() {
            axpy(c, i, r, nq, m);
        }
    }

    /// Unimodular 2x2 transform on rows `(r, i)`: the new rows are
    /// `a*row_r + b*row_i` and `c*row_r + d*row_i`.
    fn mix(&mut self, r: usize, i: usize, coeffs: [u64; 4]) {
        let m = self.m;
        mix_rows(&mut self.rows, r, i, coeffs, m);
        if let Some(c) = self.combos.as_mut() {
            mix_rows(c, r, i, coeffs, m);
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
        if let Some(c) = self.combos.as_mut() {
            c.swap(a, b);
        }
    }

    fn push_scaled(&mut self, r: usize, f: u64) {
        let m = self.m;
        let row: Vec<u64> = self.rows[r].iter().map(|&x| mul_mod(x, f, m)).collect();
        if row.iter().all(|&x| x == 0) {
            return;
        }
        self.rows.push(row);
        if let Some(c) = self.combos.as_mut() {
            let combo: Vec<u64> = c[r].iter().map(|&x| mul_mod(x, f, m)).collect();
            c.push(combo);
        }
    }
}

fn axpy(rows: &mut [Vec<u64>], dst: usize, src: usize, f: u64, m: u64) {
    let (d, s) = pair_mut(rows, dst, src);
    for (x, &y) in d.iter_mut().zip(s.iter()) {
        if y != 0 {
            *x = add_mod(*x, mul_mod(f, y, m), m);
        }
    }
}

fn mix_rows(rows: &mut [Vec<u64>], r: usize, i: usize, [a, b, c, d]: [u64; 4], m: u64) {
    let (x, y) = pair_mut(rows, r, i);
    for (p, q) in x.iter_mut().zip(y.iter_mut()) {
        let (u, v) = (*p, *q);
        if u == 0 && v == 0 {
            continue;
        }
        *p = add_mod(mul_mod(a, u, m), mul_mod(b, v, m), m);
        *q = add_mod(mul_mod(c, u, m), mul_mod(d, v, m), m);
    }
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &mut lo[b])
    }
}

fn run(input: &ResidueMatrix, track: bool) -> HowellForm {
    let m = input.modulus();
    let ncols = input.cols();
    let nrows = input.rows();
    let mut w = Work {
        m,
        rows: input.to_rows(),
        combos: track.then(|| {
            (0..nrows)
                .map(|i| {
                    let mut e = vec![0u64; nrows];
                    if m > 1 {
                        e[i] = 1;
                    }
                    e
                })
                .collect()
        }),
    };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        if r >= w.rows.len() {
            break;
        }
        for i in r + 1..w.rows.len() {
            let b = w.rows[i][col];
            if b == 0 {
                continue;
            }
            let a = w.rows[r][col];
            if a == 0 {
                w.swap(r, i);
                continue;
            }
            let (g, s, t) = xgcd(a, b);
            let u = b / g;
            let v = a / g;
            w.mix(r, i, [reduce_signed(s, m), reduce_signed(t, m), reduce_signed(-(u as i128), m), v % m]);
        }
        let a = w.rows[r][col];
        if a == 0 {
            continue;
        }
        let unit = unit_normalizer(a, m);
        if unit != 1 {
            w.scale(r, unit);
        }
        let pivot = w.rows[r][col];
        for i in 0..r {
            let q = w.rows[i][col] / pivot;
            if q != 0 {
                w.sub_multiple(i, r, q);
            }
        }
        w.push_scaled(r, m / pivot);
        pivots.push((col, pivot));
        r += 1;
    }
    w.rows.truncate(r);
    let basis = ResidueMatrix::from_rows(m, ncols, &w.rows).expect("consistent row lengths");
    let transform = w.combos.map(|mut c| {
        c.truncate(r);
        ResidueMatrix::from_rows(m, nrows, &c).expect("consistent combo lengths")
    });
    HowellForm { basis, transform, pivots }
}

/// Howell form without a transformation witness.
pub fn howell(m: &ResidueMatrix) -> HowellForm {
    run(m, false)
}

/// Howell form together with `U` such that `U * M = H`.
pub fn howell_with_transform(m: &ResidueMatrix) -> HowellForm {
    run(m, true)
}

/// `(H, U)` with `H` the Howell form of `M` and `U * M = H`.
pub fn canonical_form(m: &ResidueMatrix) -> (ResidueMatrix, ResidueMatrix) {
    let hf = howell_with_transform(m);
    let u = hf.transform.clone().expect("transform tracked");
    (hf.basis, u)
}

impl HowellForm {
    pub fn basis(&self) -> &ResidueMatrix {
        &self.basis
    }

    pub fn transform(&self) -> Option<&ResidueMatrix> {
        self.transform.as_ref()
    }

    /// `(column, pivot value)` for each basis row.
    pub fn pivots(&self) -> &[(usize, u64)] {
        &self.pivots
    }

    pub fn modulus(&self) -> u64 {
        self.basis.modulus()
    }

    pub fn len(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }

    /// Splits `v` as `coeffs * basis + remainder` with the remainder
    /// canonical for the coset `v + span`.
    pub fn decompose(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let m = self.modulus();
        let mut rem: Vec<u64> = v.iter().map(|&x| x % m).collect();
        let mut coeffs = vec![0u64; self.len()];
        for (k, &(col, pivot)) in self.pivots.iter().enumerate() {
            let q = rem[col] / pivot;
            if q == 0 {
                continue;
            }
            coeffs[k] = q;
            let nq = m - q;
            for (x, &y) in rem.iter_mut().zip(self.basis.row(k)) {
                if y != 0 {
                    *x = add_mod(*x, mul_mod(nq, y, m), m);
                }
            }
        }
        (coeffs, rem)
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        self.decompose(v).1
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Number of elements of the span.
    pub fn span_order(&self) -> BigUint {
        let m = self.modulus();
        self.pivots.iter().fold(BigUint::from(1u32), |acc, &(_, p)| acc * BigUint::from(m / p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn brute_span(m: &ResidueMatrix) -> BTreeSet<Vec<u64>> {
        let md = m.modulus();
        let mut span = BTreeSet::new();
        span.insert(vec![0u64; m.cols()]);
        loop {
            let mut next = span.clone();
            for v in &span {
                for r in m.row_iter() {
                    let w: Vec<u64> = v.iter().zip(r).map(|(&a, &b)| (a + b) % md).collect();
                    next.insert(w);
                }
            }
            if next.len() == span.len() {
                return span;
            }
            span = next;
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng, m: u64, r: usize, c: usize) -> ResidueMatrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..m)).collect();
        ResidueMatrix::new(m, r, c, data).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let id = ResidueMatrix::identity(4, 2);
        let (h, u) = canonical_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn single_two_mod_four() {
        let m = ResidueMatrix::from_rows(4, 1, &[[2u64]]).unwrap();
        let hf = howell(&m);
        assert_eq!(hf.basis().to_rows(), vec![vec![2]]);
        assert_eq!(hf.span_order(), BigUint::from(2u32));
    }

    #[test]
    fn transform_reproduces_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 8, 4, 4);
            let (h, u) = canonical_form(&m);
            assert_eq!(u.mul(&m).unwrap(), h);
        }
    }

    #[test]
    fn span_and_order_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &md in &[4u64, 6, 8, 9, 12] {
            for _ in 0..20 {
                let rows = rng.gen_range(1..4);
                let m = random_matrix(&mut rng, md, rows, 3);
                let hf = howell(&m);
                let brute = brute_span(&m);
                assert_eq!(hf.span_order(), BigUint::from(brute.len()));
                assert_eq!(brute_span(hf.basis()), brute);
                for v in &brute {
                    assert!(hf.contains(v));
                }
            }
        }
    }

    #[test]
    fn reduction_is_constant_on_cosets() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 12, 2, 2);
            let hf = howell(&m);
            let span = brute_span(&m);
            let mut labels = std::collections::BTreeMap::new();
            for a in 0..12u64 {
                for b in 0..12u64 {
                    let v = vec![a, b];
                    let label = hf.reduce(&v);
                    labels.entry(label).or_insert_with(Vec::new).push(v);
                }
            }
            assert_eq!(labels.len() * span.len(), 144);
            for class in labels.values() {
                let first = &class[0];
                for v in class {
                    let d: Vec<u64> = v.iter().zip(first).map(|(&x, &y)| (x + 12 - y) % 12).collect();
                    assert!(span.contains(&d));
                }
            }
        }
    }

    #[test]
    fn form_is_unique_for_equal_spans() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let m = random_matrix(&mut rng, 8, 3, 4);
            let mix = random_matrix(&mut rng, 8, 5, 3);
            let extra = mix.mul(&m).unwrap();
            let both = m.stack(&extra).unwrap();
            assert_eq!(howell(&m).basis(), howell(&both).basis());
        }
    }
}
