use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::{FiniteGroup, Subgroup};
use crate::zmod::{kernel_with_relations, quotient_structure, span_order, AbelianStructure, Quotient, ResidueMatrix};

/// A 1-cochain stored as its full value table; `values[0]` is the value at
/// the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianCocycle {
    pub values: Vec<Vec<u64>>,
}

impl AbelianCocycle {
    pub fn zero(module: &GModule) -> Self {
        AbelianCocycle { values: vec![module.zero(); module.group().order()] }
    }

    /// Unknown vector: values at the non-identity elements, concatenated.
    pub fn to_vector(&self) -> Vec<u64> {
        self.values[1..].iter().flatten().copied().collect()
    }

    pub fn from_vector(module: &GModule, v: &[u64]) -> Self {
        let r = module.rank();
        let mut values = vec![module.zero()];
        values.extend((0..module.group().order() - 1).map(|g| module.reduce(&v[g * r..(g + 1) * r])));
        AbelianCocycle { values }
    }

    /// Exhaustive check of `a_{gh} = a_g + g·a_h`.
    pub fn is_cocycle(&self, module: &GModule) -> bool {
        let g = module.group();
        if self.values.len() != g.order() || self.values[0] != module.zero() {
            return false;
        }
        g.elements().all(|x| {
            g.elements().all(|y| self.values[g.mul(x, y)] == module.add(&self.values[x], &module.act(x, &self.values[y])))
        })
    }

    /// The coboundary `g -> g·x - x`.
    pub fn coboundary(module: &GModule, x: &[u64]) -> Self {
        let values = module.group().elements().map(|g| module.sub(&module.act(g, x), x)).collect();
        AbelianCocycle { values }
    }

    pub fn add(&self, other: &Self, module: &GModule) -> Self {
        AbelianCocycle { values: self.values.iter().zip(&other.values).map(|(a, b)| module.add(a, b)).collect() }
    }

    pub fn scale(&self, c: u64, module: &GModule) -> Self {
        AbelianCocycle { values: self.values.iter().map(|a| module.scale(c, a)).collect() }
    }

    /// Restriction to a subgroup, indexed like `h.to_group()`.
    pub fn restrict(&self, h: &Subgroup) -> Self {
        AbelianCocycle { values: h.elements().iter().map(|&x| self.values[x].clone()).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CohKind {
    H1,
    TateH0,
}

/// A computed cohomology group `span(cocycles) / span(coboundaries)`, with
/// orders of both pieces as subgroups of the cochain group.
#[derive(Clone, Debug)]
pub struct CohGroup {
    kind: CohKind,
    module: GModule,
    quotient: Quotient,
    numerator_order: BigUint,
    denominator_order: BigUint,
}

impl CohGroup {
    pub fn kind(&self) -> CohKind {
        self.kind
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn structure(&self) -> &AbelianStructure {
        self.quotient.structure()
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.quotient.invariant_factors()
    }

    pub fn order(&self) -> BigUint {
        self.structure().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.structure().is_trivial()
    }

    /// `|Z¹|` for H¹, `|B^H|` for Ĥ⁰.
    pub fn cocycle_order(&self) -> &BigUint {
        &self.numerator_order
    }

    /// `|B¹|` for H¹, `|N_H(B)|` for Ĥ⁰.
    pub fn coboundary_order(&self) -> &BigUint {
        &self.denominator_order
    }

    fn extend(&self, v: &[u64]) -> Vec<u64> {
        let m = self.quotient.modulus();
        v.iter().map(|&x| x % m).collect()
    }

    /// Coordinates along the invariant factors of the class of an ambient
    /// vector (a cochain vector for H¹, a module element for Ĥ⁰).
    pub fn coordinates_of(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.quotient.ambient_dim() {
            return Err(Error::DimensionMismatch("vector has the wrong length".into()));
        }
        self.quotient.coordinates(&self.extend(v))
    }

    pub fn coordinates(&self, a: &AbelianCocycle) -> Result<Vec<u64>> {
        self.coordinates_of(&self.vector_of(a))
    }

    /// Canonical label: the Howell-reduced representative vector.
    pub fn normal_form(&self, a: &AbelianCocycle) -> Vec<u64> {
        self.quotient.normal_form(&self.extend(&self.vector_of(a)))
    }

    pub fn is_zero_class(&self, a: &AbelianCocycle) -> bool {
        self.quotient.is_zero(&self.extend(&self.vector_of(a)))
    }

    fn vector_of(&self, a: &AbelianCocycle) -> Vec<u64> {
        match self.kind {
            CohKind::H1 => a.to_vector(),
            CohKind::TateH0 => a.values[0].clone(),
        }
    }

    /// Representative for the given coordinates.
    pub fn element(&self, coords: &[u64]) -> Vec<u64> {
        self.module_reduce(&self.quotient.element(coords))
    }

    fn module_reduce(&self, v: &[u64]) -> Vec<u64> {
        let r = self.module.rank();
        if r == 0 {
            return v.to_vec();
        }
        v.chunks(r).flat_map(|c| self.module.reduce(c)).collect()
    }

    /// Cocycle representing the class with the given coordinates (H¹ only).
    pub fn cocycle(&self, coords: &[u64]) -> AbelianCocycle {
        AbelianCocycle::from_vector(&self.module, &self.element(coords))
    }

    /// One cocycle per invariant factor.
    pub fn generators(&self) -> Vec<AbelianCocycle> {
        let k = self.invariant_factors().len();
        (0..k)
            .map(|i| {
                let mut c = vec![0u64; k];
                c[i] = 1;
                self.cocycle(&c)
            })
            .collect()
    }

    /// Element of the module representing the Ĥ⁰ class with given coordinates.
    pub fn h0_element(&self, coords: &[u64]) -> Vec<u64> {
        self.element(coords)
    }
}

fn relation_block(module: &GModule, blocks: usize, m: u64) -> ResidueMatrix {
    let r = module.rank();
    let mut rel = ResidueMatrix::zeros(m, 0, blocks * r);
    for b in 0..blocks {
        for (i, &d) in module.moduli().iter().enumerate() {
            if d % m != 0 {
                let mut row = vec![0u64; blocks * r];
                row[b * r + i] = d;
                rel.push_row(&row);
            }
        }
    }
    rel
}

fn trivial_group(kind: CohKind, module: &GModule, dim: usize) -> Result<CohGroup> {
    let z = ResidueMatrix::zeros(2, 0, dim);
    Ok(CohGroup {
        kind,
        module: module.clone(),
        quotient: quotient_structure(&z, &z)?,
        numerator_order: BigUint::from(1u32),
        denominator_order: BigUint::from(1u32),
    })
}

/// Estimated cost of the cocycle solve, in residue operations: the Howell
/// form of the augmented system is `rows^2 * columns`.
pub fn h1_solver_cost(module: &GModule) -> u128 {
    let n = module.group().order() as u128;
    let r = module.rank() as u128;
    let s = module.group().generators().iter().filter(|&&x| x != 0).count() as u128;
    let mixed = module.moduli().iter().filter(|&&d| d != module.modulus()).count() as u128;
    let unknowns = (n - 1) * r;
    let rows = unknowns + (n - 1) * s * mixed;
    let cols = (n - 1) * s * r + unknowns;
    rows * rows * cols
}

/// `H¹(Γ, A)` by solving the cocycle equations `a_{gs} = a_g + g·a_s` over
/// generators `s`. These imply the identity for all pairs by induction on
/// word length.
pub fn h1(module: &GModule, caps: &Caps) -> Result<CohGroup> {
    let g = module.group().clone();
    let n = g.order();
    let r = module.rank();
    let m = module.modulus();
    let dim = (n - 1) * r;
    if m == 1 || dim == 0 {
        return trivial_group(CohKind::H1, module, dim);
    }
    let cost = h1_solver_cost(module);
    if cost > caps.solver_budget() {
        return Err(Error::cap("H1 linear system", cost, caps.solver_budget()));
    }
    let gens: Vec<usize> = g.generators().iter().copied().filter(|&s| s != 0).collect();
    let blocks = (n - 1) * gens.len();
    let mut eq = ResidueMatrix::zeros(m, dim, blocks * r);
    let neg = |x: u64| (m - x % m) % m;
    for x in 1..n {
        for (si, &s) in gens.iter().enumerate() {
            let col = ((x - 1) * gens.len() + si) * r;
            let xs = g.mul(x, s);
            let mx = module.action(x);
            for i in 0..r {
                if xs != 0 {
                    let row = (xs - 1) * r + i;
                    eq.set(row, col + i, (eq.get(row, col + i) + 1) % m);
                }
                let row = (x - 1) * r + i;
                eq.set(row, col + i, (eq.get(row, col + i) + neg(1)) % m);
                for k in 0..r {
                    let row = (s - 1) * r + k;
                    eq.set(row, col + i, (eq.get(row, col + i) + neg(mx.get(k, i))) % m);
                }
            }
        }
    }
    let target_rels = relation_block(module, blocks, m);
    let z = kernel_with_relations(&eq, &target_rels)?;
    let src_rels = relation_block(module, n - 1, m);
    let mut b = ResidueMatrix::zeros(m, 0, dim);
    for j in 0..r {
        let mut row = Vec::with_capacity(dim);
        for x in 1..n {
            let mx = module.action(x);
            for i in 0..r {
                let delta = u64::from(i == j);
                row.push((mx.get(j, i) + m - delta) % m);
            }
        }
        b.push_row(&row);
    }
    finish(CohKind::H1, module, &z.stack(&src_rels)?, &b.stack(&src_rels)?, &src_rels)
}

fn finish(
    kind: CohKind,
    module: &GModule,
    gens: &ResidueMatrix,
    rels: &ResidueMatrix,
    base: &ResidueMatrix,
) -> Result<CohGroup> {
    let quotient = quotient_structure(gens, rels)?;
    let base_order = span_order(base);
    let numerator_order = quotient.numerator_order() / &base_order;
    let denominator_order = quotient.denominator_order() / &base_order;
    Ok(CohGroup { kind, module: module.clone(), quotient, numerator_order, denominator_order })
}

/// Tate `Ĥ⁰(H, B) = B^H / N_H(B)` for the acting group of `module`.
pub fn tate_h0(module: &GModule) -> Result<CohGroup> {
    let g = module.group().clone();
    let r = module.rank();
    let m = module.modulus();
    if m == 1 || r == 0 {
        return trivial_group(CohKind::TateH0, module, r);
    }
    let gens: Vec<usize> = g.generators().iter().copied().filter(|&s| s != 0).collect();
    let mut fix = ResidueMatrix::zeros(m, r, gens.len() * r);
    for (si, &s) in gens.iter().enumerate() {
        let ms = module.action(s);
        for k in 0..r {
            for i in 0..r {
                let delta = u64::from(i == k);
                fix.set(k, si * r + i, (ms.get(k, i) + m - delta) % m);
            }
        }
    }
    let target_rels = relation_block(module, gens.len(), m);
    let fixed = kernel_with_relations(&fix, &target_rels)?;
    let mut norm = ResidueMatrix::zeros(m, r, r);
    for h in g.elements() {
        let mh = module.action(h);
        for k in 0..r {
            for i in 0..r {
                norm.set(k, i, (norm.get(k, i) + mh.get(k, i)) % m);
            }
        }
    }
    let src_rels = relation_block(module, 1, m);
    let mut norm_rows = ResidueMatrix::zeros(m, 0, r);
    for k in 0..r {
        norm_rows.push_row(&module.reduce(norm.row(k)));
    }
    finish(CohKind::TateH0, module, &fixed.stack(&src_rels)?, &norm_rows.stack(&src_rels)?, &src_rels)
}

/// `Ĥ⁰` of the restriction to a subgroup.
pub fn tate_h0_subgroup(module: &GModule, h: &Subgroup) -> Result<CohGroup> {
    tate_h0(&module.restrict(h)?)
}
