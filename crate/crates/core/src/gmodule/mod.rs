//! Finite modules `⊕ Z/d_i` with a left action of a finite group.
//!
//! Elements are residue vectors with coordinate `i` in `[0, d_i)`. The action
//! of `g` is a matrix `M_g` over `Z/lcm(d_i)` acting on rows, `g·x = x M_g`,
//! so `M_{gh} = M_h M_g`. Entry `(i, j)` is kept reduced modulo `d_j`, which
//! makes the matrix of a given endomorphism unique.

mod spec;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{same_group, FiniteGroup, GroupHom, Subgroup};
use crate::zmod::{add_mod, lcm, mul_mod, ResidueMatrix};

pub use spec::{build_module, ModuleSpec};

/// Upper bound on `|G| * rank^2` for the stored per-element matrices.
pub const ACTION_TABLE_LIMIT: usize = 1 << 24;

#[derive(Clone, PartialEq, Eq)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    moduli: Vec<u64>,
    modulus: u64,
    generator_actions: Vec<ResidueMatrix>,
    actions: Arc<Vec<ResidueMatrix>>,
    origin: String,
    roots_of_unity_assumed: bool,
}

impl GModule {
    /// Validates the generator matrices and extends them to every element.
    pub fn new(group: &Arc<FiniteGroup>, moduli: &[u64], generator_actions: Vec<ResidueMatrix>) -> Result<Self> {
        Self::build(group, moduli, generator_actions, "custom".into())
    }

    fn build(group: &Arc<FiniteGroup>, moduli: &[u64], gens: Vec<ResidueMatrix>, origin: String) -> Result<Self> {
        if let Some(&d) = moduli.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidModulus(d));
        }
        let r = moduli.len();
        let modulus = moduli.iter().fold(1u64, |acc, &d| lcm(acc, d));
        if gens.len() != group.generators().len() {
            return Err(Error::InvalidAction(format!(
                "{} action matrices for {} group generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let cost = group.order().saturating_mul(r.max(1) * r.max(1));
        if cost > ACTION_TABLE_LIMIT {
            return Err(Error::cap("module action table size", cost as u128, ACTION_TABLE_LIMIT as u128));
        }
        let mut reduced = Vec::with_capacity(gens.len());
        for (k, m) in gens.iter().enumerate() {
            if m.rows() != r || m.cols() != r {
                return Err(Error::InvalidAction(format!("matrix {k} is {}x{}, expected {r}x{r}", m.rows(), m.cols())));
            }
            if modulus % m.modulus() != 0 && m.modulus() % modulus != 0 {
                return Err(Error::InvalidAction(format!("matrix {k} has modulus {} incompatible with {modulus}", m.modulus())));
            }
            let mut out = ResidueMatrix::zeros(modulus, r, r);
            for i in 0..r {
                for j in 0..r {
                    let v = m.get(i, j);
                    // Z/d_i -> Z/d_j is well defined only if d_i * v = 0 mod d_j.
                    if !(moduli[i] as u128 * v as u128).is_multiple_of(moduli[j] as u128) {
                        return Err(Error::InvalidAction(format!(
                            "matrix {k} entry ({i},{j}) = {v} does not map Z/{} into Z/{}",
                            moduli[i], moduli[j]
                        )));
                    }
                    out.set(i, j, v % moduli[j]);
                }
            }
            reduced.push(out);
        }
        let n = group.order();
        let mut actions: Vec<Option<ResidueMatrix>> = vec![None; n];
        actions[0] = Some(ResidueMatrix::identity(modulus, r).with_modulus(modulus));
        reduce_columns(actions[0].as_mut().unwrap(), moduli);
        let mut queue = vec![0usize];
        let mut qi = 0;
        while qi < queue.len() {
            let x = queue[qi];
            for (&s, ms) in group.generators().iter().zip(&reduced) {
                let y = group.mul(x, s);
                let mut my = ms.mul(actions[x].as_ref().unwrap())?;
                reduce_columns(&mut my, moduli);
                match &actions[y] {
                    None => {
                        actions[y] = Some(my);
                        queue.push(y);
                    }
                    Some(existing) if *existing != my => {
                        return Err(Error::InvalidAction(format!(
                            "generator relations are not respected at {}",
                            group.label(y)
                        )));
                    }
                    Some(_) => {}
                }
            }
            qi += 1;
        }
        if queue.len() != n {
            return Err(Error::InvalidAction("group generators do not reach every element".into()));
        }
        Ok(GModule {
            group: group.clone(),
            moduli: moduli.to_vec(),
            modulus,
            generator_actions: reduced,
            actions: Arc::new(actions.into_iter().map(Option::unwrap).collect()),
            origin,
            roots_of_unity_assumed: false,
        })
    }

    pub fn trivial(group: &Arc<FiniteGroup>, moduli: &[u64]) -> Result<Self> {
        let m = moduli.iter().fold(1u64, |acc, &d| lcm(acc, d));
        let id = ResidueMatrix::identity(m, moduli.len());
        let gens = vec![id; group.generators().len()];
        Self::build(group, moduli, gens, "trivial".into())
    }

    /// `(Z/m)[G]` with basis `e_h` and `g·e_h = e_{gh}`.
    pub fn group_ring(group: &Arc<FiniteGroup>, m: u64) -> Result<Self> {
        let n = group.order();
        let gens = group
            .generators()
            .iter()
            .map(|&g| {
                let mut mat = ResidueMatrix::zeros(m, n, n);
                for h in 0..n {
                    mat.set(h, group.mul(g, h), 1 % m);
                }
                mat
            })
            .collect();
        Self::build(group, &vec![m; n], gens, format!("group_ring(m={m})"))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// `lcm` of the moduli; the ambient ring of the action matrices.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> BigUint {
        self.moduli.iter().fold(BigUint::from(1u32), |acc, &d| acc * d)
    }

    /// Exponent of the underlying abelian group.
    pub fn exponent(&self) -> u64 {
        self.modulus
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = origin.into();
        self
    }

    /// Set on Cartier duals: the identification of `Hom(A, Q/Z)` with
    /// `Hom(A, Z/exp A)` as Galois modules needs the exp(A)-th roots of unity
    /// in the base.
    pub fn roots_of_unity_assumed(&self) -> bool {
        self.roots_of_unity_assumed
    }

    pub fn generator_actions(&self) -> &[ResidueMatrix] {
        &self.generator_actions
    }

    pub fn action(&self, g: usize) -> &ResidueMatrix {
        &self.actions[g]
    }

    /// Relation rows `d_i e_i` of the embedding into `(Z/m)^r`.
    pub fn relation_rows(&self) -> ResidueMatrix {
        let r = self.rank();
        let mut rel = ResidueMatrix::zeros(self.modulus, 0, r);
        for (i, &d) in self.moduli.iter().enumerate() {
            if d % self.modulus != 0 {
                let mut row = vec![0u64; r];
                row[i] = d;
                rel.push_row(&row);
            }
        }
        rel
    }

    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.moduli).map(|(&v, &d)| v % d).collect()
    }

    pub fn act(&self, g: usize, x: &[u64]) -> Vec<u64> {
        let y = self.actions[g].apply(x);
        self.reduce(&y)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.moduli).map(|((&a, &b), &d)| add_mod(a, b, d)).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.moduli).map(|(&a, &d)| (d - a % d) % d).collect()
    }

    pub fn scale(&self, c: u64, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.moduli).map(|(&a, &d)| mul_mod(c % d, a, d)).collect()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    /// Mixed-radix index with coordinate 0 least significant.
    pub fn encode(&self, x: &[u64]) -> usize {
        let mut idx = 0usize;
        for (&v, &d) in x.iter().zip(&self.moduli).rev() {
            idx = idx * d as usize + v as usize;
        }
        idx
    }

    pub fn decode(&self, idx: usize) -> Vec<u64> {
        let mut idx = idx;
        self.moduli
            .iter()
            .map(|&d| {
                let v = (idx % d as usize) as u64;
                idx /= d as usize;
                v
            })
            .collect()
    }

    /// Every element, when the order fits in memory.
    pub fn elements(&self, cap: u64) -> Result<Vec<Vec<u64>>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::cap("module element enumeration", u128::try_from(&order).unwrap_or(u128::MAX), cap as u128));
        }
        let n: usize = usize::try_from(&order).expect("bounded by cap");
        Ok((0..n).map(|i| self.decode(i)).collect())
    }

    /// Same underlying group and identical action matrices.
    pub fn same_action(&self, other: &GModule) -> bool {
        same_group(&self.group, &other.group)
            && self.moduli == other.moduli
            && self.generator_actions == other.generator_actions
    }

    /// True when every element acts as the identity.
    pub fn is_trivial_action(&self) -> bool {
        let id = &self.actions[0];
        self.generator_actions.iter().all(|m| m == id)
    }

    /// `Hom(A, Z/exp A)` with `(g·φ)(x) = φ(g⁻¹x)`, in the dual basis
    /// `φ_i(e_k) = δ_ik · m/d_i`.
    pub fn cartier_dual(&self) -> Result<GModule> {
        let r = self.rank();
        let d = &self.moduli;
        let gens = self
            .group
            .generators()
            .iter()
            .map(|&g| {
                let minv = &self.actions[self.group.inv(g)];
                let mut out = ResidueMatrix::zeros(self.modulus, r, r);
                for i in 0..r {
                    for j in 0..r {
                        // (M_{g⁻¹}[j][i] · d_j) / d_i is an integer by compatibility.
                        let v = (minv.get(j, i) as u128 * d[j] as u128 / d[i] as u128) % d[j] as u128;
                        out.set(i, j, v as u64);
                    }
                }
                out
            })
            .collect();
        let mut dual = Self::build(&self.group, d, gens, format!("dual({})", self.origin))?;
        dual.roots_of_unity_assumed = true;
        Ok(dual)
    }

    /// Module over `f.source()` acting through `f`.
    pub fn pullback(&self, f: &GroupHom) -> Result<GModule> {
        if !same_group(f.target(), &self.group) {
            return Err(Error::ActionMismatch("homomorphism target is not the acting group".into()));
        }
        let gens = f.source().generators().iter().map(|&s| self.actions[f.apply(s)].clone()).collect();
        let mut out = Self::build(f.source(), &self.moduli, gens, format!("pullback({})", self.origin))?;
        out.roots_of_unity_assumed = self.roots_of_unity_assumed;
        Ok(out)
    }

    /// Restriction of the action to a subgroup, as a module over the
    /// subgroup viewed as a standalone group.
    pub fn restrict(&self, h: &Subgroup) -> Result<GModule> {
        if !same_group(h.parent(), &self.group) {
            return Err(Error::NotASubgroup("subgroup of a different group".into()));
        }
        let (hg, incl) = h.to_group()?;
        let gens = hg.generators().iter().map(|&s| self.actions[incl.apply(s)].clone()).collect();
        let mut out = Self::build(&hg, &self.moduli, gens, format!("restrict({})", self.origin))?;
        out.roots_of_unity_assumed = self.roots_of_unity_assumed;
        Ok(out)
    }
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GModule({}, moduli {:?}, over {:?})", self.origin, self.moduli, self.group)
    }
}

fn reduce_columns(m: &mut ResidueMatrix, moduli: &[u64]) {
    for i in 0..m.rows() {
        for (j, &d) in moduli.iter().enumerate() {
            let v = m.get(i, j) % d;
            m.set(i, j, v);
        }
    }
}

/// Twist of an action by values `c: Γ -> G`: `γ * x = c_γ · (γ · x)`, where
/// `intrinsic` gives the Γ-action and `outer` the G-action on the same group.
/// Fails with `IncompatibleActions` unless the result is again an action.
pub fn twist_module(intrinsic: &GModule, outer: &GModule, values: &[usize]) -> Result<GModule> {
    if intrinsic.moduli != outer.moduli {
        return Err(Error::IncompatibleActions("the two actions are on different groups".into()));
    }
    let gamma = intrinsic.group();
    if values.len() != gamma.order() || values.iter().any(|&v| v >= outer.group.order()) {
        return Err(Error::IncompatibleActions("twisting values do not match the groups".into()));
    }
    let gens = gamma
        .generators()
        .iter()
        .map(|&s| intrinsic.actions[s].mul(&outer.actions[values[s]]))
        .collect::<Result<Vec<_>>>()?;
    let mut out = GModule::build(gamma, &intrinsic.moduli, gens, format!("twist({})", outer.origin)).map_err(|e| match e {
        Error::InvalidAction(msg) => Error::IncompatibleActions(msg),
        other => other,
    })?;
    // Every element must act as c_γ composed with γ, not just the generators.
    for g in gamma.elements() {
        let mut expected = intrinsic.actions[g].mul(&outer.actions[values[g]])?;
        reduce_columns(&mut expected, &intrinsic.moduli);
        if out.actions[g] != expected {
            return Err(Error::IncompatibleActions(format!("twisted action disagrees at {}", gamma.label(g))));
        }
    }
    out.roots_of_unity_assumed = outer.roots_of_unity_assumed;
    Ok(out)
}

/// Twist of a G-module along a homomorphism `c: Γ -> G` with trivial
/// intrinsic Γ-action: the result is the module `A` with Γ acting via `c`.
pub fn twist_by_hom(a: &GModule, c: &GroupHom) -> Result<GModule> {
    let m = a.pullback(c)?;
    Ok(m.with_origin(format!("twist({})", a.origin)))
}

/// A G-equivariant homomorphism between modules over the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source_moduli: Vec<u64>,
    target_moduli: Vec<u64>,
    matrix: ResidueMatrix,
}

impl ModuleMap {
    /// Validates well-definedness on each cyclic factor and equivariance.
    pub fn new(source: &GModule, target: &GModule, matrix: ResidueMatrix) -> Result<Self> {
        if !same_group(&source.group, &target.group) {
            return Err(Error::ActionMismatch("module map between different groups".into()));
        }
        if matrix.rows() != source.rank() || matrix.cols() != target.rank() {
            return Err(Error::DimensionMismatch("module map has the wrong shape".into()));
        }
        let m = lcm(source.modulus, target.modulus);
        let mut mat = ResidueMatrix::zeros(m, source.rank(), target.rank());
        for i in 0..source.rank() {
            for j in 0..target.rank() {
                let v = matrix.get(i, j) % target.moduli[j];
                if !(source.moduli[i] as u128 * v as u128).is_multiple_of(target.moduli[j] as u128) {
                    return Err(Error::InvalidModule(format!("map entry ({i},{j}) is not defined on Z/{}", source.moduli[i])));
                }
                mat.set(i, j, v);
            }
        }
        let map = ModuleMap { source_moduli: source.moduli.clone(), target_moduli: target.moduli.clone(), matrix: mat };
        for &s in source.group.generators() {
            for i in 0..source.rank() {
                let mut e = vec![0u64; source.rank()];
                e[i] = 1 % source.moduli[i];
                if map.apply(&source.act(s, &e)) != target.act(s, &map.apply(&e)) {
                    return Err(Error::InvalidModule("module map is not equivariant".into()));
                }
            }
        }
        Ok(map)
    }

    pub fn matrix(&self) -> &ResidueMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let ext: Vec<u64> = x.iter().map(|&v| v % self.matrix.modulus()).collect();
        self.matrix.apply(&ext).iter().zip(&self.target_moduli).map(|(&v, &d)| v % d).collect()
    }
}

/// `0 -> I -> R -> B -> 0` for a group ring `R = (Z/m)[G]`.
#[derive(Clone, Debug)]
pub struct AugmentationSequence {
    pub ring: GModule,
    pub ideal: GModule,
    pub inclusion: ModuleMap,
    pub quotient: GModule,
    pub projection: ModuleMap,
    pub modulus: u64,
}

impl AugmentationSequence {
    /// Basis `b_g = g - 1` of the ideal, indexed by `g - 1` for `g ≠ e`.
    pub fn new(group: &Arc<FiniteGroup>, m: u64) -> Result<Self> {
        let ring = GModule::group_ring(group, m)?;
        let n = group.order();
        let r = n - 1;
        let neg1 = (m - 1 % m) % m;
        let gens = group
            .generators()
            .iter()
            .map(|&h| {
                // h·b_g = b_{hg} - b_h, where b_e = 0.
                let mut mat = ResidueMatrix::zeros(m, r, r);
                for g in 1..n {
                    let hg = group.mul(h, g);
                    if hg != 0 {
                        mat.set(g - 1, hg - 1, add_mod(mat.get(g - 1, hg - 1), 1 % m, m));
                    }
                    if h != 0 {
                        mat.set(g - 1, h - 1, add_mod(mat.get(g - 1, h - 1), neg1, m));
                    }
                }
                mat
            })
            .collect();
        let ideal = GModule::build(group, &vec![m; r], gens, format!("augmentation_ideal(m={m})"))?;
        let mut incl = ResidueMatrix::zeros(m, r, n);
        for g in 1..n {
            incl.set(g - 1, g, 1 % m);
            incl.set(g - 1, 0, neg1);
        }
        let inclusion = ModuleMap::new(&ideal, &ring, incl)?;
        let quotient = GModule::trivial(group, &[m])?.with_origin(format!("augmentation_quotient(m={m})"));
        let mut proj = ResidueMatrix::zeros(m, n, 1);
        for h in 0..n {
            proj.set(h, 0, 1 % m);
        }
        let projection = ModuleMap::new(&ring, &quotient, proj)?;
        Ok(AugmentationSequence { ring, ideal, inclusion, quotient, projection, modulus: m })
    }

    /// A lift in `R` of `b ∈ B`: `b · e_1`.
    pub fn lift(&self, b: u64) -> Vec<u64> {
        let mut r = vec![0u64; self.ring.rank()];
        if !r.is_empty() {
            r[0] = b % self.modulus;
        }
        r
    }

    /// Coordinates in `I` of an element of `R` with coefficient sum zero.
    pub fn ideal_coordinates(&self, r: &[u64]) -> Result<Vec<u64>> {
        if self.projection.apply(r).iter().any(|&x| x != 0) {
            return Err(Error::InvalidInput("element is not in the augmentation ideal".into()));
        }
        Ok(r[1..].to_vec())
    }
}

/// Augmentation ideal of `(Z/m)[G]` on its own.
pub fn augmentation_ideal(group: &Arc<FiniteGroup>, m: u64) -> Result<GModule> {
    Ok(AugmentationSequence::new(group, m)?.ideal)
}
