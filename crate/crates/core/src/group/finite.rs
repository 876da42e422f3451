use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gmodule::GModule;

/// A finite group with elements indexed `0..order`, identity at `0`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    generators: Vec<usize>,
    backend: Backend,
}

#[derive(Clone, PartialEq, Eq)]
enum Backend {
    Table { mul: Vec<u32>, inv: Vec<u32>, labels: Vec<String> },
    Abelian { moduli: Vec<u64> },
    Semidirect(Box<SemidirectBackend>),
}

/// `A x| G` with elements `(a, g)` encoded as `index(a) * |G| + g`.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct SemidirectBackend {
    pub module: GModule,
    pub complement: Arc<FiniteGroup>,
    pub kernel_order: usize,
}

/// Largest order for which a multiplication table may be built.
pub const TABLE_LIMIT: usize = 1 << 16;

impl FiniteGroup {
    /// Validates a Cayley table (`table[x][y] = x*y`). The identity is moved
    /// to index 0 if it sits elsewhere.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Arc<Self>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > TABLE_LIMIT {
            return Err(Error::cap("table group order", n as u128, TABLE_LIMIT as u128));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidTable(format!("entry {bad} out of range in row {i}")));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        // Relabel so that the identity is 0.
        let swap = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                mul[swap(x) * n + swap(y)] = swap(table[x][y]) as u32;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = mul[x * n + y] as usize;
                for z in 0..n {
                    let yz = mul[y * n + z] as usize;
                    if mul[xy * n + z] != mul[x * n + yz] {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails on ({}, {}, {})",
                            swap(x),
                            swap(y),
                            swap(z)
                        )));
                    }
                }
            }
        }
        let mut inv = vec![u32::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| mul[x * n + y] == 0) {
                Some(y) => inv[x] = y as u32,
                None => return Err(Error::InvalidTable(format!("element {} has no inverse", swap(x)))),
            }
        }
        let labels = (0..n).map(|x| swap(x).to_string()).collect();
        let mut g = FiniteGroup { order: n, generators: Vec::new(), backend: Backend::Table { mul, inv, labels } };
        g.generators = g.greedy_generators();
        Ok(Arc::new(g))
    }

    /// Closure of `gens` under `mul`, indexed in breadth-first order from
    /// the identity. `gens` become the group's generators, in order.
    pub fn from_closure<T, M, L>(identity: T, gens: &[T], mul: M, label: L, cap: usize) -> Result<Arc<Self>>
    where
        T: Clone + Ord,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let cap = cap.min(TABLE_LIMIT);
        let mut index: BTreeMap<T, usize> = BTreeMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        let mut i = 0;
        while i < elems.len() {
            for s in gens {
                let y = mul(&elems[i], s);
                if !index.contains_key(&y) {
                    if elems.len() >= cap {
                        return Err(Error::cap("generated group order", elems.len() as u128 + 1, cap as u128));
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut mul_t = vec![0u32; n * n];
        for (x, ex) in elems.iter().enumerate() {
            for (y, ey) in elems.iter().enumerate() {
                mul_t[x * n + y] = index[&mul(ex, ey)] as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for x in 0..n {
            inv[x] = (0..n).find(|&y| mul_t[x * n + y] == 0).expect("finite closure has inverses") as u32;
        }
        let labels = elems.iter().map(label).collect();
        let generators = gens.iter().map(|s| index[s]).collect();
        Ok(Arc::new(FiniteGroup { order: n, generators, backend: Backend::Table { mul: mul_t, inv, labels } }))
    }

    /// Group generated by permutations given as point-image lists.
    pub fn from_permutations(gens: &[Vec<usize>], cap: usize) -> Result<Arc<Self>> {
        let degree = gens.first().map_or(0, |g| g.len());
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidInput(format!("permutation {i} has degree {}, expected {degree}", g.len())));
            }
            let mut seen = vec![false; degree];
            for &p in g {
                if p >= degree || seen[p] {
                    return Err(Error::InvalidInput(format!("generator {i} is not a permutation")));
                }
                seen[p] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        // (p * q)(x) = p(q(x)): apply q first.
        let compose = |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
        Self::from_closure(identity, gens, compose, |p| cycle_notation(p), cap)
    }

    /// `Z/d_1 x ... x Z/d_r` in the given coordinates (no table).
    pub fn abelian(moduli: &[u64]) -> Result<Arc<Self>> {
        if moduli.contains(&0) {
            return Err(Error::InvalidInput("cyclic factor of order 0".into()));
        }
        let order = moduli.iter().try_fold(1u128, |acc, &d| {
            let next = acc * d as u128;
            (next <= usize::MAX as u128 / 2).then_some(next)
        });
        let order = order.ok_or_else(|| Error::cap("abelian group order", u128::MAX, usize::MAX as u128))? as usize;
        let mut generators = Vec::new();
        let mut stride = 1usize;
        for &d in moduli {
            if d > 1 {
                generators.push(stride);
            }
            stride *= d as usize;
        }
        Ok(Arc::new(FiniteGroup { order, generators, backend: Backend::Abelian { moduli: moduli.to_vec() } }))
    }

    pub(crate) fn from_semidirect(data: SemidirectBackend) -> Result<Arc<Self>> {
        let g_order = data.complement.order();
        let order = (data.kernel_order as u128) * (g_order as u128);
        if order > (usize::MAX / 2) as u128 {
            return Err(Error::cap("semidirect product order", order, (usize::MAX / 2) as u128));
        }
        let mut generators = Vec::new();
        let mut stride = 1usize;
        for &d in data.module.moduli() {
            if d > 1 {
                generators.push(stride * g_order);
            }
            stride *= d as usize;
        }
        generators.extend(data.complement.generators().iter().copied());
        Ok(Arc::new(FiniteGroup { order: order as usize, generators, backend: Backend::Semidirect(Box::new(data)) }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn has_table(&self) -> bool {
        matches!(self.backend, Backend::Table { .. })
    }

    pub fn is_structured(&self) -> bool {
        matches!(self.backend, Backend::Semidirect(_))
    }

    /// Cyclic coordinates of an abelian-backend group.
    pub fn abelian_moduli(&self) -> Option<&[u64]> {
        match &self.backend {
            Backend::Abelian { moduli } => Some(moduli),
            _ => None,
        }
    }

    pub(crate) fn semidirect_data(&self) -> Option<&SemidirectBackend> {
        match &self.backend {
            Backend::Semidirect(d) => Some(d),
            _ => None,
        }
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.backend {
            Backend::Table { mul, .. } => mul[x * self.order + y] as usize,
            Backend::Abelian { moduli } => {
                let (mut x, mut y) = (x, y);
                let (mut out, mut stride) = (0usize, 1usize);
                for &d in moduli {
                    let d = d as usize;
                    out += ((x % d + y % d) % d) * stride;
                    x /= d;
                    y /= d;
                    stride *= d;
                }
                out
            }
            Backend::Semidirect(sd) => {
                let n = sd.complement.order();
                let (a1, g1) = (x / n, x % n);
                let (a2, g2) = (y / n, y % n);
                let v1 = sd.module.decode(a1);
                let v2 = sd.module.act(g1, &sd.module.decode(a2));
                let a = sd.module.add(&v1, &v2);
                sd.module.encode(&a) * n + sd.complement.mul(g1, g2)
            }
        }
    }

    pub fn inv(&self, x: usize) -> usize {
        match &self.backend {
            Backend::Table { inv, .. } => inv[x] as usize,
            Backend::Abelian { moduli } => {
                let (mut x, mut out, mut stride) = (x, 0usize, 1usize);
                for &d in moduli {
                    let d = d as usize;
                    out += ((d - x % d) % d) * stride;
                    x /= d;
                    stride *= d;
                }
                out
            }
            Backend::Semidirect(sd) => {
                let n = sd.complement.order();
                let (a, g) = (x / n, x % n);
                let gi = sd.complement.inv(g);
                let v = sd.module.act(gi, &sd.module.decode(a));
                sd.module.encode(&sd.module.neg(&v)) * n + gi
            }
        }
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let (mut base, mut k, mut acc) = (x, k, 0usize);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut k = 1u64;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn label(&self, x: usize) -> String {
        match &self.backend {
            Backend::Table { labels, .. } => labels[x].clone(),
            Backend::Abelian { moduli } => {
                let mut x = x;
                let parts: Vec<String> = moduli
                    .iter()
                    .map(|&d| {
                        let c = x % d as usize;
                        x /= d as usize;
                        c.to_string()
                    })
                    .collect();
                format!("({})", parts.join(","))
            }
            Backend::Semidirect(sd) => {
                let n = sd.complement.order();
                let a = sd.module.decode(x / n);
                let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
                format!("([{}],{})", parts.join(","), sd.complement.label(x % n))
            }
        }
    }

    /// Checks the group axioms on random triples (structured backends) or
    /// exhaustively (small orders).
    pub fn spot_check_axioms(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (x, y, z) = (rng.gen_range(0..self.order), rng.gen_range(0..self.order), rng.gen_range(0..self.order));
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                return Err(Error::InvalidTable(format!("associativity fails on ({x}, {y}, {z})")));
            }
            if self.mul(x, 0) != x || self.mul(0, x) != x {
                return Err(Error::InvalidTable(format!("identity fails on {x}")));
            }
            if self.mul(x, self.inv(x)) != 0 {
                return Err(Error::InvalidTable(format!("inverse fails on {x}")));
            }
        }
        Ok(())
    }

    /// Elements reached from `start` by right multiplication with `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut i = 0;
        while i < out.len() {
            for &s in gens {
                let y = self.mul(out[i], s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for x in 0..self.order {
            if !inside[x] {
                gens.push(x);
                for y in self.closure(&gens) {
                    inside[y] = true;
                }
            }
        }
        gens
    }

    /// Replaces the generating set. Every element must be reachable.
    pub fn with_generators(&self, gens: Vec<usize>) -> Result<Arc<Self>> {
        if gens.iter().any(|&g| g >= self.order) || self.closure(&gens).len() != self.order {
            return Err(Error::InvalidInput("generators do not generate the group".into()));
        }
        let mut g = self.clone();
        g.generators = gens;
        Ok(Arc::new(g))
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.backend {
            Backend::Table { .. } => "table",
            Backend::Abelian { .. } => "abelian",
            Backend::Semidirect(_) => "semidirect",
        };
        write!(f, "FiniteGroup({kind}, order {}, generators {:?})", self.order, self.generators)
    }
}

/// Compares two group handles: same allocation or same structure.
pub fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(|c| (c + 1).to_string()).collect();
        out.push('(');
        out.push_str(&parts.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three_from_permutations() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 512).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.label(0), "()");
        g.spot_check_axioms(100, 1).unwrap();
    }

    #[test]
    fn broken_associativity_is_rejected() {
        // A Latin square with identity 0 that is not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&t), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // Z/2 with identity at index 1.
        let g = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.label(0), "1");
    }

    #[test]
    fn abelian_arithmetic() {
        let g = FiniteGroup::abelian(&[2, 4]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.element_order(2), 4);
        assert_eq!(g.mul(3, g.inv(3)), 0);
        g.spot_check_axioms(200, 3).unwrap();
        assert_eq!(g.label(5), "(1,2)");
    }
}
