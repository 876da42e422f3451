use std::collections::HashSet;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::finite::FiniteGroup;
use crate::group::hom::GroupHom;
use crate::zmod::gcd;

/// A subgroup, stored as a sorted list of parent elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g >= parent.order()) {
            return Err(Error::InvalidInput(format!("element {g} out of range")));
        }
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        Ok(Subgroup { parent: parent.clone(), elements: parent.closure(&gens), generators: gens })
    }

    /// Checks closure of an explicit element list.
    pub fn from_elements(parent: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Self> {
        let mut els = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        let set: HashSet<usize> = els.iter().copied().collect();
        if !set.contains(&0) || els.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotASubgroup("element list misses the identity or is out of range".into()));
        }
        for &x in &els {
            for &y in &els {
                if !set.contains(&parent.mul(x, y)) {
                    return Err(Error::NotASubgroup(format!("not closed: {x} * {y}")));
                }
            }
        }
        let sub = Subgroup::generated(parent, &els)?;
        let gens = sub.minimal_generators();
        Ok(Subgroup { parent: parent.clone(), elements: els, generators: gens })
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup { parent: parent.clone(), elements: parent.elements().collect(), generators: parent.generators().to_vec() }
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup { parent: parent.clone(), elements: vec![0], generators: Vec::new() }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.generators().iter().all(|&s| self.generators.iter().all(|&h| self.contains(g.conjugate(s, h))))
    }

    pub fn conjugate_by(&self, x: usize) -> Subgroup {
        let gens: Vec<usize> = self.generators.iter().map(|&h| self.parent.conjugate(x, h)).collect();
        let mut els: Vec<usize> = self.elements.iter().map(|&h| self.parent.conjugate(x, h)).collect();
        els.sort_unstable();
        Subgroup { parent: self.parent.clone(), elements: els, generators: gens }
    }

    fn minimal_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.parent.order()];
        inside[0] = true;
        for &x in &self.elements {
            if !inside[x] {
                gens.push(x);
                for y in self.parent.closure(&gens) {
                    inside[y] = true;
                }
            }
        }
        gens
    }

    /// The subgroup as a standalone table group with its inclusion.
    pub fn to_group(&self) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        let parent = &self.parent;
        let elems = &self.elements;
        let local = |x: usize| elems.binary_search(&x).expect("subgroup is closed");
        let table: Vec<Vec<usize>> =
            elems.iter().map(|&x| elems.iter().map(|&y| local(parent.mul(x, y))).collect()).collect();
        let g = FiniteGroup::from_table(&table)?;
        let gens: Vec<usize> = self.generators.iter().map(|&x| local(x)).collect();
        let g = g.with_generators(gens)?;
        let inclusion = GroupHom::from_map(&g, parent, elems.clone())?;
        Ok((g, inclusion))
    }

    /// Invariant factors when abelian, by counting elements of prime-power order.
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        let g = &self.parent;
        let commutes = self.generators.iter().all(|&a| self.generators.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        if !commutes {
            return None;
        }
        let orders: Vec<u64> = self.elements.iter().map(|&x| g.element_order(x)).collect();
        Some(invariants_from_orders(self.order() as u64, &orders))
    }

    pub fn is_bicyclic(&self) -> bool {
        self.abelian_invariants().is_some_and(|f| f.len() <= 2)
    }

    pub fn is_cyclic(&self) -> bool {
        self.abelian_invariants().is_some_and(|f| f.len() <= 1)
    }
}

/// Invariant factors of an abelian group of order `n` from its element orders.
pub fn invariants_from_orders(n: u64, orders: &[u64]) -> Vec<u64> {
    let mut factors: Vec<u64> = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            p += 1;
            continue;
        }
        let mut sylow = 1u64;
        while rest.is_multiple_of(p) {
            rest /= p;
            sylow *= p;
        }
        // r[k] = number of cyclic p-factors of order >= p^(k+1).
        let mut ranks = Vec::new();
        let (mut prev, mut pk) = (1u64, p);
        loop {
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let mut r = 0usize;
            let mut ratio = count / prev;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            if r == 0 {
                break;
            }
            ranks.push(r);
            if count == sylow {
                break;
            }
            prev = count;
            pk *= p;
        }
        let width = ranks.first().copied().unwrap_or(0);
        if factors.len() < width {
            let extra = width - factors.len();
            let mut padded = vec![1u64; extra];
            padded.append(&mut factors);
            factors = padded;
        }
        // Largest p-part goes to the last factor.
        let len = factors.len();
        for j in 0..width {
            let e = ranks.iter().filter(|&&r| r > j).count() as u32;
            factors[len - 1 - j] *= p.pow(e);
        }
        p += 1;
    }
    factors
}

/// All subgroups, sorted by order and then by element list.
pub fn subgroups(group: &Arc<FiniteGroup>, caps: &Caps) -> Result<Vec<Subgroup>> {
    if group.order() > caps.max_group_order {
        return Err(Error::cap("group order for subgroup enumeration", group.order() as u128, caps.max_group_order as u128));
    }
    let n = group.order();
    // Cyclic subgroups seed the search; every subgroup is a join of them.
    let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut seen_cyclic: HashSet<Vec<usize>> = HashSet::new();
    for x in 1..n {
        let c = group.closure(&[x]);
        if seen_cyclic.insert(c.clone()) {
            cyclic.push((x, c));
        }
    }
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let mut out: Vec<Subgroup> = vec![Subgroup::trivial(group)];
    found.insert(vec![0]);
    let mut i = 0;
    while i < out.len() {
        let k = out[i].clone();
        for (x, c) in &cyclic {
            if k.contains(*x) || c.iter().all(|&y| k.contains(y)) {
                continue;
            }
            let mut gens = k.generators.clone();
            gens.push(*x);
            let els = group.closure(&gens);
            if found.insert(els.clone()) {
                out.push(Subgroup { parent: group.clone(), elements: els, generators: gens });
            }
        }
        i += 1;
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(out)
}

/// Maximal members of the family of bicyclic subgroups.
pub fn bicyclic_family(group: &Arc<FiniteGroup>, caps: &Caps) -> Result<Vec<Subgroup>> {
    let bic: Vec<Subgroup> = subgroups(group, caps)?.into_iter().filter(|h| h.is_bicyclic()).collect();
    Ok(bic
        .iter()
        .filter(|h| !bic.iter().any(|k| k.order() > h.order() && h.is_subgroup_of(k)))
        .cloned()
        .collect())
}

/// `lcm` of the orders of the given subgroups.
pub fn lcm_of_orders(family: &[Subgroup]) -> u64 {
    family.iter().fold(1u64, |acc, h| {
        let o = h.order() as u64;
        acc / gcd(acc, o) * o
    })
}

/// Conjugacy classes: for each element, the index of its class, plus the
/// classes themselves ordered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyData {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl ConjugacyData {
    pub fn representative(&self, x: usize) -> usize {
        self.classes[self.class_of[x]][0]
    }
}

pub fn conjugacy_data(group: &Arc<FiniteGroup>) -> ConjugacyData {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        // Closure of {x} under conjugation by generators.
        let mut class = vec![x];
        class_of[x] = id;
        let mut i = 0;
        while i < class.len() {
            for &s in group.generators() {
                let y = group.conjugate(s, class[i]);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    class.push(y);
                }
            }
            i += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    ConjugacyData { class_of, classes }
}

/// Quotient by a normal subgroup, with cosets indexed by their smallest element.
pub fn quotient_group(normal: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    if !normal.is_normal() {
        return Err(Error::NotASubgroup("subgroup is not normal".into()));
    }
    let g = normal.parent();
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] == usize::MAX {
            for &h in normal.elements() {
                coset_of[g.mul(x, h)] = reps.len();
            }
            reps.push(x);
        }
    }
    let table: Vec<Vec<usize>> =
        reps.iter().map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect()).collect();
    let q = FiniteGroup::from_table(&table)?;
    let gens: Vec<usize> = g.generators().iter().map(|&s| coset_of[s]).collect();
    let q = q.with_generators(gens)?;
    let proj = GroupHom::from_map(g, &q, coset_of)?;
    Ok((q, proj))
}

/// Direct product with index `i * |b| + j`.
pub fn direct_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>, caps: &Caps) -> Result<Arc<FiniteGroup>> {
    let n = a.order() * b.order();
    if n > caps.max_group_order {
        return Err(Error::cap("direct product order", n as u128, caps.max_group_order as u128));
    }
    let (na, nb) = (a.order(), b.order());
    let table: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
        .collect();
    let _ = na;
    let g = FiniteGroup::from_table(&table)?;
    let gens: Vec<usize> =
        a.generators().iter().map(|&s| s * nb).chain(b.generators().iter().copied()).collect();
    g.with_generators(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn elementary_abelian_eight() {
        let g = FiniteGroup::abelian(&[2, 2, 2]).unwrap();
        let subs = subgroups(&g, &caps()).unwrap();
        let by_order: Vec<usize> = [1, 2, 4, 8].iter().map(|&o| subs.iter().filter(|h| h.order() == o).count()).collect();
        assert_eq!(by_order, vec![1, 7, 7, 1]);
        let fam = bicyclic_family(&g, &caps()).unwrap();
        assert_eq!(fam.len(), 7);
        assert!(fam.iter().all(|h| h.order() == 4));
    }

    #[test]
    fn cyclic_six_has_four_subgroups() {
        let g = FiniteGroup::abelian(&[6]).unwrap();
        assert_eq!(subgroups(&g, &caps()).unwrap().len(), 4);
        assert_eq!(Subgroup::whole(&g).abelian_invariants(), Some(vec![6]));
    }

    #[test]
    fn invariants_regroup_primes() {
        let g = FiniteGroup::abelian(&[2, 3, 4]).unwrap();
        assert_eq!(Subgroup::whole(&g).abelian_invariants(), Some(vec![2, 12]));
        let g = FiniteGroup::abelian(&[2, 2, 2]).unwrap();
        assert_eq!(Subgroup::whole(&g).abelian_invariants(), Some(vec![2, 2, 2]));
    }

    #[test]
    fn symmetric_three_classes_and_quotient() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 512).unwrap();
        let cd = conjugacy_data(&g);
        let mut sizes: Vec<usize> = cd.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let a3 = subgroups(&g, &caps()).unwrap().into_iter().find(|h| h.order() == 3).unwrap();
        assert!(a3.is_normal());
        let (q, proj) = quotient_group(&a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(proj.is_surjective());
        let c2 = subgroups(&g, &caps()).unwrap().into_iter().find(|h| h.order() == 2).unwrap();
        assert!(!c2.is_normal());
        assert!(quotient_group(&c2).is_err());
    }

    #[test]
    fn from_elements_rejects_non_subgroups() {
        let g = FiniteGroup::abelian(&[4]).unwrap();
        assert!(Subgroup::from_elements(&g, &[0, 1]).is_err());
        let h = Subgroup::from_elements(&g, &[0, 2]).unwrap();
        let (hg, inc) = h.to_group().unwrap();
        assert_eq!(hg.order(), 2);
        assert_eq!(inc.apply(1), 2);
    }

    #[test]
    fn direct_product_order_and_invariants() {
        let a = FiniteGroup::abelian(&[2]).unwrap();
        let b = FiniteGroup::abelian(&[4]).unwrap();
        let p = direct_product(&a, &b, &caps()).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(Subgroup::whole(&p).abelian_invariants(), Some(vec![2, 4]));
    }
}
