use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{same_group, FiniteGroup, GroupHom};

/// An action of Γ on a finite group G by automorphisms, stored as one
/// permutation of G per element of Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NabAction {
    gamma: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    perms: Vec<Vec<usize>>,
}

impl NabAction {
    pub fn trivial(gamma: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Self {
        let id: Vec<usize> = target.elements().collect();
        NabAction { gamma: gamma.clone(), target: target.clone(), perms: vec![id; gamma.order()] }
    }

    /// Extends automorphisms given on the generators of Γ, checking that
    /// each is an automorphism and that the relations of Γ hold.
    pub fn from_generator_automorphisms(
        gamma: &Arc<FiniteGroup>,
        target: &Arc<FiniteGroup>,
        gen_perms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if gen_perms.len() != gamma.generators().len() {
            return Err(Error::InvalidAction(format!(
                "{} automorphisms for {} generators",
                gen_perms.len(),
                gamma.generators().len()
            )));
        }
        for (k, p) in gen_perms.iter().enumerate() {
            check_automorphism(target, p).map_err(|m| Error::InvalidAction(format!("generator {k}: {m}")))?;
        }
        let n = gamma.order();
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; n];
        perms[0] = Some(target.elements().collect());
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&s, ps) in gamma.generators().iter().zip(&gen_perms) {
                let y = gamma.mul(x, s);
                // (x s)(g) = x(s(g)).
                let px = perms[x].as_ref().unwrap();
                let py: Vec<usize> = ps.iter().map(|&g| px[g]).collect();
                match &perms[y] {
                    None => {
                        perms[y] = Some(py);
                        queue.push(y);
                    }
                    Some(q) if *q != py => {
                        return Err(Error::InvalidAction("generator relations of the acting group fail".into()));
                    }
                    Some(_) => {}
                }
            }
            i += 1;
        }
        Ok(NabAction { gamma: gamma.clone(), target: target.clone(), perms: perms.into_iter().map(Option::unwrap).collect() })
    }

    /// `σ(x) = φ(σ) x φ(σ)⁻¹` for a homomorphism `φ: Γ -> G`.
    pub fn by_conjugation(gamma: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, phi: &GroupHom) -> Result<Self> {
        if !same_group(phi.source(), gamma) || !same_group(phi.target(), target) {
            return Err(Error::ActionMismatch("conjugating homomorphism has the wrong groups".into()));
        }
        let perms = gamma
            .elements()
            .map(|s| {
                let g = phi.apply(s);
                target.elements().map(|x| target.conjugate(g, x)).collect()
            })
            .collect();
        Ok(NabAction { gamma: gamma.clone(), target: target.clone(), perms })
    }

    /// Action from a full table of permutations, validated.
    pub fn from_table(gamma: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != gamma.order() {
            return Err(Error::InvalidAction("one permutation per element required".into()));
        }
        let gens: Vec<Vec<usize>> = gamma.generators().iter().map(|&s| perms[s].clone()).collect();
        let act = Self::from_generator_automorphisms(gamma, target, gens)?;
        if act.perms != perms {
            return Err(Error::InvalidAction("table is not a homomorphism into Aut(G)".into()));
        }
        Ok(act)
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, sigma: usize, x: usize) -> usize {
        self.perms[sigma][x]
    }

    pub fn perm(&self, sigma: usize) -> &[usize] {
        &self.perms[sigma]
    }

    pub fn is_trivial(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.target
            .elements()
            .filter(|&x| self.gamma.generators().iter().all(|&s| self.perms[s][x] == x))
            .collect()
    }

    pub fn is_fixed(&self, x: usize) -> bool {
        self.gamma.generators().iter().all(|&s| self.perms[s][x] == x)
    }

    /// Action induced on a subgroup (given by an injective homomorphism
    /// `inc: H -> G` whose image is stable), in the coordinates of `H`.
    pub fn restrict_along(&self, inc: &GroupHom) -> Result<NabAction> {
        if !same_group(inc.target(), &self.target) {
            return Err(Error::ActionMismatch("inclusion into a different group".into()));
        }
        let h = inc.source().clone();
        let mut back = std::collections::HashMap::with_capacity(h.order());
        for x in h.elements() {
            back.insert(inc.apply(x), x);
        }
        let perms = self
            .perms
            .iter()
            .map(|p| {
                h.elements()
                    .map(|x| {
                        back.get(&p[inc.apply(x)])
                            .copied()
                            .ok_or_else(|| Error::ActionMismatch("subgroup is not stable under the action".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NabAction { gamma: self.gamma.clone(), target: h, perms })
    }

    /// Action induced on a quotient `π: G -> Q`, which must be compatible.
    pub fn descend_along(&self, pi: &GroupHom) -> Result<NabAction> {
        if !same_group(pi.source(), &self.target) {
            return Err(Error::ActionMismatch("projection from a different group".into()));
        }
        let q = pi.target().clone();
        let mut perms = vec![vec![usize::MAX; q.order()]; self.gamma.order()];
        for (sigma, p) in self.perms.iter().enumerate() {
            for x in self.target.elements() {
                let (from, to) = (pi.apply(x), pi.apply(p[x]));
                let slot = &mut perms[sigma][from];
                if *slot == usize::MAX {
                    *slot = to;
                } else if *slot != to {
                    return Err(Error::ActionMismatch("action does not descend to the quotient".into()));
                }
            }
        }
        Ok(NabAction { gamma: self.gamma.clone(), target: q, perms })
    }

    pub(crate) fn from_parts_unchecked(gamma: Arc<FiniteGroup>, target: Arc<FiniteGroup>, perms: Vec<Vec<usize>>) -> Self {
        NabAction { gamma, target, perms }
    }
}

fn check_automorphism(g: &Arc<FiniteGroup>, p: &[usize]) -> std::result::Result<(), String> {
    if p.len() != g.order() {
        return Err("wrong length".into());
    }
    let mut seen = vec![false; g.order()];
    for &x in p {
        if x >= g.order() || seen[x] {
            return Err("not a bijection".into());
        }
        seen[x] = true;
    }
    for x in g.elements() {
        for &s in g.generators() {
            if p[g.mul(x, s)] != g.mul(p[x], p[s]) {
                return Err("not multiplicative".into());
            }
        }
    }
    Ok(())
}
