use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::finite::{same_group, FiniteGroup};
use crate::group::subgroup::Subgroup;

/// A homomorphism between finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    kind: HomKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum HomKind {
    Map(Vec<usize>),
    /// `E = A x| G -> G`.
    Projection,
    /// `G -> E = A x| G`.
    Section,
    /// `A -> E = A x| G`, with `A` in its abelian coordinates.
    KernelInclusion,
}

impl GroupHom {
    /// Builds the map from generator images, checking every relation.
    pub fn from_generator_images(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, images: &[usize]) -> Result<Self> {
        let gens = source.generators();
        if images.len() != gens.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        if let Some(&y) = images.iter().find(|&&y| y >= target.order()) {
            return Err(Error::InvalidInput(format!("image {y} out of range")));
        }
        let n = source.order();
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&s, &fs) in gens.iter().zip(images) {
                let y = source.mul(x, s);
                let fy = target.mul(map[x], fs);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return Err(Error::NotAHomomorphism(format!(
                        "generator images are inconsistent at {}",
                        source.label(y)
                    )));
                }
            }
            i += 1;
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), kind: HomKind::Map(map) })
    }

    /// Checks multiplicativity on all pairs of (element, generator).
    pub fn from_map(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::DimensionMismatch(format!("map of length {} on a group of order {}", map.len(), source.order())));
        }
        if map.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidInput("image out of range".into()));
        }
        for x in source.elements() {
            for &s in source.generators() {
                if map[source.mul(x, s)] != target.mul(map[x], map[s]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "f({} * {}) differs from f({}) * f({})",
                        source.label(x),
                        source.label(s),
                        source.label(x),
                        source.label(s)
                    )));
                }
            }
        }
        if map.first() != Some(&0) {
            return Err(Error::NotAHomomorphism("identity not preserved".into()));
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), kind: HomKind::Map(map) })
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: group.clone(), target: group.clone(), kind: HomKind::Map(group.elements().collect()) }
    }

    pub(crate) fn projection(e: &Arc<FiniteGroup>, g: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: e.clone(), target: g.clone(), kind: HomKind::Projection }
    }

    pub(crate) fn section(g: &Arc<FiniteGroup>, e: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: g.clone(), target: e.clone(), kind: HomKind::Section }
    }

    pub(crate) fn kernel_inclusion(a: &Arc<FiniteGroup>, e: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: a.clone(), target: e.clone(), kind: HomKind::KernelInclusion }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        match &self.kind {
            HomKind::Map(m) => m[x],
            HomKind::Projection => x % self.target.order(),
            HomKind::Section => x,
            HomKind::KernelInclusion => {
                let sd = self.target.semidirect_data().expect("inclusion into a semidirect product");
                x * sd.complement.order()
            }
        }
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !same_group(&self.target, &other.source) {
            return Err(Error::DimensionMismatch("composite of maps with mismatched groups".into()));
        }
        let map = self.source.elements().map(|x| other.apply(self.apply(x))).collect();
        Ok(GroupHom { source: self.source.clone(), target: other.target.clone(), kind: HomKind::Map(map) })
    }

    pub fn is_surjective(&self) -> bool {
        match self.kind {
            HomKind::Projection => true,
            HomKind::Section | HomKind::KernelInclusion => self.source.order() == self.target.order(),
            HomKind::Map(_) => {
                let images: Vec<usize> = self.source.generators().iter().map(|&s| self.apply(s)).collect();
                self.target.closure(&images).len() == self.target.order()
            }
        }
    }

    pub fn is_injective(&self) -> bool {
        match self.kind {
            HomKind::Section | HomKind::KernelInclusion => true,
            _ => self.kernel().order() == 1,
        }
    }

    pub fn kernel(&self) -> Subgroup {
        let els: Vec<usize> = self.source.elements().filter(|&x| self.apply(x) == 0).collect();
        Subgroup::from_elements(&self.source, &els).expect("kernels are subgroups")
    }

    pub fn image(&self) -> Subgroup {
        let images: Vec<usize> = self.source.generators().iter().map(|&s| self.apply(s)).collect();
        Subgroup::generated(&self.target, &images).expect("images are in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_images_are_checked() {
        let z4 = FiniteGroup::abelian(&[4]).unwrap();
        let z2 = FiniteGroup::abelian(&[2]).unwrap();
        let f = GroupHom::from_generator_images(&z4, &z2, &[1]).unwrap();
        assert!(f.is_surjective());
        assert_eq!(f.kernel().elements(), &[0, 2]);
        assert!(GroupHom::from_generator_images(&z2, &z4, &[1]).is_err());
        let g = GroupHom::from_generator_images(&z2, &z4, &[2]).unwrap();
        assert!(g.is_injective());
        assert_eq!(g.then(&f).unwrap().apply(1), 0);
    }
}
