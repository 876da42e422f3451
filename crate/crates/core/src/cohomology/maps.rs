use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gmodule::AugmentationSequence;
use crate::group::{same_group, GroupHom, Subgroup};
use crate::zmod::{hom_kernel, lcm, quotient_structure, AbelianStructure, Quotient, ResidueMatrix};

use super::abelian::{h1, tate_h0, AbelianCocycle, CohGroup};

/// A homomorphism between finite abelian groups in invariant-factor
/// coordinates, given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelMap {
    pub source_factors: Vec<u64>,
    pub target_factors: Vec<u64>,
    pub images: Vec<Vec<u64>>,
}

impl LabelMap {
    pub fn new(source_factors: Vec<u64>, target_factors: Vec<u64>, images: Vec<Vec<u64>>) -> Result<Self> {
        if images.len() != source_factors.len() || images.iter().any(|v| v.len() != target_factors.len()) {
            return Err(Error::DimensionMismatch("label map images do not match the factors".into()));
        }
        // Each generator's image must be killed by the generator's order.
        for (o, img) in source_factors.iter().zip(&images) {
            for (x, t) in img.iter().zip(&target_factors) {
                if !(*o as u128 * *x as u128).is_multiple_of(*t as u128) {
                    return Err(Error::InvalidInput("label map is not well defined".into()));
                }
            }
        }
        Ok(LabelMap { source_factors, target_factors, images })
    }

    pub fn apply(&self, coords: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.target_factors.len()];
        for (c, img) in coords.iter().zip(&self.images) {
            for ((o, x), t) in out.iter_mut().zip(img).zip(&self.target_factors) {
                *o = ((*o as u128 + *c as u128 * *x as u128) % *t as u128) as u64;
            }
        }
        out
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LabelMap) -> Result<LabelMap> {
        if self.target_factors != other.source_factors {
            return Err(Error::DimensionMismatch("label maps do not compose".into()));
        }
        let images = self.images.iter().map(|v| other.apply(v)).collect();
        LabelMap::new(self.source_factors.clone(), other.target_factors.clone(), images)
    }

    fn common_modulus(&self) -> u64 {
        self.source_factors.iter().chain(&self.target_factors).fold(1u64, |a, &d| lcm(a, d)).max(2)
    }

    /// Kernel as a quotient of source coordinate vectors by the order relations.
    pub fn kernel(&self) -> Result<Quotient> {
        let m = self.common_modulus();
        let s = self.source_factors.len();
        let mut order_rows = ResidueMatrix::zeros(m, 0, s);
        for (i, &o) in self.source_factors.iter().enumerate() {
            let mut r = vec![0u64; s];
            r[i] = o % m;
            order_rows.push_row(&r);
        }
        let ker = if self.target_factors.is_empty() {
            ResidueMatrix::identity(m, s).stack(&order_rows)?
        } else {
            hom_kernel(m, &self.source_factors, &self.target_factors, &self.images)?
        };
        quotient_structure(&ker, &order_rows)
    }

    pub fn kernel_structure(&self) -> Result<AbelianStructure> {
        Ok(self.kernel()?.structure().clone())
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.structure().is_trivial())
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.iter().all(|&x| x == 0))
    }
}

fn check_parent(h: &Subgroup, coh: &CohGroup) -> Result<()> {
    if !same_group(h.parent(), coh.group()) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    Ok(())
}

/// `H¹(Γ, A) -> H¹(H, A)` with the target computed from scratch.
pub fn restriction_map(coh: &CohGroup, h: &Subgroup, caps: &Caps) -> Result<(CohGroup, LabelMap)> {
    check_parent(h, coh)?;
    let target = h1(&coh.module().restrict(h)?, caps)?;
    let map = restriction_into(coh, h, &target)?;
    Ok((target, map))
}

/// Restriction into an already computed `H¹(H, A)`.
pub fn restriction_into(coh: &CohGroup, h: &Subgroup, target: &CohGroup) -> Result<LabelMap> {
    check_parent(h, coh)?;
    let images = coh
        .generators()
        .iter()
        .map(|a| target.coordinates(&a.restrict(h)))
        .collect::<Result<Vec<_>>>()?;
    LabelMap::new(coh.invariant_factors().to_vec(), target.invariant_factors().to_vec(), images)
}

/// `f^*: H¹(Γ, A) -> H¹(Γ', A∘f)`, `a -> a∘f`.
pub fn pullback_map(f: &GroupHom, coh: &CohGroup, caps: &Caps) -> Result<(CohGroup, LabelMap)> {
    if !same_group(f.target(), coh.group()) {
        return Err(Error::ActionMismatch("the homomorphism does not land in the acting group".into()));
    }
    let pulled = coh.module().pullback(f)?;
    let target = h1(&pulled, caps)?;
    let images = coh
        .generators()
        .iter()
        .map(|a| {
            let values = f.source().elements().map(|x| a.values[f.apply(x)].clone()).collect();
            target.coordinates(&AbelianCocycle { values })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = LabelMap::new(coh.invariant_factors().to_vec(), target.invariant_factors().to_vec(), images)?;
    Ok((target, map))
}

/// The connecting map `Ĥ⁰(H, B) -> H¹(H, I)` of `0 -> I -> R -> B -> 0`.
#[derive(Clone, Debug)]
pub struct ConnectingDelta {
    pub h0: CohGroup,
    pub h1: CohGroup,
    pub map: LabelMap,
    pub orders_equal: bool,
    pub injective: bool,
}

impl ConnectingDelta {
    pub fn is_bijective(&self) -> bool {
        self.orders_equal && self.injective
    }
}

/// `δ(b)` is the class of `h -> h·r - r` for the lift `r = b·e`.
pub fn delta_cocycle(h: &Subgroup, aug: &AugmentationSequence, b: u64) -> Result<AbelianCocycle> {
    let r = aug.lift(b);
    let values = h
        .elements()
        .iter()
        .map(|&x| aug.ideal_coordinates(&aug.ring.sub(&aug.ring.act(x, &r), &r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianCocycle { values })
}

pub fn connecting_delta(h: &Subgroup, aug: &AugmentationSequence, caps: &Caps) -> Result<ConnectingDelta> {
    if !same_group(h.parent(), aug.ring.group()) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let h0 = tate_h0(&aug.quotient.restrict(h)?)?;
    let target = h1(&aug.ideal.restrict(h)?, caps)?;
    let images = (0..h0.invariant_factors().len())
        .map(|k| {
            let mut c = vec![0u64; h0.invariant_factors().len()];
            c[k] = 1;
            let b = h0.h0_element(&c)[0];
            target.coordinates(&delta_cocycle(h, aug, b)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = LabelMap::new(h0.invariant_factors().to_vec(), target.invariant_factors().to_vec(), images)?;
    let orders_equal = h0.order() == target.order();
    let injective = map.is_injective()?;
    Ok(ConnectingDelta { h0, h1: target, map, orders_equal, injective })
}
