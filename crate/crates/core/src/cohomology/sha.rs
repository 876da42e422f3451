use serde::Serialize;

use crate::caps::Caps;
use crate::error::Result;
use crate::group::{bicyclic_family, lcm_of_orders, FiniteGroup, Subgroup};
use crate::zmod::{gcd, AbelianStructure};

use super::abelian::{h1, AbelianCocycle, CohGroup};
use super::maps::{restriction_into, LabelMap};

/// Classes restricting to zero on every member of a subgroup family.
#[derive(Clone, Debug)]
pub struct ShaKernel {
    pub structure: AbelianStructure,
    /// One cocycle per invariant factor of the kernel.
    pub witnesses: Vec<AbelianCocycle>,
    /// Witness coordinates in the ambient H¹.
    pub witness_coordinates: Vec<Vec<u64>>,
    pub restrictions: Vec<CohGroup>,
    pub combined: LabelMap,
}

impl ShaKernel {
    pub fn invariant_factors(&self) -> &[u64] {
        &self.structure.invariant_factors
    }
}

pub fn sha_kernel(coh: &CohGroup, family: &[Subgroup], caps: &Caps) -> Result<ShaKernel> {
    let mut restrictions = Vec::with_capacity(family.len());
    let mut target_factors = Vec::new();
    let mut images: Vec<Vec<u64>> = vec![Vec::new(); coh.invariant_factors().len()];
    for h in family {
        let target = h1(&coh.module().restrict(h)?, caps)?;
        let map = restriction_into(coh, h, &target)?;
        target_factors.extend_from_slice(target.invariant_factors());
        for (acc, img) in images.iter_mut().zip(&map.images) {
            acc.extend_from_slice(img);
        }
        restrictions.push(target);
    }
    let combined = LabelMap::new(coh.invariant_factors().to_vec(), target_factors, images)?;
    let kernel = combined.kernel()?;
    let structure = kernel.structure().clone();
    let witness_coordinates: Vec<Vec<u64>> = structure
        .generator_reps
        .row_iter()
        .map(|row| row.iter().zip(coh.invariant_factors()).map(|(&x, &d)| x % d).collect())
        .collect();
    let witnesses = witness_coordinates.iter().map(|c| coh.cocycle(c)).collect();
    Ok(ShaKernel { structure, witnesses, witness_coordinates, restrictions, combined })
}

/// Kernel of the diagonal reduction `Z/m -> ∏ Z/gcd(|H|, m)` over the
/// maximal bicyclic subgroups `H`.
#[derive(Clone, Debug, Serialize)]
pub struct ShaFormula {
    pub modulus: u64,
    pub group_is_bicyclic: bool,
    pub family_orders: Vec<usize>,
    pub lcm_of_orders: u64,
    pub invariant_factors: Vec<u64>,
}

pub fn sha_bic_formula(group: &std::sync::Arc<FiniteGroup>, m: u64, caps: &Caps) -> Result<ShaFormula> {
    let family = bicyclic_family(group, caps)?;
    let bicyclic = Subgroup::whole(group).is_bicyclic();
    let family_orders: Vec<usize> = family.iter().map(|h| h.order()).collect();
    let targets: Vec<u64> = family.iter().map(|h| gcd(h.order() as u64, m)).filter(|&t| t > 1).collect();
    let diag = LabelMap::new(vec![m], targets.clone(), vec![targets.iter().map(|_| 1).collect()])?;
    let invariant_factors = if m == 1 { Vec::new() } else { diag.kernel_structure()?.invariant_factors };
    Ok(ShaFormula {
        modulus: m,
        group_is_bicyclic: bicyclic,
        family_orders,
        lcm_of_orders: lcm_of_orders(&family),
        invariant_factors,
    })
}
