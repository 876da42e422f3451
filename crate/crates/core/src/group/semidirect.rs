use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::finite::{FiniteGroup, SemidirectBackend};
use crate::group::hom::GroupHom;

/// `E = A x| G` with its section, projection and kernel inclusion.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: Arc<FiniteGroup>,
    /// `A` as an abelian group in the module's coordinates.
    pub kernel: Arc<FiniteGroup>,
    pub module: GModule,
    pub section: GroupHom,
    pub projection: GroupHom,
    pub inclusion: GroupHom,
}

impl Semidirect {
    pub fn complement(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    /// Index of `(a, g)`.
    pub fn pair(&self, a: &[u64], g: usize) -> usize {
        self.module.encode(a) * self.complement().order() + g
    }

    /// `(a, g)` of an index.
    pub fn split(&self, x: usize) -> (Vec<u64>, usize) {
        let n = self.complement().order();
        (self.module.decode(x / n), x % n)
    }
}

/// Builds `A x| G` from a G-module `A`, elements encoded as pairs with
/// `(a1, g1)(a2, g2) = (a1 + g1·a2, g1 g2)`.
pub fn semidirect_product(module: &GModule) -> Result<Semidirect> {
    let g = module.group().clone();
    let kernel_order = module.order();
    let kernel_order: usize = usize::try_from(&kernel_order)
        .map_err(|_| Error::cap("semidirect kernel order", u128::MAX, usize::MAX as u128))?;
    let e = FiniteGroup::from_semidirect(SemidirectBackend {
        module: module.clone(),
        complement: g.clone(),
        kernel_order,
    })?;
    let kernel = FiniteGroup::abelian(module.moduli())?;
    let section = GroupHom::section(&g, &e);
    let projection = GroupHom::projection(&e, &g);
    let inclusion = GroupHom::kernel_inclusion(&kernel, &e);
    let sd = Semidirect { group: e, kernel, module: module.clone(), section, projection, inclusion };
    validate(&sd)?;
    Ok(sd)
}

/// Semidirect product from an abelian group in coordinates, a group `G`
/// and one action matrix per generator of `G`.
pub fn semidirect_from_parts(
    a: &Arc<FiniteGroup>,
    g: &Arc<FiniteGroup>,
    action: Vec<crate::zmod::ResidueMatrix>,
) -> Result<Semidirect> {
    let moduli = a
        .abelian_moduli()
        .ok_or_else(|| Error::InvalidAction("the normal factor must be given in abelian coordinates".into()))?;
    let module = GModule::new(g, moduli, action)?;
    semidirect_product(&module)
}

fn validate(sd: &Semidirect) -> Result<()> {
    let e = &sd.group;
    let g = sd.complement();
    // Section and projection are homomorphisms with π∘s = id; checked on
    // generator pairs, which determines them.
    for &x in g.generators() {
        for &y in g.generators() {
            if sd.section.apply(g.mul(x, y)) != e.mul(sd.section.apply(x), sd.section.apply(y)) {
                return Err(Error::InvalidAction("section is not multiplicative".into()));
            }
        }
        if sd.projection.apply(sd.section.apply(x)) != x {
            return Err(Error::InvalidAction("projection does not split the section".into()));
        }
    }
    for &x in e.generators() {
        for &y in e.generators() {
            if sd.projection.apply(e.mul(x, y)) != g.mul(sd.projection.apply(x), sd.projection.apply(y)) {
                return Err(Error::InvalidAction("projection is not multiplicative".into()));
            }
        }
    }
    // ι(A) is normal and killed by π.
    for &a in sd.kernel.generators() {
        let ia = sd.inclusion.apply(a);
        if sd.projection.apply(ia) != 0 {
            return Err(Error::InvalidAction("kernel does not map to the identity".into()));
        }
        for &x in e.generators() {
            if sd.projection.apply(e.conjugate(x, ia)) != 0 {
                return Err(Error::InvalidAction("kernel is not normal".into()));
            }
        }
    }
    e.spot_check_axioms(256, 0x5eed)
}
