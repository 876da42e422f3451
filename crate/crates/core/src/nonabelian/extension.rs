//! The pointed sequence `H¹(Γ,A) -> H¹(Γ,E) -> H¹(Γ,G)` for split
//! `E = A x| G`, fibers of `π*` by twisting, and the action of `_cG^Γ` on
//! `H¹(Γ,_cA)`.

use std::collections::HashMap;
use std::sync::Arc;

use super::action::NabAction;
use super::classes::{canonical, nab_h1, NabH1};
use super::twist::{twist_cocycle, twist_group};
use crate::caps::Caps;
use crate::cohomology::{h1, CohGroup};
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::{semidirect_from_parts, FiniteGroup, GroupHom, Semidirect};
use crate::zmod::{CoordinateIter, ResidueMatrix};

/// A split extension with a Γ-action on `E` preserving `ι(A)` and `s(G)`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub sd: Semidirect,
    pub act_e: NabAction,
    pub act_a: NabAction,
    pub act_g: NabAction,
    /// `A` as a Γ-module, for the abelian H¹.
    pub module_a: GModule,
    a_index: HashMap<usize, usize>,
}

impl Extension {
    pub fn new(sd: Semidirect, act_e: NabAction) -> Result<Self> {
        if !crate::group::same_group(act_e.target(), &sd.group) {
            return Err(Error::ActionMismatch("action is on a different group".into()));
        }
        let act_a = act_e.restrict_along(&sd.inclusion)?;
        let act_g = act_e.descend_along(&sd.projection)?;
        for sigma in act_e.gamma().elements() {
            for g in sd.complement().elements() {
                if act_e.apply(sigma, sd.section.apply(g)) != sd.section.apply(act_g.apply(sigma, g)) {
                    return Err(Error::ActionMismatch("action does not preserve the section".into()));
                }
            }
        }
        let module_a = module_of(&act_a, sd.module.moduli())?;
        let a_index = sd.kernel.elements().map(|a| (sd.inclusion.apply(a), a)).collect();
        Ok(Extension { sd, act_e, act_a, act_g, module_a, a_index })
    }

    pub fn trivial(sd: Semidirect, gamma: &Arc<FiniteGroup>) -> Result<Self> {
        let act = NabAction::trivial(gamma, &sd.group);
        Self::new(sd, act)
    }

    /// Γ acts on `E` by conjugation with `s(φ(σ))`.
    pub fn conjugation(sd: Semidirect, phi: &GroupHom) -> Result<Self> {
        let through = phi.then(&sd.section)?;
        let act = NabAction::by_conjugation(phi.source(), &sd.group, &through)?;
        Self::new(sd, act)
    }

    /// Each generator of Γ acts by `(a, g) -> (a·M, β(g))`.
    pub fn product_action(
        sd: Semidirect,
        gamma: &Arc<FiniteGroup>,
        on_a: Vec<ResidueMatrix>,
        on_g: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if on_a.len() != gamma.generators().len() || on_g.len() != on_a.len() {
            return Err(Error::InvalidAction("one pair of maps per generator required".into()));
        }
        let perms = on_a
            .iter()
            .zip(&on_g)
            .map(|(m, beta)| {
                sd.group
                    .elements()
                    .map(|x| {
                        let (a, g) = sd.split(x);
                        sd.pair(&sd.module.reduce(&m.apply(&a)), beta[g])
                    })
                    .collect()
            })
            .collect();
        let act = NabAction::from_generator_automorphisms(gamma, &sd.group, perms)?;
        Self::new(sd, act)
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        self.act_e.gamma()
    }

    fn iota(&self, a: usize) -> usize {
        self.sd.inclusion.apply(a)
    }

    fn iota_inv(&self, x: usize) -> Option<usize> {
        self.a_index.get(&x).copied()
    }

    /// The Γ-action on `E` twisted by the cocycle `s∘g`, for a cocycle `g`
    /// into `G`, together with its restriction to `A` and quotient on `G`.
    pub fn twisted_by(&self, g_cocycle: &[usize]) -> Result<Twisted> {
        let c: Vec<usize> = g_cocycle.iter().map(|&x| self.sd.section.apply(x)).collect();
        let e = twist_group(&self.act_e, &c)?;
        let a = e.restrict_along(&self.sd.inclusion)?;
        let g = e.descend_along(&self.sd.projection)?;
        Ok(Twisted { c, e, a, g })
    }

    pub fn sequence_maps(&self, caps: &Caps) -> Result<SequenceMaps> {
        let h1_a = h1(&self.module_a, caps)?;
        let e_classes = nab_h1(&self.act_e, caps)?;
        let g_classes = nab_h1(&self.act_g, caps)?;
        let mut a_coordinates = Vec::new();
        let mut iota_star = Vec::new();
        for coords in CoordinateIter::new(h1_a.invariant_factors().to_vec()) {
            let cocycle = h1_a.cocycle(&coords);
            let table: Vec<usize> =
                cocycle.values.iter().map(|v| self.iota(self.sd.module.encode(v))).collect();
            let k = e_classes
                .class_of(&self.act_e, &table)
                .ok_or_else(|| Error::InvalidInput("image of an A-class is not a cocycle".into()))?;
            a_coordinates.push(coords);
            iota_star.push(k);
        }
        let push = |h: &NabH1, act: &NabAction, table: Vec<usize>| {
            h.class_of(act, &table).expect("images of cocycles are cocycles")
        };
        let pi_star = e_classes
            .classes
            .iter()
            .map(|k| {
                let t = k.representative.iter().map(|&x| self.sd.projection.apply(x)).collect();
                push(&g_classes, &self.act_g, t)
            })
            .collect();
        let s_star = g_classes
            .classes
            .iter()
            .map(|k| {
                let t = k.representative.iter().map(|&x| self.sd.section.apply(x)).collect();
                push(&e_classes, &self.act_e, t)
            })
            .collect();
        Ok(SequenceMaps { h1_a, a_coordinates, iota_star, e_classes, g_classes, pi_star, s_star })
    }

    /// Classes of `E` over the `G`-class `g_cocycle`, by twisting: compute
    /// H¹(Γ,_eA) for `e = s∘g`, push into `_eE` and transport back.
    pub fn fiber_over(&self, g_cocycle: &[usize], e_classes: &NabH1, caps: &Caps) -> Result<Vec<usize>> {
        let tw = self.twisted_by(g_cocycle)?;
        let a_classes = nab_h1(&tw.a, caps)?;
        let mut out: Vec<usize> = a_classes
            .classes
            .iter()
            .map(|k| {
                let in_e: Vec<usize> = k.representative.iter().map(|&x| self.iota(x)).collect();
                let back = twist_cocycle(&self.act_e, &in_e, &tw.c);
                e_classes.class_of(&self.act_e, &back).ok_or_else(|| {
                    Error::InvalidInput("transported table is not a cocycle".into())
                })
            })
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `(g·α)_σ = e α_σ σ*(e)⁻¹` on H¹(Γ,_cA), with `c = s∘g_cocycle` and
    /// `σ*` the twisted action. Returns the canonical table of the result.
    pub fn h0_action(&self, tw: &Twisted, g: usize, alpha: &[usize], e: usize) -> Result<Vec<usize>> {
        if !tw.g.is_fixed(g) {
            return Err(Error::NotFixed(g));
        }
        if self.sd.projection.apply(e) != g {
            return Err(Error::NotAPreimage { element: e, target: g });
        }
        let eg = &self.sd.group;
        let out: Vec<usize> = alpha
            .iter()
            .enumerate()
            .map(|(s, &a)| {
                let x = eg.mul(eg.mul(e, self.iota(a)), eg.inv(tw.e.apply(s, e)));
                self.iota_inv(x).expect("g is fixed, so the product lies in A")
            })
            .collect();
        Ok(canonical(&tw.a, &out))
    }

    /// For the twist by a `G`-cocycle: the orbit label (least class index in
    /// the orbit) of each class of H¹(Γ,_cA) under the fixed points of `_cG`,
    /// and independently the label induced by equal images in H¹(Γ,_cE).
    pub fn orbit_and_fiber_partitions(&self, g_cocycle: &[usize], caps: &Caps) -> Result<(Vec<usize>, Vec<usize>)> {
        let tw = self.twisted_by(g_cocycle)?;
        let a_classes = nab_h1(&tw.a, caps)?;
        let n = a_classes.len();
        let mut orbit = (0..n).collect::<Vec<_>>();
        for g in tw.g.fixed_points() {
            let e = self.sd.section.apply(g);
            for i in 0..n {
                let image = self.h0_action(&tw, g, &a_classes.classes[i].representative, e)?;
                let j = a_classes.class_of(&tw.a, &image).expect("action preserves cocycles");
                union(&mut orbit, i, j);
            }
        }
        let orbit: Vec<usize> = (0..n).map(|i| find(&mut orbit, i)).collect();
        let e_classes = nab_h1(&tw.e, caps)?;
        let images: Vec<usize> = a_classes
            .classes
            .iter()
            .map(|k| {
                let t: Vec<usize> = k.representative.iter().map(|&x| self.iota(x)).collect();
                e_classes.class_of(&tw.e, &t).expect("ι preserves cocycles")
            })
            .collect();
        let fiber = (0..n).map(|i| (0..n).find(|&j| images[j] == images[i]).unwrap()).collect();
        Ok((relabel(&orbit), fiber))
    }
}

fn find(p: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while p[r] != r {
        r = p[r];
    }
    p[i] = r;
    r
}

fn union(p: &mut [usize], i: usize, j: usize) {
    let (a, b) = (find(p, i), find(p, j));
    p[a.max(b)] = a.min(b);
}

/// Label each entry by the least index carrying the same label.
fn relabel(labels: &[usize]) -> Vec<usize> {
    (0..labels.len()).map(|i| (0..labels.len()).find(|&j| labels[j] == labels[i]).unwrap()).collect()
}

/// Actions twisted by `c = s∘g`.
#[derive(Clone, Debug)]
pub struct Twisted {
    pub c: Vec<usize>,
    pub e: NabAction,
    pub a: NabAction,
    pub g: NabAction,
}

#[derive(Clone, Debug)]
pub struct SequenceMaps {
    pub h1_a: CohGroup,
    /// Coordinates of every class of H¹(Γ,A), in enumeration order.
    pub a_coordinates: Vec<Vec<u64>>,
    /// `ι*` on those classes, as indices into `e_classes`.
    pub iota_star: Vec<usize>,
    pub e_classes: NabH1,
    pub g_classes: NabH1,
    pub pi_star: Vec<usize>,
    pub s_star: Vec<usize>,
}

impl SequenceMaps {
    /// Classes of `E` over the given class of `G`, read off `π*` directly.
    pub fn fiber_direct(&self, g_class: usize) -> Vec<usize> {
        (0..self.pi_star.len()).filter(|&k| self.pi_star[k] == g_class).collect()
    }

    pub fn iota_image(&self) -> Vec<usize> {
        let mut v = self.iota_star.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn module_of(act: &NabAction, moduli: &[u64]) -> Result<GModule> {
    let mut strides = Vec::with_capacity(moduli.len());
    let mut stride = 1usize;
    for &d in moduli {
        strides.push(stride);
        stride *= d as usize;
    }
    let decode = |mut idx: usize| -> Vec<u64> {
        moduli
            .iter()
            .map(|&d| {
                let v = (idx % d as usize) as u64;
                idx /= d as usize;
                v
            })
            .collect()
    };
    let modulus = moduli.iter().fold(1u64, |m, &d| crate::zmod::lcm(m, d));
    let mats = act
        .gamma()
        .generators()
        .iter()
        .map(|&s| {
            let rows: Vec<Vec<u64>> = strides.iter().map(|&e| decode(act.apply(s, e))).collect();
            ResidueMatrix::from_rows(modulus, moduli.len(), &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    GModule::new(act.gamma(), moduli, mats)
}

/// A named split extension with a Γ-action.
#[derive(Clone, Debug)]
pub struct ExtensionInstance {
    pub name: String,
    pub ext: Extension,
}

/// Split extensions with `|E| <= 24` and `|Γ| <= 8`, with trivial,
/// conjugation and product actions.
pub fn split_extension_catalog() -> Result<Vec<ExtensionInstance>> {
    let c = |n: u64| FiniteGroup::abelian(&[n]);
    let m = |d: u64, rows: &[&[u64]]| ResidueMatrix::from_rows(d, rows.len(), rows);
    let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 6)?;
    let v4 = FiniteGroup::abelian(&[2, 2])?;

    let mut parts: Vec<(&str, Semidirect)> = vec![
        ("Z/3 x Z/2", semidirect_from_parts(&c(3)?, &c(2)?, vec![m(3, &[&[1]])?])?),
        ("Z/3 x| Z/2", semidirect_from_parts(&c(3)?, &c(2)?, vec![m(3, &[&[2]])?])?),
        ("Z/4 x| Z/2", semidirect_from_parts(&c(4)?, &c(2)?, vec![m(4, &[&[3]])?])?),
        ("Z/5 x| Z/2", semidirect_from_parts(&c(5)?, &c(2)?, vec![m(5, &[&[4]])?])?),
        ("Z/3 x| Z/4", semidirect_from_parts(&c(3)?, &c(4)?, vec![m(3, &[&[2]])?])?),
        ("V4 x| Z/3", semidirect_from_parts(&v4, &c(3)?, vec![m(2, &[&[0, 1], &[1, 1]])?])?),
        ("Z/7 x| Z/3", semidirect_from_parts(&c(7)?, &c(3)?, vec![m(7, &[&[2]])?])?),
        ("Z/2 x V4", semidirect_from_parts(&c(2)?, &v4, vec![m(2, &[&[1]])?, m(2, &[&[1]])?])?),
        ("V4 x| S3", semidirect_from_parts(&v4, &s3, vec![m(2, &[&[0, 1], &[1, 0]])?, m(2, &[&[0, 1], &[1, 1]])?])?),
        ("Z/3 x| S3", semidirect_from_parts(&c(3)?, &s3, vec![m(3, &[&[2]])?, m(3, &[&[1]])?])?),
    ];
    let mut out = Vec::new();
    for (name, sd) in parts.drain(..) {
        let g = sd.complement().clone();
        for gamma_order in [2u64, 3] {
            let gamma = c(gamma_order)?;
            out.push(ExtensionInstance {
                name: format!("{name}, Z/{gamma_order} trivial"),
                ext: Extension::trivial(sd.clone(), &gamma)?,
            });
        }
        if g.order() <= 8 {
            out.push(ExtensionInstance {
                name: format!("{name}, G by inner conjugation"),
                ext: Extension::conjugation(sd.clone(), &GroupHom::identity(&g))?,
            });
        }
        // Z/2 negating A and fixing G: an automorphism because scalars
        // commute with every action.
        let z2 = c(2)?;
        let r = sd.module.rank();
        let mut neg = ResidueMatrix::zeros(sd.module.modulus(), r, r);
        for (i, &d) in sd.module.moduli().iter().enumerate() {
            neg.set(i, i, d - 1);
        }
        out.push(ExtensionInstance {
            name: format!("{name}, Z/2 negating A"),
            ext: Extension::product_action(sd.clone(), &z2, vec![neg], vec![g.elements().collect()])?,
        });
    }
    Ok(out)
}
