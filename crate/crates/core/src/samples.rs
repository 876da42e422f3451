//! Seeded random small instances (modules, surjections) for property checks
//! and the acceptance suite.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::Result;
use crate::gmodule::GModule;
use crate::group::{catalog_names, named, quotient_group, subgroups, FiniteGroup, GroupHom};
use crate::zmod::ResidueMatrix;

pub use rand::SeedableRng;
pub type SampleRng = ChaCha8Rng;

/// Catalog groups of order at most `max`.
pub fn catalog_up_to(max: usize) -> Result<Vec<Arc<FiniteGroup>>> {
    let caps = Caps::default();
    let mut out = Vec::new();
    for n in catalog_names() {
        let g = named(n, &caps)?;
        if g.order() <= max {
            out.push(g);
        }
    }
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=i).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, i);
                    q
                })
            })
            .collect();
    }
    out
}

/// A module of order at most `max_order` over `g`: a trivial module with
/// random cyclic factors, or a signed permutation module `(Z/d)^k` along a
/// random homomorphism to the symmetric group, possibly summed with a
/// trivial factor. Random choices that fail to define an action are retried.
pub fn random_module(rng: &mut SampleRng, g: &Arc<FiniteGroup>, max_order: u64) -> GModule {
    for _ in 0..200 {
        if let Some(m) = try_module(rng, g, max_order) {
            return m;
        }
    }
    GModule::trivial(g, &[2]).expect("trivial module")
}

fn try_module(rng: &mut SampleRng, g: &Arc<FiniteGroup>, max_order: u64) -> Option<GModule> {
    let gens = g.generators().len();
    if rng.gen_bool(0.25) {
        let mut moduli = Vec::new();
        let mut order = 1u64;
        loop {
            let d = rng.gen_range(2..=9u64);
            if order * d > max_order || (!moduli.is_empty() && rng.gen_bool(0.4)) {
                break;
            }
            order *= d;
            moduli.push(d);
        }
        if moduli.is_empty() {
            moduli.push(2);
        }
        return GModule::trivial(g, &moduli).ok();
    }
    let d = rng.gen_range(2..=9u64);
    let mut k = 1usize;
    while k < 4 && d.pow(k as u32 + 1) <= max_order && rng.gen_bool(0.6) {
        k += 1;
    }
    let extra = if d.pow(k as u32) * 2 <= max_order && rng.gen_bool(0.3) { Some(rng.gen_range(2..=max_order / d.pow(k as u32)).min(9)) } else { None };
    let perms = permutations(k);
    let mut moduli = vec![d; k];
    if let Some(e) = extra {
        moduli.push(e);
    }
    let modulus = moduli.iter().fold(1u64, |a, &b| crate::zmod::lcm(a, b));
    let r = moduli.len();
    let mats: Vec<ResidueMatrix> = (0..gens)
        .map(|_| {
            let p = perms.choose(rng).expect("nonempty");
            let sign = if d > 2 && rng.gen_bool(0.3) { d - 1 } else { 1 };
            let mut m = ResidueMatrix::zeros(modulus, r, r);
            for (i, &j) in p.iter().enumerate() {
                m.set(i, j, sign);
            }
            if extra.is_some() {
                m.set(k, k, 1);
            }
            m
        })
        .collect();
    GModule::new(g, &moduli, mats).ok()
}

/// A surjection `Γ' ->> Γ` onto a quotient by a random normal subgroup of a
/// random catalog group of order at most `max_source`.
pub fn random_surjection(rng: &mut SampleRng, max_source: usize) -> Result<GroupHom> {
    let groups = catalog_up_to(max_source)?;
    let src = groups.choose(rng).expect("catalog is nonempty").clone();
    let normals: Vec<_> = subgroups(&src, &Caps::default())?.into_iter().filter(|h| h.is_normal()).collect();
    let n = normals.choose(rng).expect("trivial subgroup is normal");
    let (_, proj) = quotient_group(n)?;
    Ok(proj)
}
