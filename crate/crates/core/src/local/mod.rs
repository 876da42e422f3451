//! Tame local Galois quotients `⟨σ, τ | σ τ σ⁻¹ = τ^q, τ^n = 1⟩` with σ
//! acting on `G` by an automorphism α and τ acting trivially, plus the real
//! and complex archimedean groups.
//!
//! A cocycle is determined by `(s, t) = (a_σ, a_τ)` subject to `t^n = 1`
//! and `s α(t) s⁻¹ = t^q`. Two pairs are equivalent when
//! `(s', t') = (g s α(g)⁻¹, g t g⁻¹)`. The wild part is assumed to act
//! trivially and contribute nothing.

mod datum;

use std::sync::Arc;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::zmod::gcd;

pub use datum::{LocalActionSpec, TameLocalDatum};

/// An automorphism of `G`, the image of σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAction {
    group: Arc<FiniteGroup>,
    perm: Vec<usize>,
}

impl LocalAction {
    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        LocalAction { group: group.clone(), perm: group.elements().collect() }
    }

    /// The automorphism sending the generators of `G` to `images`.
    pub fn from_generator_images(group: &Arc<FiniteGroup>, images: &[usize]) -> Result<Self> {
        let f = GroupHom::from_generator_images(group, group, images)?;
        if !f.is_injective() {
            return Err(Error::InvalidAction("generator images do not define an automorphism".into()));
        }
        Ok(LocalAction { group: group.clone(), perm: group.elements().map(|x| f.apply(x)).collect() })
    }

    /// Inner automorphism `x -> g x g⁻¹`.
    pub fn conjugation(group: &Arc<FiniteGroup>, g: usize) -> Result<Self> {
        if g >= group.order() {
            return Err(Error::InvalidInput(format!("element {g} out of range")));
        }
        Ok(LocalAction { group: group.clone(), perm: group.elements().map(|x| group.conjugate(g, x)).collect() })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_involution(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| self.perm[x] == i)
    }

    /// Order of α as a permutation.
    pub fn order(&self) -> u64 {
        let mut k = 1u64;
        let mut p = self.perm.clone();
        while p.iter().enumerate().any(|(i, &x)| i != x) {
            p = p.iter().map(|&x| self.perm[x]).collect();
            k += 1;
        }
        k
    }
}

/// A class of local cocycles, given by its values at σ and τ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LocalClass {
    pub s: usize,
    pub t: usize,
    /// Whether `(s, t)` is the least pair of its class.
    pub canonical: bool,
}

impl LocalClass {
    pub fn is_unramified(&self) -> bool {
        self.t == 0
    }
}

fn check_datum(d: &TameLocalDatum, act: &LocalAction) -> Result<()> {
    match *d {
        TameLocalDatum::Finite { q, n } => {
            if n == 0 || q == 0 {
                return Err(Error::InvalidInput("q and n must be positive".into()));
            }
            if gcd(q, n) != 1 {
                return Err(Error::NotTame { q, n });
            }
            Ok(())
        }
        TameLocalDatum::Real if !act.is_involution() => {
            Err(Error::InvalidAction("complex conjugation must act by an involution".into()))
        }
        TameLocalDatum::Complex if !act.is_identity() => {
            Err(Error::InvalidAction("the trivial group acts trivially".into()))
        }
        _ => Ok(()),
    }
}

fn equivalent(act: &LocalAction, g: usize, s: usize, t: usize) -> (usize, usize) {
    let grp = &act.group;
    (grp.mul(grp.mul(g, s), grp.inv(act.apply(g))), grp.conjugate(g, t))
}

fn canonical_pair(act: &LocalAction, s: usize, t: usize) -> (usize, usize) {
    act.group.elements().map(|g| equivalent(act, g, s, t)).min().expect("nonempty group")
}

/// Every cocycle `(s, t)`, sorted.
pub fn local_cocycles(d: &TameLocalDatum, act: &LocalAction, caps: &Caps) -> Result<Vec<(usize, usize)>> {
    check_datum(d, act)?;
    let g = &act.group;
    let size = (g.order() as u128) * (g.order() as u128);
    if size > caps.max_enumeration as u128 {
        return Err(Error::cap("local cocycle pairs", size, caps.max_enumeration as u128));
    }
    let mut out = Vec::new();
    match *d {
        TameLocalDatum::Finite { q, n } => {
            let q = q % n;
            for t in g.elements().filter(|&t| g.pow(t, n) == 0) {
                let tq = g.pow(t, q);
                let at = act.apply(t);
                for s in g.elements() {
                    if g.mul(g.mul(s, at), g.inv(s)) == tq {
                        out.push((s, t));
                    }
                }
            }
        }
        TameLocalDatum::Real => {
            out.extend(g.elements().filter(|&s| g.mul(s, act.apply(s)) == 0).map(|s| (s, 0)));
        }
        TameLocalDatum::Complex => out.push((0, 0)),
    }
    out.sort_unstable();
    Ok(out)
}

/// H¹ of the local group as a sorted list of canonical classes.
pub fn local_h1(d: &TameLocalDatum, act: &LocalAction, caps: &Caps) -> Result<Vec<LocalClass>> {
    let mut reps: Vec<(usize, usize)> =
        local_cocycles(d, act, caps)?.into_iter().map(|(s, t)| canonical_pair(act, s, t)).collect();
    reps.sort_unstable();
    reps.dedup();
    Ok(reps.into_iter().map(|(s, t)| LocalClass { s, t, canonical: true }).collect())
}

/// The classes with `t = 1`.
pub fn unramified_classes(d: &TameLocalDatum, act: &LocalAction, caps: &Caps) -> Result<Vec<LocalClass>> {
    Ok(local_h1(d, act, caps)?.into_iter().filter(LocalClass::is_unramified).collect())
}

/// `φ*` on class lists, tabulated as indices into the target list.
#[derive(Clone, Debug, Serialize)]
pub struct ReoccurrenceMap {
    pub source: Vec<LocalClass>,
    pub target: Vec<LocalClass>,
    pub map: Vec<usize>,
    pub injective: bool,
    pub bijective: bool,
}

/// Inflation along `φ: Γ_w -> Γ_v` with `φ(σ_w) = σ_v`, `φ(τ_w) = τ_v`.
pub fn reoccurrence_iso(
    d_v: &TameLocalDatum,
    d_w: &TameLocalDatum,
    act: &LocalAction,
    caps: &Caps,
) -> Result<ReoccurrenceMap> {
    match (*d_v, *d_w) {
        (TameLocalDatum::Finite { q: q_v, n: n_v }, TameLocalDatum::Finite { q: q_w, n: n_w }) => {
            if n_v != n_w {
                return Err(Error::Unsupported(format!("comparison between n = {n_v} and n = {n_w}")));
            }
            check_datum(d_v, act)?;
            check_datum(d_w, act)?;
            if q_v % n_v != q_w % n_v {
                return Err(Error::IncongruentResidues { q_v, q_w, n: n_v });
            }
        }
        (TameLocalDatum::Real, TameLocalDatum::Finite { q, n }) => {
            check_datum(d_w, act)?;
            if !act.is_involution() {
                return Err(Error::Unsupported("σ² must act trivially for a real source".into()));
            }
            // σ_w must map like complex conjugation on the n-th roots of unity.
            if (q + 1) % n != 0 {
                return Err(Error::IncongruentResidues { q_v: n - 1, q_w: q, n });
            }
        }
        (v, w) if v == w => {}
        _ => return Err(Error::Unsupported(format!("comparison from {d_v} to {d_w}"))),
    }
    let source = local_h1(d_v, act, caps)?;
    let target = local_h1(d_w, act, caps)?;
    let map = source
        .iter()
        .map(|c| {
            let (s, t) = canonical_pair(act, c.s, c.t);
            target.binary_search_by(|x| (x.s, x.t).cmp(&(s, t))).map_err(|_| {
                Error::InvalidInput(format!("pair ({s}, {t}) is not a cocycle for {d_w}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hit = map.clone();
    hit.sort_unstable();
    hit.dedup();
    let injective = hit.len() == map.len();
    let bijective = injective && hit.len() == target.len();
    Ok(ReoccurrenceMap { source, target, map, injective, bijective })
}

#[derive(Clone, Debug, Serialize)]
pub struct Realizability {
    pub realizable: bool,
    pub witness: Option<LocalClass>,
}

/// Whether some cocycle `(s, t)` generates `G`; the least such pair is the
/// witness.
pub fn tame_realizability(d: &TameLocalDatum, act: &LocalAction, caps: &Caps) -> Result<Realizability> {
    let g = &act.group;
    for (s, t) in local_cocycles(d, act, caps)? {
        if g.closure(&[s, t]).len() == g.order() {
            let canonical = canonical_pair(act, s, t) == (s, t);
            return Ok(Realizability { realizable: true, witness: Some(LocalClass { s, t, canonical }) });
        }
    }
    Ok(Realizability { realizable: false, witness: None })
}

#[cfg(test)]
mod tests;
