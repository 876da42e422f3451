use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::action::NabAction;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// A class in H¹(Γ, G), represented by the lexicographically least value
/// table in its twisted-conjugacy orbit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NabClass {
    pub representative: Vec<usize>,
    pub orbit_size: usize,
}

impl NabClass {
    pub fn is_trivial(&self) -> bool {
        self.representative.iter().all(|&x| x == 0)
    }
}

/// The sorted class list together with a lookup from canonical tables.
#[derive(Clone, Debug)]
pub struct NabH1 {
    pub classes: Vec<NabClass>,
    pub cocycle_count: usize,
    index: HashMap<Vec<usize>, usize>,
}

impl NabH1 {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class of an arbitrary cocycle.
    pub fn class_of(&self, act: &NabAction, a: &[usize]) -> Option<usize> {
        self.index.get(&canonical(act, a)).copied()
    }

    pub fn trivial_index(&self) -> usize {
        self.classes.iter().position(NabClass::is_trivial).expect("trivial class always present")
    }
}

pub fn is_cocycle(act: &NabAction, a: &[usize]) -> bool {
    let (gamma, g) = (act.gamma(), act.target());
    a.len() == gamma.order()
        && gamma.elements().all(|s| {
            gamma.elements().all(|t| a[gamma.mul(s, t)] == g.mul(a[s], act.apply(s, a[t])))
        })
}

/// `σ -> x a_σ σ(x)⁻¹`.
pub fn conjugate_cocycle(act: &NabAction, x: usize, a: &[usize]) -> Vec<usize> {
    let g = act.target();
    a.iter()
        .enumerate()
        .map(|(s, &v)| g.mul(g.mul(x, v), g.inv(act.apply(s, x))))
        .collect()
}

/// Least value table in the orbit of `a`.
pub fn canonical(act: &NabAction, a: &[usize]) -> Vec<usize> {
    act.target().elements().map(|x| conjugate_cocycle(act, x, a)).min().expect("nonempty group")
}

/// Every cocycle, by choosing values on the generators of Γ and extending
/// through `a_{xs} = a_x · x(a_s)`; inconsistent choices are discarded.
pub fn nab_cocycles(act: &NabAction, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let (gamma, g) = (act.gamma(), act.target());
    let gens = gamma.generators();
    let candidates = (g.order() as u128).saturating_pow(gens.len() as u32);
    if candidates > caps.max_enumeration as u128 {
        return Err(Error::cap("nonabelian cocycle candidates", candidates, caps.max_enumeration as u128));
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        if let Some(a) = extend_from_generators(act, &choice) {
            out.push(a);
        }
        for c in choice.iter_mut() {
            *c += 1;
            if *c < g.order() {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    out.sort();
    Ok(out)
}

fn extend_from_generators(act: &NabAction, values: &[usize]) -> Option<Vec<usize>> {
    let (gamma, g) = (act.gamma(), act.target());
    let mut a = vec![usize::MAX; gamma.order()];
    a[0] = 0;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &v) in gamma.generators().iter().zip(values) {
            let y = gamma.mul(x, s);
            let val = g.mul(a[x], act.apply(x, v));
            if a[y] == usize::MAX {
                a[y] = val;
                queue.push(y);
            } else if a[y] != val {
                return None;
            }
        }
        i += 1;
    }
    // Consistency along generator edges determines a cocycle only once the
    // relations of Γ are respected; the exhaustive check settles it.
    is_cocycle(act, &a).then_some(a)
}

/// Independent route: backtracking over full value tables, checking every
/// pair as soon as both entries and the product entry are assigned.
pub fn nab_cocycles_by_tables(act: &NabAction, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let (gamma, g) = (act.gamma(), act.target());
    let n = gamma.order();
    let candidates = (g.order() as u128).saturating_pow(n.saturating_sub(1) as u32);
    if candidates > caps.max_enumeration as u128 {
        return Err(Error::cap("nonabelian cocycle tables", candidates, caps.max_enumeration as u128));
    }
    let mut out = Vec::new();
    let mut a = vec![usize::MAX; n];
    a[0] = 0;
    fn rec(act: &NabAction, a: &mut Vec<usize>, pos: usize, out: &mut Vec<Vec<usize>>) {
        let (gamma, g) = (act.gamma(), act.target());
        if pos == a.len() {
            out.push(a.clone());
            return;
        }
        for v in g.elements() {
            a[pos] = v;
            let ok = (0..=pos).all(|s| {
                (0..=pos).all(|t| {
                    let st = gamma.mul(s, t);
                    st > pos || a[st] == g.mul(a[s], act.apply(s, a[t]))
                })
            });
            if ok {
                rec(act, a, pos + 1, out);
            }
        }
        a[pos] = usize::MAX;
    }
    rec(act, &mut a, 1, &mut out);
    out.sort();
    Ok(out)
}

/// H¹(Γ, G) as a sorted list of canonical classes.
pub fn nab_h1(act: &NabAction, caps: &Caps) -> Result<NabH1> {
    let cocycles = nab_cocycles(act, caps)?;
    Ok(classes_of(act, &cocycles))
}

pub(crate) fn classes_of(act: &NabAction, cocycles: &[Vec<usize>]) -> NabH1 {
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::with_capacity(cocycles.len());
    let mut classes = Vec::new();
    for a in cocycles {
        if seen.contains_key(a) {
            continue;
        }
        let orbit: BTreeSet<Vec<usize>> = act.target().elements().map(|x| conjugate_cocycle(act, x, a)).collect();
        let rep = orbit.iter().next().expect("nonempty orbit").clone();
        let size = orbit.len();
        for b in orbit {
            seen.insert(b, ());
        }
        classes.push(NabClass { representative: rep, orbit_size: size });
    }
    classes.sort();
    let index = classes.iter().enumerate().map(|(i, c)| (c.representative.clone(), i)).collect();
    NabH1 { classes, cocycle_count: cocycles.len(), index }
}
