//! Enumeration oracles, independent of the linear solver.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::invariants_from_orders;

use super::abelian::AbelianCocycle;

fn pow_bound(base: u128, exp: usize, cap: u64) -> Option<u128> {
    let mut acc = 1u128;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > cap as u128 {
            return None;
        }
    }
    Some(acc)
}

fn module_size(module: &GModule) -> u128 {
    u128::try_from(&module.order()).unwrap_or(u128::MAX)
}

/// All cocycles, by backtracking over full value tables with the identity
/// checked on every pair as soon as its three entries are assigned.
pub fn cocycles_by_tables(module: &GModule, cap: u64) -> Result<Vec<AbelianCocycle>> {
    let g = module.group();
    let n = g.order();
    let size = module_size(module);
    if pow_bound(size, n - 1, cap).is_none() {
        return Err(Error::cap("cocycle value tables", u128::MAX, cap as u128));
    }
    let elems = module.elements(cap)?;
    let mut values: Vec<Option<usize>> = vec![None; n];
    values[0] = Some(module.encode(&module.zero()));
    let mut out = Vec::new();
    fn consistent(module: &GModule, elems: &[Vec<u64>], values: &[Option<usize>], upto: usize) -> bool {
        let g = module.group();
        for x in 0..=upto {
            for y in 0..=upto {
                if x != upto && y != upto && g.mul(x, y) != upto {
                    continue;
                }
                let (Some(ax), Some(ay), Some(axy)) = (values[x], values[y], values[g.mul(x, y)]) else {
                    continue;
                };
                let rhs = module.add(&elems[ax], &module.act(x, &elems[ay]));
                if elems[axy] != rhs {
                    return false;
                }
            }
        }
        true
    }
    fn rec(
        module: &GModule,
        elems: &[Vec<u64>],
        values: &mut Vec<Option<usize>>,
        k: usize,
        out: &mut Vec<AbelianCocycle>,
    ) {
        let n = values.len();
        if k == n {
            out.push(AbelianCocycle { values: values.iter().map(|v| elems[v.unwrap()].clone()).collect() });
            return;
        }
        for a in 0..elems.len() {
            values[k] = Some(a);
            if consistent(module, elems, values, k) {
                rec(module, elems, values, k + 1, out);
            }
        }
        values[k] = None;
    }
    if consistent(module, &elems, &values, 0) {
        rec(module, &elems, &mut values, 1, &mut out);
    }
    Ok(out)
}

/// All cocycles, by choosing values on generators and propagating
/// `a_{xs} = a_x + x·a_s` along the Cayley graph.
pub fn cocycles_by_generators(module: &GModule, cap: u64) -> Result<Vec<AbelianCocycle>> {
    let g = module.group();
    let gens = g.generators();
    let size = module_size(module);
    if pow_bound(size, gens.len(), cap).is_none() {
        return Err(Error::cap("generator value assignments", u128::MAX, cap as u128));
    }
    let elems = module.elements(cap)?;
    let radices = vec![elems.len() as u64; gens.len()];
    let mut out = Vec::new();
    'assign: for choice in crate::zmod::CoordinateIter::new(radices) {
        let mut values: Vec<Option<Vec<u64>>> = vec![None; g.order()];
        values[0] = Some(module.zero());
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&s, &c) in gens.iter().zip(&choice) {
                let y = g.mul(x, s);
                let v = module.add(values[x].as_ref().unwrap(), &module.act(x, &elems[c as usize]));
                match &values[y] {
                    None => {
                        values[y] = Some(v);
                        queue.push(y);
                    }
                    Some(w) if *w != v => continue 'assign,
                    Some(_) => {}
                }
            }
            i += 1;
        }
        out.push(AbelianCocycle { values: values.into_iter().map(Option::unwrap).collect() });
    }
    Ok(out)
}

pub fn coboundaries(module: &GModule, cap: u64) -> Result<BTreeSet<AbelianCocycle>> {
    Ok(module.elements(cap)?.iter().map(|x| AbelianCocycle::coboundary(module, x)).collect())
}

/// Fixed points of the whole acting group.
pub fn fixed_points(module: &GModule, cap: u64) -> Result<Vec<Vec<u64>>> {
    let g = module.group();
    Ok(module
        .elements(cap)?
        .into_iter()
        .filter(|x| g.generators().iter().all(|&s| module.act(s, x) == *x))
        .collect())
}

/// Orders and invariant factors of a quotient `Z/B` of finite abelian
/// groups given by element lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteQuotient {
    pub numerator: usize,
    pub denominator: usize,
    pub invariant_factors: Vec<u64>,
}

fn brute_quotient<T, A>(numer: &[T], denom: &HashSet<T>, scaled: A) -> BruteQuotient
where
    T: Clone + Eq + std::hash::Hash,
    A: Fn(&T, u64) -> T,
{
    // Order of x + B: least k with k·x in B.
    let mut orders: Vec<u64> = numer
        .iter()
        .map(|x| {
            let mut k = 1u64;
            while !denom.contains(&scaled(x, k)) {
                k += 1;
            }
            k
        })
        .collect();
    orders.sort_unstable();
    let b = denom.len().max(1);
    // Each class contributes |B| equal orders; keep one per class.
    let per_class: Vec<u64> = orders.iter().step_by(b).copied().collect();
    let h = (numer.len() / b) as u64;
    BruteQuotient { numerator: numer.len(), denominator: denom.len(), invariant_factors: invariants_from_orders(h, &per_class) }
}

/// `|Z¹|`, `|B¹|` and the invariant factors of `H¹` by enumeration.
pub fn brute_h1(module: &GModule, cap: u64) -> Result<BruteQuotient> {
    let z = cocycles_by_generators(module, cap)?;
    let b: HashSet<AbelianCocycle> = coboundaries(module, cap)?.into_iter().collect();
    Ok(brute_quotient(&z, &b, |a, k| a.scale(k, module)))
}

/// `|B^H|`, `|N_H(B)|` and the invariant factors of `Ĥ⁰` by enumeration.
pub fn brute_tate_h0(module: &GModule, cap: u64) -> Result<BruteQuotient> {
    let g = module.group();
    let fixed = fixed_points(module, cap)?;
    let norms: HashSet<Vec<u64>> = module
        .elements(cap)?
        .iter()
        .map(|x| g.elements().fold(module.zero(), |acc, h| module.add(&acc, &module.act(h, x))))
        .collect();
    Ok(brute_quotient(&fixed, &norms, |x, k| module.scale(k, x)))
}
