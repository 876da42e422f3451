//! Named small groups.
//!
//! Names: `trivial`, `cyclic-N`, `elementary-P-K` (`(Z/P)^K`), `klein-4`,
//! `symmetric-3`, `symmetric-4`, `alternating-4`, `dihedral-N` (order N),
//! `quaternion-8`, `quaternion-16`, `dicyclic-12`, `semidihedral-16`,
//! `modular-16`, and products `NAME x NAME`.

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::finite::FiniteGroup;
use crate::group::subgroup::direct_product;

pub fn named(name: &str, caps: &Caps) -> Result<Arc<FiniteGroup>> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once(" x ") {
        let ga = named(a, caps)?;
        let gb = named(b, caps)?;
        return direct_product(&ga, &gb, caps);
    }
    let unknown = || Error::InvalidInput(format!("unknown group name \"{name}\""));
    let num = |s: &str| s.parse::<u64>().map_err(|_| unknown());
    let (stem, arg) = match name.rsplit_once('-') {
        Some((s, a)) if a.chars().all(|c| c.is_ascii_digit()) => (s, Some(a)),
        _ => (name, None),
    };
    let g = match (stem, arg) {
        ("trivial", None) => FiniteGroup::abelian(&[])?,
        ("klein", Some("4")) => FiniteGroup::abelian(&[2, 2])?,
        ("cyclic", Some(n)) => {
            let n = num(n)?;
            if n == 0 {
                return Err(unknown());
            }
            FiniteGroup::abelian(&[n])?
        }
        ("symmetric", Some("3")) => FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], caps.max_group_order)?,
        ("symmetric", Some("4")) => {
            FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], caps.max_group_order)?
        }
        ("alternating", Some("4")) => {
            FiniteGroup::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], caps.max_group_order)?
        }
        ("dihedral", Some(n)) => {
            let n = num(n)?;
            if n < 2 || n % 2 != 0 {
                return Err(unknown());
            }
            metacyclic(n / 2, 2, n / 2 - 1, caps)?
        }
        ("quaternion", Some("8")) => dicyclic(2, caps)?,
        ("quaternion", Some("16")) => dicyclic(4, caps)?,
        ("dicyclic", Some(n)) => {
            let n = num(n)?;
            if n < 8 || n % 4 != 0 {
                return Err(unknown());
            }
            dicyclic(n / 4, caps)?
        }
        ("semidihedral", Some("16")) => metacyclic(8, 2, 3, caps)?,
        ("modular", Some("16")) => metacyclic(8, 2, 5, caps)?,
        _ => {
            if let Some(rest) = name.strip_prefix("elementary-") {
                let (p, k) = rest.split_once('-').ok_or_else(unknown)?;
                let (p, k) = (num(p)?, num(k)?);
                FiniteGroup::abelian(&vec![p; k as usize])?
            } else {
                return Err(unknown());
            }
        }
    };
    if g.order() > caps.max_group_order {
        return Err(Error::cap("group order", g.order() as u128, caps.max_group_order as u128));
    }
    Ok(g)
}

/// `Z/m x| Z/k` with the generator of `Z/k` acting by `x -> r x`.
pub fn metacyclic(m: u64, k: u64, r: u64, caps: &Caps) -> Result<Arc<FiniteGroup>> {
    let (m, k) = (m.max(1), k.max(1));
    if crate::zmod::gcd(r, m) != 1 || pow_mod(r, k, m) != 1 % m {
        return Err(Error::InvalidAction(format!("x -> {r}x is not an automorphism of order dividing {k} on Z/{m}")));
    }
    let mul = move |x: &(u64, u64), y: &(u64, u64)| ((x.0 + pow_mod(r, x.1, m) * y.0) % m, (x.1 + y.1) % k);
    let label = |x: &(u64, u64)| word(&[("a", x.0), ("b", x.1)]);
    FiniteGroup::from_closure((0, 0), &[(1 % m, 0), (0, 1 % k)], mul, label, caps.max_group_order)
}

/// Dicyclic group of order `4k`: `a^(2k) = 1`, `x^2 = a^k`, `x a x⁻¹ = a⁻¹`.
pub fn dicyclic(k: u64, caps: &Caps) -> Result<Arc<FiniteGroup>> {
    let m = 2 * k;
    let mul = move |x: &(u64, u64), y: &(u64, u64)| match (x.1, y.1) {
        (0, j) => ((x.0 + y.0) % m, j),
        (_, 0) => ((x.0 + m - y.0) % m, 1),
        _ => ((x.0 + m - y.0 + k) % m, 0),
    };
    let label = |x: &(u64, u64)| word(&[("a", x.0), ("x", x.1)]);
    FiniteGroup::from_closure((0, 0), &[(1, 0), (0, 1)], mul, label, caps.max_group_order)
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    for _ in 0..e {
        acc = acc * b % m;
    }
    acc
}

fn word(parts: &[(&str, u64)]) -> String {
    let s: Vec<String> = parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect();
    if s.is_empty() {
        "e".into()
    } else {
        s.join("")
    }
}

/// Names of the shipped catalog groups, smallest first.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "trivial",
        "cyclic-2",
        "cyclic-3",
        "cyclic-4",
        "klein-4",
        "cyclic-6",
        "symmetric-3",
        "cyclic-8",
        "cyclic-2 x cyclic-4",
        "elementary-2-3",
        "dihedral-8",
        "quaternion-8",
        "dihedral-10",
        "cyclic-12",
        "alternating-4",
        "dihedral-12",
        "dicyclic-12",
        "elementary-2-4",
        "cyclic-2 x cyclic-2 x cyclic-4",
        "dihedral-8 x cyclic-2",
        "quaternion-8 x cyclic-2",
        "dihedral-16",
        "quaternion-16",
        "semidihedral-16",
        "modular-16",
        "symmetric-4",
    ]
}
