pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Extended gcd on non-negative integers: returns `(g, s, t)` with
/// `s*a + t*b = g`.
pub fn xgcd(a: u64, b: u64) -> (u64, i128, i128) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r as u64, old_s, old_t)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = xgcd(a % m, m);
    if g != 1 {
        return None;
    }
    Some(s.rem_euclid(m as i128) as u64)
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn reduce_signed(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// A unit `u` modulo `m` with `u * a = gcd(a, m) (mod m)`.
pub(crate) fn unit_normalizer(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let g = gcd(a, m);
    if g == 0 || a == 0 {
        return 1;
    }
    let a1 = a / g;
    let m1 = m / g;
    let u0 = if m1 == 1 { 0 } else { mod_inverse(a1 % m1, m1).expect("a/g is a unit mod m/g") };
    let mut u = u0;
    while gcd(u, m) != 1 {
        u += m1;
    }
    u % m
}
