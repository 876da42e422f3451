use super::arith::{gcd, mul_mod, reduce_signed, unit_normalizer, xgcd};

/// Column-side data of a diagonalization of a relation matrix over `Z/m`.
///
/// `orders[k]` is the order of the k-th cyclic factor of `(Z/m)^s / span(rel)`
/// in the coordinates `x -> x * col`; `col_inv` is the inverse of `col`.
/// The orders form a divisibility chain.
pub(crate) struct ColumnSmith {
    pub orders: Vec<u64>,
    pub col: Vec<Vec<u64>>,
    pub col_inv: Vec<Vec<u64>>,
}

struct Diag {
    m: u64,
    s: usize,
    w: Vec<Vec<u64>>,
    col: Vec<Vec<u64>>,
    col_inv: Vec<Vec<u64>>,
}

impl Diag {
    fn row_mix(&mut self, r: usize, i: usize, [a, b, c, d]: [u64; 4]) {
        let m = self.m;
        for j in 0..self.s {
            let (u, v) = (self.w[r][j], self.w[i][j]);
            self.w[r][j] = (mul_mod(a, u, m) + mul_mod(b, v, m)) % m;
            self.w[i][j] = (mul_mod(c, u, m) + mul_mod(d, v, m)) % m;
        }
    }

    /// Column transform `new_t = a*col_t + c*col_j`, `new_j = b*col_t + d*col_j`
    /// (right multiplication by `[[a, b], [c, d]]` on the pair), tracked in
    /// `col` and its inverse in `col_inv`.
    fn col_mix(&mut self, t: usize, j: usize, [a, b, c, d]: [u64; 4]) {
        let m = self.m;
        for row in self.w.iter_mut().chain(self.col.iter_mut()) {
            let (u, v) = (row[t], row[j]);
            row[t] = (mul_mod(a, u, m) + mul_mod(c, v, m)) % m;
            row[j] = (mul_mod(b, u, m) + mul_mod(d, v, m)) % m;
        }
        // Inverse of [[a, b], [c, d]] with determinant 1 is [[d, -b], [-c, a]],
        // applied on the left to rows t and j of col_inv.
        let (nb, nc) = ((m - b % m) % m, (m - c % m) % m);
        let (rt, rj) = (self.col_inv[t].clone(), self.col_inv[j].clone());
        for k in 0..self.s {
            self.col_inv[t][k] = (mul_mod(d, rt[k], m) + mul_mod(nb, rj[k], m)) % m;
            self.col_inv[j][k] = (mul_mod(nc, rt[k], m) + mul_mod(a, rj[k], m)) % m;
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        for row in self.w.iter_mut().chain(self.col.iter_mut()) {
            row.swap(a, b);
        }
        self.col_inv.swap(a, b);
    }
}

fn gcd_coeffs(a: u64, b: u64, m: u64) -> (u64, [u64; 4]) {
    // When a | b, eliminate without touching the pivot line; any other
    // Bezout pair would keep the pivot fixed while perturbing its column,
    // and the alternating row/column sweeps could cycle.
    if a != 0 && b.is_multiple_of(a) {
        return (a, [1 % m, 0, reduce_signed(-((b / a) as i128), m), 1 % m]);
    }
    let (g, s, t) = xgcd(a, b);
    let u = b / g;
    let v = a / g;
    (g, [reduce_signed(s, m), reduce_signed(t, m), reduce_signed(-(u as i128), m), v % m])
}

pub(crate) fn column_smith(m: u64, s: usize, relations: &[Vec<u64>]) -> ColumnSmith {
    let identity = |n: usize| -> Vec<Vec<u64>> {
        (0..n)
            .map(|i| {
                let mut e = vec![0u64; n];
                e[i] = 1 % m;
                e
            })
            .collect()
    };
    let mut w: Vec<Vec<u64>> = relations.iter().map(|r| r.iter().map(|&x| x % m).collect()).collect();
    while w.len() < s {
        w.push(vec![0; s]);
    }
    let nr = w.len();
    let mut d = Diag { m, s, w, col: identity(s), col_inv: identity(s) };
    let mut diag = vec![0u64; s];
    let mut t = 0;
    while t < s {
        // Pivot: the entry whose gcd with m is smallest.
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..nr {
            for j in t..s {
                let x = d.w[i][j];
                if x != 0 {
                    let g = gcd(x, m);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        d.w.swap(t, pi);
        if pj != t {
            d.col_swap(t, pj);
        }
        loop {
            for i in t + 1..nr {
                let b = d.w[i][t];
                if b == 0 {
                    continue;
                }
                let a = d.w[t][t];
                if a == 0 {
                    d.w.swap(t, i);
                    continue;
                }
                let (_, c) = gcd_coeffs(a, b, m);
                d.row_mix(t, i, c);
            }
            for j in t + 1..s {
                let b = d.w[t][j];
                if b == 0 {
                    continue;
                }
                let a = d.w[t][t];
                let (_, [p, q, r, u]) = gcd_coeffs(a, b, m);
                // new col_t = p*col_t + q*col_j ; new col_j = r*col_t + u*col_j
                d.col_mix(t, j, [p, r, q, u]);
            }
            let column_clean = (t + 1..nr).all(|i| d.w[i][t] == 0);
            if column_clean {
                break;
            }
        }
        let u = unit_normalizer(d.w[t][t], m);
        for x in d.w[t].iter_mut() {
            *x = mul_mod(*x, u, m);
        }
        diag[t] = d.w[t][t];
        t += 1;
    }
    let mut orders: Vec<u64> = diag.iter().map(|&x| gcd(x, m)).collect();
    // Enforce the divisibility chain with (gcd, lcm) exchanges.
    for i in 0..s {
        for j in i + 1..s {
            let (oi, oj) = (orders[i], orders[j]);
            if oj % oi == 0 {
                continue;
            }
            let (g, sc, tc) = xgcd(oi, oj);
            let a = reduce_signed(sc, m);
            let c = reduce_signed(tc, m);
            let b = reduce_signed(-((oj / g) as i128), m);
            let dd = (oi / g) % m;
            d.col_mix(i, j, [a, b, c, dd]);
            orders[i] = g;
            orders[j] = oi / g * oj;
        }
    }
    ColumnSmith { orders, col: d.col, col_inv: d.col_inv }
}

/// Invariant factors (divisibility chain, all > 1) of `Z/c_1 + ... + Z/c_k`.
pub(crate) fn invariant_factors_of_cyclic(orders: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &o in orders {
        let mut n = o;
        let mut p = 2u64;
        while p * p <= n {
            if n % p == 0 {
                let mut q = 1u64;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                by_prime.entry(p).or_default().push(q);
            }
            p += 1;
        }
        if n > 1 {
            by_prime.entry(n).or_default().push(n);
        }
    }
    let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (k, &q) in powers.iter().enumerate() {
            factors[len - 1 - k] *= q;
        }
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_regrouping() {
        assert_eq!(invariant_factors_of_cyclic(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors_of_cyclic(&[4, 2]), vec![2, 4]);
        assert_eq!(invariant_factors_of_cyclic(&[2, 2, 2]), vec![2, 2, 2]);
        assert_eq!(invariant_factors_of_cyclic(&[6, 4]), vec![2, 12]);
        assert_eq!(invariant_factors_of_cyclic(&[1]), Vec::<u64>::new());
    }

    #[test]
    fn diag_chain_and_inverse() {
        let rel = vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 0]];
        let sm = column_smith(12, 3, &rel);
        let mut sorted = sm.orders.clone();
        sorted.retain(|&o| o != 1);
        assert_eq!(sorted, vec![6, 12]);
        for i in 0..3 {
            for j in 0..3 {
                let v: u64 = (0..3).map(|k| sm.col[i][k] * sm.col_inv[k][j]).sum::<u64>() % 12;
                assert_eq!(v, u64::from(i == j));
            }
        }
    }
}
