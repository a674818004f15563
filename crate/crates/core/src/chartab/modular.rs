//! Dense linear algebra over a prime field `F_q` with `q < 2^31`.

#![allow(clippy::needless_range_loop)]

pub(crate) type Mat = Vec<Vec<u64>>;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    a * b % q
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(q), "inverse of zero");
    pow_mod(a, q - 2, q)
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && crate::perm::smallest_prime_factor(n) == n
}

/// Primes `q` with `q ≡ 1 (mod e)` and `q > 2·sqrt(order)`, ascending.
pub fn admissible_primes(order: u64, exponent: u64) -> impl Iterator<Item = u64> {
    let e = exponent.max(1);
    (1u64..)
        .map(move |k| k * e + 1)
        .filter(move |&q| q * q > 4 * order && is_prime(q))
}

/// Smallest generator of the multiplicative group of `F_q`.
pub(crate) fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = q - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (q - 1) / f, q) != 1))
        .expect("F_q* is cyclic")
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut Mat, q: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, q);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + q - mul_mod(f, y, q)) % q;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right null space `{x : A x = 0}`.
pub(crate) fn nullspace(a: &Mat, q: u64) -> Mat {
    let n = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let pivots = rref(&mut m, q);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (q - row[f]) % q;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)`, lowest degree first, via
/// reduction to upper Hessenberg form.
pub(crate) fn charpoly(a: &Mat, q: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for col in 0..n.saturating_sub(2) {
        let Some(p) = (col + 1..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if p != col + 1 {
            h.swap(p, col + 1);
            for row in h.iter_mut() {
                row.swap(p, col + 1);
            }
        }
        let inv = inv_mod(h[col + 1][col], q);
        for i in col + 2..n {
            if h[i][col] == 0 {
                continue;
            }
            let f = mul_mod(h[i][col], inv, q);
            // row_i -= f * row_{col+1}
            for k in 0..n {
                let sub = mul_mod(f, h[col + 1][k], q);
                h[i][k] = (h[i][k] + q - sub) % q;
            }
            // col_{col+1} += f * col_i
            for row in h.iter_mut() {
                let add = mul_mod(f, row[i], q);
                row[col + 1] = (row[col + 1] + add) % q;
            }
        }
    }
    // polys[m] = charpoly of the leading m×m block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mm = m - 1;
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % q;
            next[k] = (next[k] + q - mul_mod(h[mm][mm], c, q)) % q;
        }
        let mut prod = 1u64;
        for i in 1..m {
            prod = mul_mod(prod, h[mm - i + 1][mm - i], q);
            let coeff = mul_mod(h[mm - i][mm], prod, q);
            if coeff == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                next[k] = (next[k] + q - mul_mod(coeff, c, q)) % q;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub(crate) fn eval_poly(p: &[u64], x: u64, q: u64) -> u64 {
    p.iter()
        .rev()
        .fold(0, |acc, &c| (mul_mod(acc, x, q) + c) % q)
}
