//! Dense polynomial arithmetic over GF(p), coefficients low-to-high in `Vec<u64>`.
//! The zero polynomial is the empty vector.

use crate::modarith::{factorize, pow_mod};

pub fn trim(mut c: Vec<u64>) -> Vec<u64> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

pub fn degree(c: &[u64]) -> Option<usize> {
    if c.is_empty() {
        None
    } else {
        Some(c.len() - 1)
    }
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], k: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| x * k % p).collect())
}

/// Remainder of `a` by a monic divisor `m`.
pub fn rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1, "divisor must be monic");
    let d = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > d {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for (j, &mc) in m.iter().enumerate().take(d) {
                let idx = shift + j;
                r[idx] = (r[idx] + p - lead * mc % p) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

pub fn mulrem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem_monic(&mul(a, b, p), m, p)
}

pub fn pow_rem(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem_monic(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulrem(&acc, &b, m, p);
        }
        b = mulrem(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn inv_scalar(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn make_monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_scalar(l, p), p),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem_monic(&a, &make_monic(&b, p), p);
        a = b;
        b = r;
    }
    make_monic(&a, p)
}

/// Rabin test: f is irreducible over GF(p) iff x^(p^d) = x mod f and
/// gcd(x^(p^(d/r)) - x, f) = 1 for every prime r | d.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if f[0] == 0 && d > 1 {
        return false;
    }
    let x = vec![0u64, 1];
    let frob_power = |k: usize| -> Vec<u64> {
        // x^(p^k) mod f by k successive p-th powers
        let mut y = rem_monic(&x, f, p);
        for _ in 0..k {
            y = pow_rem(&y, p as u128, f, p);
        }
        y
    };
    if frob_power(d) != rem_monic(&x, f, p) {
        return false;
    }
    for r in factorize(d as u64).primes() {
        let y = frob_power(d / r as usize);
        let g = gcd(&sub(&y, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The first monic irreducible of degree d over GF(p), scanning candidates in
/// lexicographic order on (c_0, c_1, ..., c_{d-1}) with the constant term most
/// significant.
pub fn find_irreducible(p: u64, d: usize) -> Vec<u64> {
    assert!(d >= 1);
    if d == 1 {
        return vec![0, 1]; // the polynomial x
    }
    // Candidates with c_0 = 0 are divisible by x; start the counter past them.
    let mut digits = vec![0u64; d]; // digits[0] = c_0 (most significant)
    digits[0] = 1;
    loop {
        let mut f: Vec<u64> = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // odometer increment on the least significant digit c_{d-1}
        let mut i = d - 1;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            assert!(i > 0, "no irreducible of degree {d} over GF({p})");
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rem_and_mul() {
        // (x^2 + 1)(x + 2) mod (x^3) over GF(3)
        let prod = mul(&[1, 0, 1], &[2, 1], 3);
        assert_eq!(prod, vec![2, 1, 2, 1]);
        assert_eq!(rem_monic(&prod, &[0, 0, 0, 1], 3), vec![2, 1, 2]);
    }

    #[test]
    fn irreducible_selection() {
        assert_eq!(find_irreducible(3, 1), vec![0, 1]);
        assert_eq!(find_irreducible(2, 2), vec![1, 1, 1]); // x^2 + x + 1
        assert_eq!(find_irreducible(3, 2), vec![1, 0, 1]); // x^2 + 1
        assert!(is_irreducible(&find_irreducible(2, 8), 2));
        assert!(is_irreducible(&find_irreducible(5, 4), 5));
        assert!(!is_irreducible(&[1, 2, 1], 3)); // (x+1)^2
        assert!(!is_irreducible(&[0, 1, 1], 2)); // x(x+1)
    }

    #[test]
    fn irreducibles_match_root_count() {
        // A quadratic or cubic over GF(p) is irreducible iff it has no root.
        for p in [2u64, 3, 5] {
            for d in [2usize, 3] {
                let mut count_test = 0u64;
                let mut count_roots = 0u64;
                let total = p.pow(d as u32);
                for k in 0..total {
                    let mut f = Vec::with_capacity(d + 1);
                    let mut v = k;
                    for _ in 0..d {
                        f.push(v % p);
                        v /= p;
                    }
                    f.push(1);
                    let has_root = (0..p).any(|c| {
                        let mut acc = 0u64;
                        for &coef in f.iter().rev() {
                            acc = (acc * c + coef) % p;
                        }
                        acc == 0
                    });
                    if is_irreducible(&f, p) {
                        count_test += 1;
                    }
                    if !has_root {
                        count_roots += 1;
                    }
                }
                assert_eq!(count_test, count_roots, "p={p} d={d}");
            }
        }
    }
}
