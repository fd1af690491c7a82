//! Integer and modular number theory: factorization, multiplicative orders,
//! cyclotomic cosets, multipliers, and Jacobi/Kronecker symbols.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Prime factorization as (prime, exponent) pairs sorted by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduce a possibly negative multiplier into `[0, n)`.
pub fn reduce_mod(a: i64, n: u64) -> u64 {
    let n_i = n as i128;
    let r = (a as i128).rem_euclid(n_i);
    r as u64
}

/// Inverse of a mod n.
pub fn inv_mod(a: i64, n: u64) -> Result<u64> {
    let a_red = reduce_mod(a, n) as i128;
    let n_i = n as i128;
    let (mut r0, mut r1) = (n_i, a_red);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    Ok(s0.rem_euclid(n_i) as u64)
}

/// Deterministic Miller-Rabin, valid for all inputs below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho with a fixed increment schedule so outputs are reproducible.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 != 0);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Factor a positive integer. `factorize(1)` is the empty product.
pub fn factorize(n: u64) -> Factorization {
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n == 1 {
            break;
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    }
    let mut stack = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            match pairs.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => pairs.push((m, 1)),
            }
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    pairs.sort_unstable();
    Factorization { pairs }
}

/// Carmichael function: the exponent of the unit group mod `m`.
fn carmichael_lambda(m: u64) -> u64 {
    let mut lambda = 1u64;
    for &(p, e) in factorize(m).pairs() {
        let l = if p == 2 {
            match e {
                1 => 1,
                2 => 2,
                _ => 1u64 << (e - 2),
            }
        } else {
            p.pow(e - 1) * (p - 1)
        };
        lambda = lambda / gcd(lambda, l) * l;
    }
    lambda
}

/// Least t >= 1 with a^t = 1 mod m, computed by shrinking the group exponent.
pub fn mult_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::ModulusTooSmall(m));
    }
    let a = a % m;
    if gcd(a, m) != 1 {
        return Err(Error::NotCoprime { a: a as i64, n: m });
    }
    let mut t = carmichael_lambda(m);
    for p in factorize(t).primes().collect::<Vec<_>>() {
        while t % p == 0 && pow_mod(a, t / p, m) == 1 {
            t /= p;
        }
    }
    debug_assert_eq!(pow_mod(a, t, m), 1);
    Ok(t)
}

/// The distinct `base`-cyclotomic cosets mod `n`, sorted by minimal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub n: u64,
    pub base: u64,
    cosets: Vec<Vec<u64>>,
}

impl CosetPartition {
    pub fn cosets(&self) -> &[Vec<u64>] {
        &self.cosets
    }

    /// The coset containing `s`, looked up by membership.
    pub fn coset_of(&self, s: u64) -> &[u64] {
        let s = s % self.n;
        self.cosets
            .iter()
            .find(|c| c.binary_search(&s).is_ok())
            .expect("cosets partition Z_n")
    }

    pub fn representative_of(&self, s: u64) -> u64 {
        self.coset_of(s)[0]
    }

    pub fn nonzero_representatives(&self) -> impl Iterator<Item = u64> + '_ {
        self.cosets.iter().map(|c| c[0]).filter(|&r| r != 0)
    }
}

pub fn cyclotomic_cosets(n: u64, base: u64) -> Result<CosetPartition> {
    let b = base % n;
    if gcd(b, n) != 1 {
        return Err(Error::NotCoprime { a: base as i64, n });
    }
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = s;
        loop {
            seen[x as usize] = true;
            orbit.push(x);
            x = mul_mod(x, b, n);
            if x == s {
                break;
            }
        }
        orbit.sort_unstable();
        cosets.push(orbit);
    }
    cosets.sort_by_key(|c| c[0]);
    Ok(CosetPartition { n, base: b, cosets })
}

/// Image of a subset of Z_n under the multiplier i -> i*a mod n.
pub fn apply_multiplier(set: &BTreeSet<u64>, a: i64, n: u64) -> Result<BTreeSet<u64>> {
    if gcd(reduce_mod(a, n), n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let a = reduce_mod(a, n);
    Ok(set.iter().map(|&i| mul_mod(i % n, a, n)).collect())
}

/// Orbit structure of the cosets of a partition under an involutive multiplier:
/// cosets fixed by the multiplier, and unordered swapped pairs (by representative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPairing {
    pub fixed: Vec<u64>,
    pub swapped: Vec<(u64, u64)>,
}

pub fn coset_pairing(partition: &CosetPartition, a: i64) -> Result<CosetPairing> {
    let n = partition.n;
    let a = reduce_mod(a, n);
    if gcd(a, n) != 1 {
        return Err(Error::NotCoprime { a: a as i64, n });
    }
    // The multiplier must swap or fix whole cosets; a^2 has to stabilize each one.
    let a2 = mul_mod(a, a, n);
    for coset in partition.cosets() {
        let rep = coset[0];
        if partition.representative_of(mul_mod(rep, a2, n)) != rep {
            return Err(Error::MultiplierNotInvolution { a: a as i64, n });
        }
    }
    let mut fixed = Vec::new();
    let mut swapped = Vec::new();
    for coset in partition.cosets() {
        let rep = coset[0];
        if rep == 0 {
            fixed.push(0);
            continue;
        }
        let image = partition.representative_of(mul_mod(rep, a, n));
        if image == rep {
            fixed.push(rep);
        } else if rep < image {
            swapped.push((rep, image));
        }
    }
    Ok(CosetPairing { fixed, swapped })
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> Result<i32> {
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let mut num = reduce_mod(a, n);
    let mut den = n;
    let mut acc = 1i32;
    loop {
        num %= den;
        if num == 0 {
            return Ok(if den == 1 { acc } else { 0 });
        }
        while num % 2 == 0 {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                acc = -acc;
            }
        }
        if num % 4 == 3 && den % 4 == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut num, &mut den);
    }
}

/// Kronecker symbol (a/n), extending Jacobi to all integers n.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut acc = 1i32;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            acc = -acc;
        }
    }
    let mut e = 0u32;
    while n % 2 == 0 {
        n /= 2;
        e += 1;
    }
    if e > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 for a = +-1 mod 8, -1 for a = +-3 mod 8
        let r = a.rem_euclid(8);
        if (r == 3 || r == 5) && e % 2 == 1 {
            acc = -acc;
        }
    }
    acc * jacobi(a, n as u64).expect("odd part is odd")
}

/// Whether a is a quadratic residue mod n, decided prime power by prime power.
pub fn is_square_mod(a: i64, n: u64) -> Result<bool> {
    let a_red = reduce_mod(a, n);
    if gcd(a_red, n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    for &(p, e) in factorize(n).pairs() {
        if p == 2 {
            let ok = match e {
                1 => true,
                2 => a.rem_euclid(4) == 1,
                _ => a.rem_euclid(8) == 1,
            };
            if !ok {
                return Ok(false);
            }
        } else {
            // Hensel: a unit square mod an odd prime lifts to every power.
            if jacobi(a, p)? != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Decompose a prime power q = p^t; errors on anything else.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let f = factorize(q);
    match f.pairs() {
        [(p, e)] => Ok((*p, *e)),
        _ => Err(Error::NotPrimePower(q)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_order(a: u64, m: u64) -> u64 {
        let mut x = a % m;
        let mut t = 1;
        while x != 1 {
            x = mul_mod(x, a, m);
            t += 1;
        }
        t
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(45).pairs(), &[(3, 2), (5, 1)]);
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(10007).pairs(), &[(10007, 1)]);
        // trial-division primality oracle for 10007
        assert!((2..101).all(|d| 10007 % d != 0));
        for n in [2u64, 720, 1 << 32, 600851475143, u32::MAX as u64] {
            let f = factorize(n);
            assert_eq!(f.value(), n);
            assert!(f.primes().all(is_prime));
            assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(3, 7).unwrap(), 6);
        assert_eq!(mult_order(1, 11).unwrap(), 1);
        assert_eq!(mult_order(9, 5).unwrap(), 2);
        assert!(mult_order(6, 10).is_err());
        assert!(mult_order(2, 1).is_err());
    }

    #[test]
    fn mult_order_matches_naive() {
        for m in 2..400u64 {
            for a in 1..m {
                if gcd(a, m) == 1 {
                    assert_eq!(mult_order(a, m).unwrap(), naive_order(a, m), "a={a} m={m}");
                }
            }
        }
        // sampled coverage up to 1e4
        for m in (401..10_000u64).step_by(97) {
            for a in (2..m).step_by((m / 17).max(1) as usize) {
                if gcd(a, m) == 1 {
                    assert_eq!(mult_order(a, m).unwrap(), naive_order(a, m), "a={a} m={m}");
                }
            }
        }
    }

    #[test]
    fn cosets_examples() {
        let p = cyclotomic_cosets(5, 9).unwrap();
        assert_eq!(p.cosets(), &[vec![0], vec![1, 4], vec![2, 3]]);
        let p = cyclotomic_cosets(7, 16).unwrap();
        assert_eq!(p.cosets(), &[vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        let p = cyclotomic_cosets(9, 1).unwrap();
        assert_eq!(p.cosets().len(), 9);
        assert!(cyclotomic_cosets(9, 3).is_err());
    }

    #[test]
    fn cosets_are_orbits() {
        for n in (3..60u64).step_by(2) {
            for base in 2..n {
                if gcd(base, n) != 1 {
                    continue;
                }
                let part = cyclotomic_cosets(n, base).unwrap();
                let total: usize = part.cosets().iter().map(Vec::len).sum();
                assert_eq!(total, n as usize);
                for coset in part.cosets() {
                    // each coset is closed under multiplication by base
                    let set: BTreeSet<u64> = coset.iter().copied().collect();
                    let image: BTreeSet<u64> =
                        set.iter().map(|&i| mul_mod(i, base, n)).collect();
                    assert_eq!(set, image);
                }
            }
        }
    }

    #[test]
    fn multiplier_examples() {
        let s: BTreeSet<u64> = [1, 4].into_iter().collect();
        let image = apply_multiplier(&s, -3, 5).unwrap();
        assert_eq!(image, [2, 3].into_iter().collect());
        assert_eq!(apply_multiplier(&s, 1, 5).unwrap(), s);
        let zero: BTreeSet<u64> = [0].into_iter().collect();
        assert_eq!(apply_multiplier(&zero, 7, 9).unwrap(), zero);
        assert!(apply_multiplier(&s, 5, 5).is_err());
    }

    #[test]
    fn pairing_examples() {
        let p = cyclotomic_cosets(5, 9).unwrap();
        let pairing = coset_pairing(&p, -3).unwrap();
        assert_eq!(pairing.fixed, vec![0]);
        assert_eq!(pairing.swapped, vec![(1, 2)]);

        // -3*1 = 4 mod 7 stays inside {1,2,4}: everything is fixed
        let p = cyclotomic_cosets(7, 9).unwrap();
        let pairing = coset_pairing(&p, -3).unwrap();
        assert_eq!(pairing.fixed, vec![0, 1, 3]);
        assert!(pairing.swapped.is_empty());

        let p = cyclotomic_cosets(17, 16).unwrap();
        let pairing = coset_pairing(&p, -4).unwrap();
        assert_eq!(pairing.fixed, vec![0]);
        assert_eq!(pairing.swapped.len(), 4);
    }

    #[test]
    fn pairing_covers_and_involutes() {
        for (n, q) in [(5u64, 3u64), (9, 4), (13, 5), (17, 4), (21, 4), (41, 3)] {
            let part = cyclotomic_cosets(n, q * q).unwrap();
            let pairing = coset_pairing(&part, -(q as i64)).unwrap();
            let mut reps: Vec<u64> = pairing.fixed.clone();
            for &(a, b) in &pairing.swapped {
                assert_ne!(a, b);
                reps.push(a);
                reps.push(b);
            }
            reps.sort_unstable();
            let mut expected: Vec<u64> = part.cosets().iter().map(|c| c[0]).collect();
            expected.sort_unstable();
            assert_eq!(reps, expected);
        }
    }

    #[test]
    fn pairing_rejects_non_involution() {
        // mu_3 squared is mu_2, which moves the cosets of base 16 mod 7? base 16 = 2:
        // cosets {1,2,4},{3,5,6} are stable under 4 but pick n where it fails.
        let p = cyclotomic_cosets(31, 4).unwrap();
        assert!(coset_pairing(&p, 3).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert_eq!(jacobi(123456, 1).unwrap(), 1);
        assert_eq!(jacobi(3, 7).unwrap(), -1);
        assert_eq!(jacobi(10, 15).unwrap(), 0);
        assert!(jacobi(3, 8).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in (3..10_000u64).filter(|&p| is_prime(p)) {
            for a in 1..p.min(40) {
                let euler = pow_mod(a, (p - 1) / 2, p);
                let expected = if euler == 1 { 1 } else { -1 };
                assert_eq!(jacobi(a as i64, p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn kronecker_basic() {
        assert_eq!(kronecker(2, 15), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(4, 2), 0);
        assert_eq!(kronecker(-1, -1), -1);
        // multiplicative in the bottom argument
        for a in [-7i64, -3, 2, 5, 11] {
            for m in 1..40i64 {
                for n in 1..40i64 {
                    assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
                }
            }
        }
    }

    #[test]
    fn squares_examples() {
        assert!(!is_square_mod(2, 15).unwrap());
        assert!(is_square_mod(1, 35).unwrap());
        assert!(is_square_mod(2, 7).unwrap());
        assert!(is_square_mod(2, 1).unwrap());
        assert!(is_square_mod(7, 2).unwrap());
        assert!(is_square_mod(-7, 4).is_ok());
        assert!(is_square_mod(4, 6).is_err());
    }

    #[test]
    fn squares_match_exhaustive() {
        for n in 1..10_000u64 {
            let mut squares = vec![false; n as usize];
            for x in 0..n {
                squares[mul_mod(x, x, n) as usize] = true;
            }
            for a in -7i64..=7 {
                let a_red = reduce_mod(a, n);
                if gcd(a_red, n) != 1 {
                    continue;
                }
                assert_eq!(
                    is_square_mod(a, n).unwrap(),
                    squares[a_red as usize],
                    "a={a} n={n}"
                );
            }
        }
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert!(prime_power(6).is_err());
        assert!(prime_power(1).is_err());
    }
}
