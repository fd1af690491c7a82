//! Prime sieving and a segmented evaluator for {0,1}-valued multiplicative
//! functions. Segments are disjoint, processed independently, and merged by
//! addition, so results are identical under any execution strategy.

use crate::exec::{self, Exec};
use crate::modarith::{mul_mod, pow_mod};

const SEGMENT: u64 = 1 << 16;

/// All primes <= x by a plain odd-only sieve.
pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let mut primes = vec![2];
    let half = ((x - 1) / 2) as usize; // index i represents 2i + 3
    let mut composite = vec![false; half];
    let mut i = 0usize;
    while i < half {
        if !composite[i] {
            let p = 2 * i as u64 + 3;
            if p > x {
                break;
            }
            primes.push(p);
            // odd multiples only: p^2, p^2 + 2p, ...
            let mut m = p * p;
            while m <= x {
                composite[((m - 3) / 2) as usize] = true;
                m += 2 * p;
            }
        }
        i += 1;
    }
    primes
}

/// nu_2 of ord_r(q) for an odd prime r not dividing q, without computing the
/// order itself: reduce to the 2-power part of the cyclic group.
pub fn ord_two_valuation(q: u64, r: u64) -> u32 {
    debug_assert!(r >= 2 && q % r != 0);
    let mut d = r - 1;
    while d % 2 == 0 {
        d /= 2;
    }
    let mut b = pow_mod(q % r, d, r);
    let mut k = 0u32;
    while b != 1 {
        b = mul_mod(b, b, r);
        k += 1;
    }
    k
}

/// ord_r(q) = 2 (mod 4), i.e. the order has 2-adic valuation exactly 1.
pub fn ord_is_two_mod_four(q: u64, r: u64) -> bool {
    ord_two_valuation(q, r) == 1
}

/// Sum of a {0,1}-valued multiplicative function over lo..=hi, restricted by
/// `filter`. The function is given by its value on prime powers:
/// `prime_fn(p, e)` is the factor at p^e, and f(n) is 1 iff every factor is.
pub fn sum_multiplicative_01<F, G>(lo: u64, hi: u64, prime_fn: &F, filter: &G, exec: Exec) -> u64
where
    F: Fn(u64, u32) -> bool + Sync + Send,
    G: Fn(u64) -> bool + Sync + Send,
{
    if hi < lo || hi == 0 {
        return 0;
    }
    let lo = lo.max(1);
    let primes = primes_up_to(hi.isqrt());
    let parts = exec::map_ranges(lo, hi + 1, SEGMENT, exec, |a, b| {
        segment_sum(a, b, &primes, prime_fn, filter)
    });
    parts.into_iter().sum()
}

fn segment_values<F>(lo: u64, hi_excl: u64, primes: &[u64], prime_fn: &F) -> Vec<bool>
where
    F: Fn(u64, u32) -> bool,
{
    let len = (hi_excl - lo) as usize;
    let mut rem: Vec<u64> = (lo..hi_excl).collect();
    let mut ok = vec![true; len];
    for &p in primes {
        let mut m = lo.div_ceil(p) * p;
        if m < p {
            m = p;
        }
        while m < hi_excl {
            let idx = (m - lo) as usize;
            let mut e = 0u32;
            while rem[idx] % p == 0 {
                rem[idx] /= p;
                e += 1;
            }
            if e > 0 && !prime_fn(p, e) {
                ok[idx] = false;
            }
            m += p;
        }
    }
    for idx in 0..len {
        if ok[idx] && rem[idx] > 1 && !prime_fn(rem[idx], 1) {
            ok[idx] = false;
        }
    }
    ok
}

fn segment_sum<F, G>(lo: u64, hi_excl: u64, primes: &[u64], prime_fn: &F, filter: &G) -> u64
where
    F: Fn(u64, u32) -> bool,
    G: Fn(u64) -> bool,
{
    segment_values(lo, hi_excl, primes, prime_fn)
        .into_iter()
        .zip(lo..hi_excl)
        .filter(|&(ok, n)| ok && filter(n))
        .count() as u64
}

/// The raw per-n multiplicative indicator over 1..=x (no domain filter),
/// through the same segmented path as the counts.
pub fn values_multiplicative_01<F>(x: u64, prime_fn: &F, exec: Exec) -> Vec<bool>
where
    F: Fn(u64, u32) -> bool + Sync + Send,
{
    let primes = primes_up_to(x.isqrt());
    let parts = exec::map_ranges(1, x + 1, SEGMENT, exec, |a, b| {
        segment_values(a, b, &primes, prime_fn)
    });
    parts.concat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::{factorize, is_prime};

    #[test]
    fn primes_match_trial_division() {
        let primes = primes_up_to(1000);
        let expected: Vec<u64> = (2..=1000).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, expected);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
    }

    #[test]
    fn ord_valuation_matches_order() {
        for q in [2u64, 3, 5, 9] {
            for &r in primes_up_to(500).iter().filter(|&&r| q % r != 0) {
                let ord = crate::modarith::mult_order(q % r, r).unwrap();
                assert_eq!(ord_two_valuation(q, r), ord.trailing_zeros(), "q={q} r={r}");
                assert_eq!(ord_is_two_mod_four(q, r), ord % 4 == 2);
            }
        }
    }

    #[test]
    fn segmented_sum_matches_naive() {
        // count n <= x whose prime factors are all 1 mod 4, with a filter
        let prime_fn = |p: u64, _e: u32| p % 4 == 1;
        let filter = |n: u64| n % 3 != 0;
        let x = 5000u64;
        let naive = (1..=x)
            .filter(|&n| filter(n) && factorize(n).primes().all(|p| prime_fn(p, 0)))
            .count() as u64;
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(sum_multiplicative_01(1, x, &prime_fn, &filter, exec), naive);
        }
        // partial ranges add up
        let a = sum_multiplicative_01(1, 1234, &prime_fn, &filter, Exec::Sequential);
        let b = sum_multiplicative_01(1235, x, &prime_fn, &filter, Exec::Sequential);
        assert_eq!(a + b, naive);
    }
}
