//! Numeric evaluation of the growth constants: Dirichlet L-values by
//! period-paired partial sums, truncated Euler products over inert primes,
//! and the logarithmic integral for density comparisons.

use serde::Serialize;

use crate::census::sieve::primes_up_to;
use crate::error::{Error, Result};
use crate::modarith::{factorize, kronecker};

/// Logarithmic integral from 2 to x by adaptive Simpson quadrature.
pub fn li(x: f64) -> f64 {
    if x <= 2.0 {
        return 0.0;
    }
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn adapt(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, eps: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
            return left + right + (left + right - whole) / 15.0;
        }
        adapt(f, a, m, left, eps / 2.0, depth - 1) + adapt(f, m, b, right, eps / 2.0, depth - 1)
    }
    let f = |t: f64| 1.0 / t.ln();
    adapt(&f, 2.0, x, simpson(&f, 2.0, x), 1e-10, 40)
}

fn is_perfect_square(a: i64) -> bool {
    if a < 0 {
        return false;
    }
    let r = (a as u64).isqrt();
    r * r == a as u64
}

/// Period of n -> kronecker(a, n): |a| when a = 1 mod 4, else 4|a|.
pub fn character_period(a: i64) -> u64 {
    if a.rem_euclid(4) == 1 {
        a.unsigned_abs()
    } else {
        4 * a.unsigned_abs()
    }
}

/// L(1, chi_a) = sum kronecker(a, n)/n over complete character periods, with
/// the tail bounded by period / terms.
pub fn l_one(a: i64, min_terms: u64) -> (f64, f64) {
    let period = character_period(a);
    let full = (min_terms / period).max(1) * period;
    let mut sum = 0.0f64;
    for n in 1..=full {
        let k = kronecker(a, n as i64);
        if k != 0 {
            sum += k as f64 / n as f64;
        }
    }
    (sum, period as f64 / full as f64)
}

/// Product over primes p <= bound with kronecker(a, p) = -1 of (1 - p^-2),
/// inverted on request. The relative tail is below 1/bound.
pub fn inert_euler_product(a: i64, bound: u64, inverted: bool) -> (f64, f64) {
    let mut prod = 1.0f64;
    for p in primes_up_to(bound) {
        if kronecker(a, p as i64) == -1 {
            let factor = 1.0 - 1.0 / (p as f64 * p as f64);
            prod *= if inverted { 1.0 / factor } else { factor };
        }
    }
    (prod, 1.0 / bound as f64)
}

fn phi_ratio(m: u64) -> f64 {
    factorize(m)
        .primes()
        .map(|p| 1.0 - 1.0 / p as f64)
        .product()
}

/// A growth-constant estimate together with its ingredients and an explicit
/// error bound combining the character-sum and Euler-product tails.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantEstimate {
    pub value: f64,
    pub error: f64,
    pub l_value: f64,
    pub l_tail: f64,
    pub euler_value: f64,
    pub euler_tail: f64,
}

fn constant_from(a: i64, prime_bound: u64, series_terms: u64, inverted: bool) -> Result<ConstantEstimate> {
    if is_perfect_square(a) {
        return Err(Error::PerfectSquare(a));
    }
    let (l_value, l_tail) = l_one(a, series_terms);
    let (euler_value, euler_tail) = inert_euler_product(a, prime_bound, inverted);
    let squared = phi_ratio(a.unsigned_abs()) * l_value * euler_value / std::f64::consts::PI;
    if squared <= 0.0 {
        return Err(Error::Internal(format!("nonpositive constant square for a={a}")));
    }
    let value = squared.sqrt();
    let error = value * 0.5 * (l_tail / l_value.abs() + euler_tail);
    Ok(ConstantEstimate { value, error, l_value, l_tail, euler_value, euler_tail })
}

/// G_a from pi*G_a^2 = phi(|a|)/|a| * L(1, chi_a) * prod (1 - p^-2).
pub fn g_constant(a: i64, prime_bound: u64, series_terms: u64) -> Result<ConstantEstimate> {
    constant_from(a, prime_bound, series_terms, false)
}

/// J(D) from pi*J(D)^2 = phi(|D|)/|D| * L(1, chi_D) * prod 1/(1 - p^-2),
/// for a negative discriminant D.
pub fn j_constant(d: i64, prime_bound: u64, series_terms: u64) -> Result<ConstantEstimate> {
    crate::census::forms::validate_discriminant(d)?;
    constant_from(d, prime_bound, series_terms, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn li_values() {
        // Li(10^k) reference values
        assert!((li(100.0) - 29.081).abs() < 0.01);
        assert!((li(1e6) - 78626.5).abs() < 1.0);
        assert_eq!(li(2.0), 0.0);
    }

    #[test]
    fn l_values_against_closed_forms() {
        // L(1, chi_-4) = pi/4 (Leibniz)
        let (v, tail) = l_one(-4, 2_000_000);
        assert!((v - std::f64::consts::PI / 4.0).abs() < 2.0 * tail + 1e-6, "{v} {tail}");
        // L(1, chi_-3) = pi / (3 sqrt 3)
        let (v, _) = l_one(-3, 2_000_000);
        assert!((v - std::f64::consts::PI / (3.0 * 3.0f64.sqrt())).abs() < 1e-5);
        // L(1, chi_5) = 2 log phi / sqrt 5
        let (v, _) = l_one(5, 2_000_000);
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((v - 2.0 * golden.ln() / 5.0f64.sqrt()).abs() < 1e-5);
    }

    #[test]
    fn constants_reject_squares() {
        assert!(g_constant(4, 1000, 1000).is_err());
        assert!(g_constant(9, 1000, 1000).is_err());
        assert!(g_constant(-4, 1000, 1000).is_ok());
        assert!(j_constant(-3, 1000, 1000).is_ok());
        assert!(j_constant(-5, 1000, 1000).is_err());
    }

    #[test]
    fn j_over_g_ratio_is_inverse_square_of_euler() {
        for d in [-3i64, -4, -7, -8, -11, -15, -20, -23] {
            let g = g_constant(d, 100_000, 100_000).unwrap();
            let j = j_constant(d, 100_000, 100_000).unwrap();
            let ratio = (j.value * j.value) / (g.value * g.value);
            let expected = 1.0 / (g.euler_value * g.euler_value);
            assert!((ratio - expected).abs() < 1e-9, "d={d}");
        }
    }
}
