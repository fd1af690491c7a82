//! Arithmetic classification of code lengths: which odd n are split by
//! mu_{-q}, which admit duadic codes at all, and hence which lengths carry
//! Hermitian self-dual extended duadic codes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::modarith::{factorize, gcd, is_square_mod, mult_order, pow_mod, reduce_mod};

/// Per-prime-divisor evidence backing a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeEvidence {
    pub r: u64,
    pub ord: u64,
    pub ord_mod_4: u64,
}

/// Verdict for one (n, q): splitting by mu_{-q}, duadic existence, and
/// self-dual-extension existence (the latter coincides with the splitting
/// condition), with the per-prime order evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthVerdict {
    pub n: u64,
    pub q: u64,
    pub splits_by_mu_minus_q: bool,
    pub duadic_exists: bool,
    pub hsd_extended_exists: bool,
    pub evidence: Vec<PrimeEvidence>,
}

fn check_inputs(n: u64, q: u64) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::EvenLength(n));
    }
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { a: q as i64, n });
    }
    Ok(())
}

fn prime_evidence(n: u64, q: u64) -> Result<Vec<PrimeEvidence>> {
    factorize(n)
        .primes()
        .map(|r| {
            let ord = mult_order(q % r, r)?;
            Ok(PrimeEvidence { r, ord, ord_mod_4: ord % 4 })
        })
        .collect()
}

/// mu_{-q} splits n iff ord_r(q) != 2 (mod 4) for every prime r | n.
pub fn splits_by_mu_minus_q(n: u64, q: u64) -> Result<bool> {
    check_inputs(n, q)?;
    Ok(prime_evidence(n, q)?.iter().all(|e| e.ord_mod_4 != 2))
}

/// Restated order form: every prime r | n has ord_r(q) odd or ord_r(q^2) even.
pub fn splits_order_form(n: u64, q: u64) -> Result<bool> {
    check_inputs(n, q)?;
    for r in factorize(n).primes() {
        let ord_q = mult_order(q % r, r)?;
        let ord_q2 = mult_order(q % r * q % r, r)?;
        if ord_q % 2 != 1 && ord_q2 % 2 != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// gcd(n, q^(2i-1) + 1) = 1 for every i >= 1, decided over one full period of
/// q mod n; the exponents 2i-1 cycle within ord_n(q) steps.
pub fn coprime_to_s_q(n: u64, q: u64) -> Result<bool> {
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { a: q as i64, n });
    }
    if n == 1 {
        return Ok(true);
    }
    let period = mult_order(q % n, n)?;
    let q2 = pow_mod(q, 2, n);
    let mut power = q % n; // q^(2i-1) mod n at i = 1
    for _ in 0..period {
        if gcd((power + 1) % n, n) != 1 {
            return Ok(false);
        }
        power = crate::modarith::mul_mod(power, q2, n);
    }
    Ok(true)
}

/// Duadic codes of length n over GF(q) exist iff q is a square mod n.
pub fn duadic_exists(n: u64, q: u64) -> Result<bool> {
    check_inputs(n, q)?;
    is_square_mod(q as i64, n)
}

/// Lengths with a Hermitian self-dual extended cyclic code over GF(q^2):
/// exactly the lengths split by mu_{-q}.
pub fn hsd_extended_exists(n: u64, q: u64) -> Result<bool> {
    splits_by_mu_minus_q(n, q)
}

/// Splitting by a general multiplier mu_t with t^2 = q^(2j) but t itself not a
/// power of q^2 mod n: holds iff gcd(n, q^(2i) - t) = 1 for every i >= 1.
pub fn general_multiplier_splits(n: u64, q: u64, t: i64) -> Result<bool> {
    check_inputs(n, q)?;
    let t_red = reduce_mod(t, n);
    if gcd(t_red, n) != 1 {
        return Err(Error::NotCoprime { a: t, n });
    }
    if n == 1 {
        return Ok(true);
    }
    // powers of q^2 mod n over one period
    let q2 = pow_mod(q, 2, n);
    let period = mult_order(q2, n)?;
    let mut powers = Vec::with_capacity(period as usize);
    let mut x = 1u64;
    for _ in 0..period {
        powers.push(x);
        x = crate::modarith::mul_mod(x, q2, n);
    }
    if powers.contains(&t_red) {
        return Err(Error::MultiplierPrecondition {
            t,
            n,
            reason: "t is itself a power of q^2 mod n",
        });
    }
    let t_sq = crate::modarith::mul_mod(t_red, t_red, n);
    if !powers.contains(&t_sq) {
        return Err(Error::MultiplierPrecondition {
            t,
            n,
            reason: "t^2 is not a power of q^2 mod n",
        });
    }
    for &qp in &powers {
        if gcd((qp + n - t_red) % n, n) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full verdict with evidence.
pub fn classify(n: u64, q: u64) -> Result<LengthVerdict> {
    check_inputs(n, q)?;
    let evidence = prime_evidence(n, q)?;
    let splits = evidence.iter().all(|e| e.ord_mod_4 != 2);
    Ok(LengthVerdict {
        n,
        q,
        splits_by_mu_minus_q: splits,
        duadic_exists: duadic_exists(n, q)?,
        hsd_extended_exists: splits,
        evidence,
    })
}

/// Verdicts for all odd n <= n_max coprime to q.
pub fn classify_range(q: u64, n_max: u64, exec: Exec) -> Result<Vec<LengthVerdict>> {
    let lengths: Vec<u64> = (1..=n_max)
        .filter(|n| n % 2 == 1 && gcd(*n, q) == 1)
        .collect();
    let verdicts = exec::map_items(lengths, exec, |n| classify(n, q));
    verdicts.into_iter().collect()
}
