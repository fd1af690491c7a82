//! Exact arithmetic in GF(p^d), conjugation z -> z^q on GF(q^2), the gamma
//! extension equation, and root fields GF(q^(2m)) containing a primitive n-th
//! root of unity.
//!
//! Every deterministic choice is pinned: the field modulus is the first monic
//! irreducible in lexicographic order with the constant term most significant,
//! and "least element" always means least canonical value sum(c_i * p^i).

pub mod zpoly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::modarith::{self, factorize, gcd, mult_order, prime_power};

/// A concrete model of GF(p^degree): the characteristic, the extension degree,
/// and the monic irreducible modulus (coefficients low-to-high).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    degree: usize,
    modulus: Vec<u64>,
}

fn field_cache() -> &'static Mutex<HashMap<(u64, usize), Arc<FieldSpec>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<FieldSpec>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build (or fetch the cached) GF(p^d) with the deterministic modulus.
pub fn build_field(p: u64, degree: usize) -> Result<Arc<FieldSpec>> {
    if !modarith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    assert!(degree >= 1);
    if checked_size(p, degree).is_none() {
        return Err(Error::RootFieldTooLarge { p, degree });
    }
    let mut cache = field_cache().lock().unwrap();
    if let Some(f) = cache.get(&(p, degree)) {
        return Ok(f.clone());
    }
    let modulus = zpoly::find_irreducible(p, degree);
    let spec = Arc::new(FieldSpec { p, degree, modulus });
    cache.insert((p, degree), spec.clone());
    Ok(spec)
}

/// GF(q^2) for a prime power q = p^t.
pub fn build_gf_q2(q: u64) -> Result<Arc<FieldSpec>> {
    let (p, t) = prime_power(q)?;
    build_field(p, 2 * t as usize)
}

fn checked_size(p: u64, degree: usize) -> Option<u128> {
    let mut size: u128 = 1;
    for _ in 0..degree {
        size = size.checked_mul(p as u128)?;
        if size >= (1u128 << 127) {
            return None;
        }
    }
    Some(size)
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of field elements, p^degree.
    pub fn size(&self) -> u128 {
        checked_size(self.p, self.degree).expect("size checked at construction")
    }

    /// For GF(q^2) models (even degree over GF(p)), the subfield order q.
    pub fn q(&self) -> u128 {
        assert!(self.degree % 2 == 0, "field is not of square order");
        checked_size(self.p, self.degree / 2).expect("half degree fits")
    }
}

/// Element of a [`FieldSpec`], a length-`degree` coefficient vector over GF(p).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<FieldSpec>,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({}^{})", self.value(), self.field.p, self.field.degree)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

pub trait FieldOps {
    fn element(self: &Arc<Self>, coeffs: Vec<u64>) -> FieldElement;
    fn zero(self: &Arc<Self>) -> FieldElement;
    fn one(self: &Arc<Self>) -> FieldElement;
    fn from_int(self: &Arc<Self>, k: u64) -> FieldElement;
    fn from_value(self: &Arc<Self>, v: u128) -> FieldElement;
    fn elements(self: &Arc<Self>) -> Box<dyn Iterator<Item = FieldElement>>;
}

impl FieldOps for FieldSpec {
    fn element(self: &Arc<Self>, mut coeffs: Vec<u64>) -> FieldElement {
        coeffs.resize(self.degree, 0);
        for c in &mut coeffs {
            *c %= self.p;
        }
        FieldElement { field: self.clone(), coeffs }
    }

    fn zero(self: &Arc<Self>) -> FieldElement {
        self.element(Vec::new())
    }

    fn one(self: &Arc<Self>) -> FieldElement {
        self.element(vec![1])
    }

    fn from_int(self: &Arc<Self>, k: u64) -> FieldElement {
        self.element(vec![k % self.p])
    }

    fn from_value(self: &Arc<Self>, mut v: u128) -> FieldElement {
        let mut coeffs = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            coeffs.push((v % self.p as u128) as u64);
            v /= self.p as u128;
        }
        FieldElement { field: self.clone(), coeffs }
    }

    /// All elements in increasing canonical value. Only call on small fields.
    fn elements(self: &Arc<Self>) -> Box<dyn Iterator<Item = FieldElement>> {
        let spec = self.clone();
        Box::new((0..spec.size()).map(move |v| spec.from_value(v)))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Canonical value sum(c_i * p^i); the total order used for "least" choices.
    pub fn value(&self) -> u128 {
        let p = self.field.p as u128;
        self.coeffs.iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
    }

    fn check_same_field(&self, other: &FieldElement) {
        assert_eq!(
            self.field, other.field,
            "operands belong to different fields"
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        let p = self.field.p;
        let prod = zpoly::mul(&zpoly::trim(self.coeffs.clone()), &zpoly::trim(other.coeffs.clone()), p);
        let red = zpoly::rem_monic(&prod, &self.field.modulus, p);
        self.field.element(red)
    }

    pub fn pow(&self, mut exp: u128) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        let p = self.field.p;
        // extended Euclid over GF(p)[x]
        let mut r0 = self.field.modulus.clone();
        let mut r1 = zpoly::trim(self.coeffs.clone());
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // divide r0 by r1
            let lead_inv = modarith::pow_mod(*r1.last().unwrap(), p - 2, p);
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let mut rem = r0.clone();
            while rem.len() >= r1.len() && !rem.is_empty() {
                let shift = rem.len() - r1.len();
                let c = *rem.last().unwrap() * lead_inv % p;
                q[shift] = c;
                for (j, &rc) in r1.iter().enumerate() {
                    rem[shift + j] = (rem[shift + j] + p - c * rc % p) % p;
                }
                rem = zpoly::trim(rem);
                if rem.len() < r1.len() {
                    break;
                }
            }
            let q = zpoly::trim(q);
            let s_next = zpoly::sub(&s0, &zpoly::mul(&q, &s1, p), p);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
        // r0 = gcd (a nonzero constant since the modulus is irreducible)
        debug_assert_eq!(zpoly::degree(&r0), Some(0));
        let scale = modarith::pow_mod(r0[0], p - 2, p);
        self.field.element(zpoly::scale(&s0, scale, p))
    }

    /// Frobenius conjugate z -> z^q on a GF(q^2) model.
    pub fn conj(&self) -> FieldElement {
        self.pow(self.field.q())
    }
}

/// Ring embedding of one field model into a larger one, fixed by the image of
/// the source generator. Carries an exact preimage table for descending
/// coefficients back into the source field.
pub struct Embedding {
    source: Arc<FieldSpec>,
    target: Arc<FieldSpec>,
    gen_image: FieldElement,
    gen_powers: Vec<FieldElement>,
    preimage_map: HashMap<Vec<u64>, Vec<u64>>,
}

impl Embedding {
    /// `gen_image` must be a root of the source modulus inside the target.
    pub fn new(
        source: Arc<FieldSpec>,
        target: Arc<FieldSpec>,
        gen_image: FieldElement,
    ) -> Result<Embedding> {
        if source.p != target.p || target.degree % source.degree != 0 {
            return Err(Error::FieldMismatch);
        }
        if source.size() > (1 << 20) {
            return Err(Error::RootFieldTooLarge { p: source.p, degree: source.degree });
        }
        let eval = eval_zpoly_at(&source.modulus, &gen_image, &target);
        if !eval.is_zero() {
            return Err(Error::Internal(
                "embedding image is not a root of the source modulus".into(),
            ));
        }
        let mut gen_powers = Vec::with_capacity(source.degree);
        let mut acc = target.one();
        for _ in 0..source.degree {
            gen_powers.push(acc.clone());
            acc = acc.mul(&gen_image);
        }
        let mut emb = Embedding {
            source: source.clone(),
            target,
            gen_image,
            gen_powers,
            preimage_map: HashMap::new(),
        };
        let mut map = HashMap::new();
        for z in source.elements() {
            let w = emb.embed(&z);
            map.insert(w.coeffs.clone(), z.coeffs.clone());
        }
        emb.preimage_map = map;
        Ok(emb)
    }

    pub fn source(&self) -> &Arc<FieldSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FieldSpec> {
        &self.target
    }

    pub fn gen_image(&self) -> &FieldElement {
        &self.gen_image
    }

    pub fn embed(&self, z: &FieldElement) -> FieldElement {
        assert_eq!(z.field, self.source);
        let mut acc = self.target.zero();
        for (c, pw) in z.coeffs.iter().zip(&self.gen_powers) {
            if *c != 0 {
                acc = acc.add(&pw.mul(&self.target.from_int(*c)));
            }
        }
        acc
    }

    /// Exact preimage, or None when `w` is outside the embedded subfield.
    pub fn preimage(&self, w: &FieldElement) -> Option<FieldElement> {
        assert_eq!(w.field, self.target);
        self.preimage_map
            .get(&w.coeffs)
            .map(|c| self.source.element(c.clone()))
    }
}

fn eval_zpoly_at(poly: &[u64], x: &FieldElement, field: &Arc<FieldSpec>) -> FieldElement {
    let mut acc = field.zero();
    for &c in poly.iter().rev() {
        acc = acc.mul(x).add(&field.from_int(c));
    }
    acc
}

/// Distinct prime factors of p^d - 1, obtained by factoring the cyclotomic
/// pieces Phi_e(p) for e | d so that every piece stays within u64.
fn group_order_prime_factors(p: u64, d: usize) -> Result<Vec<u128>> {
    let mut phi: HashMap<usize, u128> = HashMap::new();
    let mut divisors: Vec<usize> = (1..=d).filter(|e| d % e == 0).collect();
    divisors.sort_unstable();
    let mut primes: Vec<u128> = Vec::new();
    for &e in &divisors {
        let mut pe: u128 = 1;
        for _ in 0..e {
            pe *= p as u128;
        }
        let mut piece = pe - 1;
        for (&f, &phi_f) in phi.iter() {
            if e % f == 0 {
                piece /= phi_f;
            }
        }
        phi.insert(e, piece);
        if piece > u64::MAX as u128 {
            return Err(Error::RootFieldTooLarge { p, degree: d });
        }
        for q in factorize(piece as u64).primes() {
            if !primes.contains(&(q as u128)) {
                primes.push(q as u128);
            }
        }
    }
    primes.sort_unstable();
    Ok(primes)
}

/// The least multiplicative generator of the field, in canonical value order.
pub fn least_generator(field: &Arc<FieldSpec>) -> Result<FieldElement> {
    let order = field.size() - 1;
    let primes = group_order_prime_factors(field.p(), field.degree())?;
    let start = if field.degree() > 1 { field.p() as u128 } else { 1 };
    let mut v = start;
    while v < field.size() {
        let g = field.from_value(v);
        if primes.iter().all(|&r| !g.pow(order / r).is_one()) {
            return Ok(g);
        }
        v += 1;
    }
    Err(Error::Internal("no generator found".into()))
}

/// Root field data: GF(q^(2m)) containing a primitive n-th root of unity,
/// the embedding of GF(q^2) into it, and the deterministic root alpha.
pub struct RootField {
    pub n: u64,
    pub field: Arc<FieldSpec>,
    pub embedding: Embedding,
    pub alpha: FieldElement,
}

fn root_field_cache() -> &'static Mutex<HashMap<(u64, usize, u64), Arc<RootField>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize, u64), Arc<RootField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build (or fetch) the root field of x^n - 1 over the GF(q^2) model `base`.
pub fn root_field(n: u64, base: &Arc<FieldSpec>) -> Result<Arc<RootField>> {
    if n == 0 || gcd(n, base.p()) != 1 {
        return Err(Error::NotCoprime { a: base.p() as i64, n });
    }
    let key = (base.p(), base.degree(), n);
    if let Some(rf) = root_field_cache().lock().unwrap().get(&key) {
        return Ok(rf.clone());
    }
    let q2 = base.size();
    let m = if n == 1 {
        1
    } else {
        let q2_u64 =
            u64::try_from(q2 % n as u128).expect("reduced base fits u64");
        mult_order(q2_u64, n)? as usize
    };
    let target = build_field(base.p(), base.degree() * m)?;
    let generator = least_generator(&target)?;
    let group_order = target.size() - 1;

    // The copy of GF(q^2) inside the target is {0} union the cyclic group
    // generated by g^((Q-1)/(q^2-1)); the source modulus splits there.
    let subgroup_gen = generator.pow(group_order / (q2 - 1));
    let mut roots = Vec::new();
    let mut w = target.one();
    for _ in 0..(q2 - 1) {
        if eval_zpoly_at(base.modulus(), &w, &target).is_zero() {
            roots.push(w.clone());
        }
        w = w.mul(&subgroup_gen);
    }
    if roots.len() != base.degree() {
        return Err(Error::Internal(format!(
            "expected {} roots of the base modulus, found {}",
            base.degree(),
            roots.len()
        )));
    }
    roots.sort_by_key(FieldElement::value);
    let embedding = Embedding::new(base.clone(), target.clone(), roots[0].clone())?;

    debug_assert_eq!(group_order % n as u128, 0);
    let alpha = generator.pow(group_order / n as u128);
    let rf = Arc::new(RootField { n, field: target, embedding, alpha });
    root_field_cache().lock().unwrap().insert(key, rf.clone());
    Ok(rf)
}

/// Least gamma in GF(q^2) with 1 + gamma^(q+1) * n = 0. Always solvable because
/// the norm map onto GF(q) is surjective.
pub fn solve_gamma(n: u64, field: &Arc<FieldSpec>) -> Result<FieldElement> {
    gamma_solutions(n, field)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("gamma equation has no solution".into()))
}

/// All solutions of 1 + gamma^(q+1) * n = 0, in canonical value order.
pub fn gamma_solutions(n: u64, field: &Arc<FieldSpec>) -> Result<Vec<FieldElement>> {
    if gcd(n, field.p()) != 1 {
        return Err(Error::NotCoprime { a: field.p() as i64, n });
    }
    let q = field.q();
    let n_elt = field.from_int(n % field.p());
    let one = field.one();
    Ok(field
        .elements()
        .filter(|g| one.add(&g.pow(q + 1).mul(&n_elt)).is_zero())
        .collect())
}

pub fn is_valid_gamma(gamma: &FieldElement, n: u64) -> bool {
    let field = gamma.field();
    let q = field.q();
    let n_elt = field.from_int(n % field.p());
    field.one().add(&gamma.pow(q + 1).mul(&n_elt)).is_zero()
}
