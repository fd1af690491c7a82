//! Dense polynomials with coefficients in a [`FieldSpec`], plus the cyclic-ring
//! operations in R_n = GF(q^2)[x]/(x^n - 1) used by code constructions.

use std::fmt;
use std::sync::Arc;

use crate::gf::{FieldElement, FieldOps, FieldSpec};
use crate::modarith::{mul_mod, reduce_mod};

/// Polynomial over a field, coefficients low-to-high with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Arc<FieldSpec>,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<u128> = self.coeffs.iter().map(FieldElement::value).collect();
        write!(f, "Poly{vals:?}")
    }
}

impl Poly {
    pub fn zero(field: Arc<FieldSpec>) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Arc<FieldSpec>) -> Poly {
        let one = field.one();
        Poly { field, coeffs: vec![one] }
    }

    pub fn from_coeffs(field: Arc<FieldSpec>, coeffs: Vec<FieldElement>) -> Poly {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    /// x - root
    pub fn linear(root: &FieldElement) -> Poly {
        let field = root.field().clone();
        Poly::from_coeffs(field.clone(), vec![root.neg(), field.one()])
    }

    /// x^n - 1
    pub fn xn_minus_1(field: Arc<FieldSpec>, n: u64) -> Poly {
        let mut coeffs = vec![field.zero(); n as usize + 1];
        coeffs[0] = field.one().neg();
        coeffs[n as usize] = field.one();
        Poly::from_coeffs(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(FieldElement::is_one)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Poly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Poly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn scale(&self, k: &FieldElement) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| c.mul(k)).collect();
        Poly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn make_monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => self.scale(&lead.inv()),
        }
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divmod(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.coeffs.last().unwrap().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let c = rem.last().unwrap().mul(&lead_inv);
            let shift = rem.len() - 1 - dd;
            if !c.is_zero() {
                quot[shift] = c.clone();
                for (j, dc) in divisor.coeffs.iter().enumerate().take(dd) {
                    rem[shift + j] = rem[shift + j].sub(&c.mul(dc));
                }
            }
            rem.pop();
        }
        (
            Poly::from_coeffs(self.field.clone(), quot),
            Poly::from_coeffs(self.field.clone(), rem),
        )
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divmod(divisor).1
    }

    /// Extended Euclid: returns (g, u, v) with u*self + v*other = g, g monic.
    pub fn extended_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Poly::one(self.field.clone());
        let mut s1 = Poly::zero(self.field.clone());
        let mut t0 = Poly::zero(self.field.clone());
        let mut t1 = Poly::one(self.field.clone());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if let Some(lead) = r0.coeffs.last().cloned() {
            let inv = lead.inv();
            return (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv));
        }
        (r0, s0, t0)
    }

    /// Coefficient-wise conjugation z -> z^q.
    pub fn conj(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(FieldElement::conj).collect();
        Poly::from_coeffs(self.field.clone(), coeffs)
    }

    /// Reciprocal x^deg * f(1/x).
    pub fn reciprocal(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(self.field.clone(), coeffs)
    }

    /// Coefficients padded out to length n.
    pub fn to_vec(&self, n: u64) -> Vec<FieldElement> {
        assert!(self.coeffs.len() <= n as usize, "degree exceeds ring length");
        let mut v = self.coeffs.clone();
        v.resize(n as usize, self.field.zero());
        v
    }

    /// Product in R_n = F[x]/(x^n - 1).
    pub fn mul_in_rn(&self, other: &Poly, n: u64) -> Poly {
        let mut coeffs = vec![self.field.zero(); n as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % n as usize;
                coeffs[k] = coeffs[k].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(self.field.clone(), coeffs)
    }

    /// Multiplier action f(x) -> f(x^a) mod (x^n - 1).
    pub fn multiplier_in_rn(&self, a: i64, n: u64) -> Poly {
        let a = reduce_mod(a, n);
        let mut coeffs = vec![self.field.zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = mul_mod(i as u64 % n, a, n) as usize;
            coeffs[k] = coeffs[k].add(c);
        }
        Poly::from_coeffs(self.field.clone(), coeffs)
    }

    /// Evaluate at a point of the same field.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = x.field().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn ring_basics() {
        let f = build_field(3, 2).unwrap();
        let xn1 = Poly::xn_minus_1(f.clone(), 5);
        let g = Poly::linear(&f.one()); // x - 1
        let (h, r) = xn1.divmod(&g);
        assert!(r.is_zero());
        assert_eq!(h.mul(&g), xn1);
        // x * x^4 = 1 in R_5
        let x = Poly::from_coeffs(f.clone(), vec![f.zero(), f.one()]);
        let x4 = Poly::from_coeffs(
            f.clone(),
            vec![f.zero(), f.zero(), f.zero(), f.zero(), f.one()],
        );
        assert_eq!(x.mul_in_rn(&x4, 5), Poly::one(f.clone()));
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = build_field(2, 2).unwrap();
        let a = Poly::from_coeffs(f.clone(), vec![f.one(), f.one(), f.one()]);
        let b = Poly::from_coeffs(f.clone(), vec![f.one(), f.zero(), f.one()]);
        let (g, u, v) = a.extended_gcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert!(g.is_monic());
    }

    #[test]
    fn multiplier_is_substitution() {
        let f = build_field(3, 2).unwrap();
        let n = 7u64;
        let poly = Poly::from_coeffs(
            f.clone(),
            vec![f.from_int(1), f.from_int(2), f.zero(), f.from_int(1)],
        );
        // f(x^2) mod x^7-1 computed by brute substitution
        let x2 = Poly::from_coeffs(f.clone(), vec![f.zero(), f.zero(), f.one()]);
        let mut acc = Poly::zero(f.clone());
        let mut pw = Poly::one(f.clone());
        for c in poly.coeffs() {
            acc = acc.add(&pw.scale(c));
            pw = pw.mul_in_rn(&x2, n);
        }
        assert_eq!(poly.multiplier_in_rn(2, n), acc);
    }
}
