//! Cyclic codes over GF(q^2) of length n coprime to the characteristic,
//! carried by their defining sets. Generator polynomial, generating
//! idempotent, and generator matrix are materialized lazily and memoized.

pub mod linalg;
pub mod poly;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, FieldElement, FieldOps, FieldSpec};
use crate::modarith::{self, gcd, mul_mod, reduce_mod};

pub use linalg::Mat;
pub use poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualForm {
    Euclidean,
    Hermitian,
}

/// A cyclic code of length n over GF(q^2), determined by its defining set
/// relative to the deterministic primitive n-th root of unity.
pub struct CyclicCode {
    field: Arc<FieldSpec>,
    n: u64,
    defining: BTreeSet<u64>,
    gen_poly: OnceLock<Poly>,
    idem: OnceLock<Poly>,
    gen_matrix: OnceLock<Mat>,
}

impl Clone for CyclicCode {
    fn clone(&self) -> Self {
        CyclicCode {
            field: self.field.clone(),
            n: self.n,
            defining: self.defining.clone(),
            gen_poly: self.gen_poly.clone(),
            idem: self.idem.clone(),
            gen_matrix: self.gen_matrix.clone(),
        }
    }
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.defining == other.defining
    }
}

impl Eq for CyclicCode {}

impl std::fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CyclicCode(n={}, q^2={}, T={:?})",
            self.n,
            self.field.size(),
            self.defining
        )
    }
}

impl CyclicCode {
    pub fn new(field: Arc<FieldSpec>, n: u64, defining: BTreeSet<u64>) -> Result<CyclicCode> {
        if n == 0 || gcd(n, field.p()) != 1 {
            return Err(Error::NotCoprime { a: field.p() as i64, n });
        }
        let q2 = (field.size() % n as u128) as u64;
        for &t in &defining {
            if t >= n {
                return Err(Error::NotCosetClosed { base: q2, n });
            }
            if !defining.contains(&mul_mod(t, q2, n)) {
                return Err(Error::NotCosetClosed { base: q2, n });
            }
        }
        Ok(CyclicCode {
            field,
            n,
            defining,
            gen_poly: OnceLock::new(),
            idem: OnceLock::new(),
            gen_matrix: OnceLock::new(),
        })
    }

    pub fn whole_space(field: Arc<FieldSpec>, n: u64) -> Result<CyclicCode> {
        CyclicCode::new(field, n, BTreeSet::new())
    }

    pub fn zero_code(field: Arc<FieldSpec>, n: u64) -> Result<CyclicCode> {
        CyclicCode::new(field, n, (0..n).collect())
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn defining_set(&self) -> &BTreeSet<u64> {
        &self.defining
    }

    pub fn dim(&self) -> u64 {
        self.n - self.defining.len() as u64
    }

    /// q reduced mod n, for multiplier arithmetic.
    fn q_mod_n(&self) -> u64 {
        (self.field.q() % self.n as u128) as u64
    }

    fn derived(&self, defining: BTreeSet<u64>) -> CyclicCode {
        CyclicCode::new(self.field.clone(), self.n, defining)
            .expect("defining set derived from a valid code")
    }

    /// Monic generator polynomial: the product of (x - alpha^i) over i in T,
    /// computed in the root field and descended through the embedding.
    pub fn generator_poly(&self) -> Result<&Poly> {
        if let Some(g) = self.gen_poly.get() {
            return Ok(g);
        }
        let rf = gf::root_field(self.n, &self.field)?;
        let mut g_big = Poly::one(rf.field.clone());
        for &i in &self.defining {
            g_big = g_big.mul(&Poly::linear(&rf.alpha.pow(i as u128)));
        }
        let coeffs = g_big
            .coeffs()
            .iter()
            .map(|c| {
                rf.embedding.preimage(c).ok_or_else(|| {
                    Error::Internal(
                        "generator coefficient does not descend to GF(q^2)".into(),
                    )
                })
            })
            .collect::<Result<Vec<FieldElement>>>()?;
        let g = Poly::from_coeffs(self.field.clone(), coeffs);
        debug_assert!(g.is_monic());
        debug_assert!(Poly::xn_minus_1(self.field.clone(), self.n).rem(&g).is_zero());
        let _ = self.gen_poly.set(g);
        Ok(self.gen_poly.get().expect("just set"))
    }

    /// The unique idempotent generating the code: with u*g + v*h = 1 for
    /// h = (x^n - 1)/g, the combination u*g vanishes on T and is 1 elsewhere.
    pub fn idempotent(&self) -> Result<&Poly> {
        if let Some(e) = self.idem.get() {
            return Ok(e);
        }
        let g = self.generator_poly()?.clone();
        let xn1 = Poly::xn_minus_1(self.field.clone(), self.n);
        let e = if g.degree() == Some(self.n as usize) {
            Poly::zero(self.field.clone())
        } else {
            let (h, r) = xn1.divmod(&g);
            debug_assert!(r.is_zero());
            let (one, u, _v) = g.extended_gcd(&h);
            debug_assert!(one.degree() == Some(0));
            u.mul_in_rn(&g, self.n)
        };
        debug_assert_eq!(e.mul_in_rn(&e, self.n), e);
        let _ = self.idem.set(e);
        Ok(self.idem.get().expect("just set"))
    }

    /// Rows x^i * g(x) for 0 <= i < dim.
    pub fn generator_matrix(&self) -> Result<&Mat> {
        if let Some(m) = self.gen_matrix.get() {
            return Ok(m);
        }
        let g = self.generator_poly()?;
        let n = self.n as usize;
        let deg = g.degree().map_or(n, |d| d);
        let mut rows = Vec::new();
        for i in 0..n.saturating_sub(deg) {
            let mut row = vec![self.field.zero(); n];
            for (j, c) in g.coeffs().iter().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
        let m = Mat::new(self.field.clone(), n, rows);
        let _ = self.gen_matrix.set(m);
        Ok(self.gen_matrix.get().expect("just set"))
    }

    pub fn is_codeword(&self, word: &[FieldElement]) -> Result<bool> {
        if word.len() != self.n as usize {
            return Err(Error::CodeMismatch);
        }
        let p = Poly::from_coeffs(self.field.clone(), word.to_vec());
        let g = self.generator_poly()?;
        if g.degree() == Some(self.n as usize) {
            return Ok(p.is_zero());
        }
        Ok(p.rem(g).is_zero())
    }

    /// The conjugate code, with defining set q*T (the observed action; the
    /// idempotent route conj(e) generates the same code).
    pub fn conjugate(&self) -> CyclicCode {
        let q = self.q_mod_n();
        let set = self.defining.iter().map(|&i| mul_mod(i, q, self.n)).collect();
        self.derived(set)
    }

    /// Image under the multiplier mu_a; the defining set transforms by a^{-1}.
    pub fn multiplier(&self, a: i64) -> Result<CyclicCode> {
        let a_inv = modarith::inv_mod(a, self.n)?;
        let set = self.defining.iter().map(|&i| mul_mod(i, a_inv, self.n)).collect();
        Ok(self.derived(set))
    }

    pub fn cyclic_complement(&self) -> CyclicCode {
        let set = (0..self.n).filter(|i| !self.defining.contains(i)).collect();
        self.derived(set)
    }

    /// Hermitian dual: defining set N \ (-q)T mod n.
    pub fn hermitian_dual(&self) -> CyclicCode {
        let minus_q = self.n - self.q_mod_n() % self.n;
        let image: BTreeSet<u64> =
            self.defining.iter().map(|&i| mul_mod(i, minus_q % self.n, self.n)).collect();
        let set = (0..self.n).filter(|i| !image.contains(i)).collect();
        self.derived(set)
    }

    /// Euclidean dual: defining set N \ (-1)T mod n.
    pub fn euclidean_dual(&self) -> CyclicCode {
        let image: BTreeSet<u64> =
            self.defining.iter().map(|&i| (self.n - i) % self.n).collect();
        let set = (0..self.n).filter(|i| !image.contains(i)).collect();
        self.derived(set)
    }

    pub fn dual(&self, form: DualForm) -> CyclicCode {
        match form {
            DualForm::Euclidean => self.euclidean_dual(),
            DualForm::Hermitian => self.hermitian_dual(),
        }
    }

    /// Even-like subcode, defining set T with 0 adjoined.
    pub fn even_like_subcode(&self) -> CyclicCode {
        let mut set = self.defining.clone();
        set.insert(0);
        self.derived(set)
    }

    pub fn is_even_like(&self) -> bool {
        self.defining.contains(&0)
    }

    pub fn intersect(&self, other: &CyclicCode) -> Result<CyclicCode> {
        self.check_compatible(other)?;
        Ok(self.derived(self.defining.union(&other.defining).copied().collect()))
    }

    pub fn sum(&self, other: &CyclicCode) -> Result<CyclicCode> {
        self.check_compatible(other)?;
        Ok(self.derived(self.defining.intersection(&other.defining).copied().collect()))
    }

    /// self is a subcode of other iff other's defining set is inside self's.
    pub fn is_subcode(&self, other: &CyclicCode) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.defining.is_subset(&self.defining))
    }

    fn check_compatible(&self, other: &CyclicCode) -> Result<()> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::CodeMismatch);
        }
        Ok(())
    }

    /// Defining-set criterion for C inside its Hermitian dual: every coset
    /// fixed by mu_{-q} lies in T, and each swapped pair meets T.
    pub fn is_hermitian_self_orthogonal(&self) -> Result<bool> {
        let q2 = (self.field.size() % self.n as u128) as u64;
        let part = modarith::cyclotomic_cosets(self.n, q2)?;
        let minus_q = reduce_mod(-(self.q_mod_n() as i64), self.n);
        let pairing = modarith::coset_pairing(&part, minus_q as i64)?;
        let coset_in_t =
            |rep: u64| part.coset_of(rep).iter().all(|i| self.defining.contains(i));
        Ok(pairing.fixed.iter().all(|&r| coset_in_t(r))
            && pairing.swapped.iter().all(|&(a, b)| coset_in_t(a) || coset_in_t(b)))
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord {
            schema: 1,
            p: self.field.p(),
            t: (self.field.degree() / 2) as u32,
            n: self.n,
            defining_set: self.defining.iter().copied().collect(),
            modulus: self.field.modulus().to_vec(),
        }
    }

    pub fn from_record(rec: &CodeRecord) -> Result<CyclicCode> {
        let field = gf::build_field(rec.p, 2 * rec.t as usize)?;
        if field.modulus() != rec.modulus.as_slice() {
            return Err(Error::Internal(
                "record modulus differs from the deterministic field model".into(),
            ));
        }
        CyclicCode::new(field, rec.n, rec.defining_set.iter().copied().collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<CyclicCode> {
        let rec: CodeRecord =
            serde_json::from_str(s).map_err(|e| Error::Internal(e.to_string()))?;
        CyclicCode::from_record(&rec)
    }

    /// Generator matrix as CSV, one row per basis codeword, entries rendered
    /// as canonical element values.
    pub fn generator_matrix_csv(&self) -> Result<String> {
        let m = self.generator_matrix()?;
        let mut out = String::new();
        for row in m.rows() {
            let line: Vec<String> = row.iter().map(|e| e.value().to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

/// Text/JSON record for a cyclic code: field model and defining set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub schema: u32,
    pub p: u64,
    pub t: u32,
    pub n: u64,
    pub defining_set: Vec<u64>,
    pub modulus: Vec<u64>,
}

/// Basis of the dual computed from the generator matrix alone, by a null-space
/// computation; the oracle counterpart of the defining-set duals.
pub fn brute_force_dual(gen: &Mat, form: DualForm) -> Mat {
    match form {
        DualForm::Euclidean => gen.null_space(),
        DualForm::Hermitian => gen.conj().null_space(),
    }
}

/// Whether a(x) * b*(x) (conjugated for the Hermitian form) vanishes in R_n,
/// i.e. a is orthogonal to b and all of its cyclic shifts.
pub fn poly_orthogonality_check(a: &Poly, b: &Poly, form: DualForm, n: u64) -> bool {
    let b_star = b.reciprocal();
    let rhs = match form {
        DualForm::Euclidean => b_star,
        DualForm::Hermitian => b_star.conj(),
    };
    a.mul_in_rn(&rhs, n).is_zero()
}

/// The generating idempotent of the repetition code, (1/n)(1 + x + ... + x^(n-1)).
pub fn jbar(field: &Arc<FieldSpec>, n: u64) -> Poly {
    let n_inv = field.from_int(n % field.p()).inv();
    Poly::from_coeffs(field.clone(), vec![n_inv; n as usize])
}
