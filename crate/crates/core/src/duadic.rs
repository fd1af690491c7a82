//! Splittings of n by multipliers, duadic code pairs, the gamma parity-check
//! extension, Hermitian self-duality verification, and the reference table of
//! splittings for small lengths.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::cycodes::{brute_force_dual, jbar, CyclicCode, DualForm, Mat};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::gf::{self, FieldElement, FieldOps, FieldSpec};
use crate::modarith::{coset_pairing, cyclotomic_cosets, gcd, mul_mod, reduce_mod};

/// A splitting of n by mu_b: the nonzero residues partitioned into two
/// coset-unions swapped by the multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub n: u64,
    pub q: u64,
    pub multiplier: i64,
    s1: BTreeSet<u64>,
    s2: BTreeSet<u64>,
    s1_reps: Vec<u64>,
    s2_reps: Vec<u64>,
}

impl Splitting {
    pub fn s1(&self) -> &BTreeSet<u64> {
        &self.s1
    }

    pub fn s2(&self) -> &BTreeSet<u64> {
        &self.s2
    }

    /// Coset representatives of S1, sorted; the labels used by the table.
    pub fn s1_reps(&self) -> &[u64] {
        &self.s1_reps
    }

    pub fn s2_reps(&self) -> &[u64] {
        &self.s2_reps
    }

    /// True when n is prime and one side is exactly the nonzero quadratic
    /// residues mod n: the splitting of a quadratic residue code.
    pub fn is_qr_splitting(&self) -> bool {
        if !crate::modarith::is_prime(self.n) {
            return false;
        }
        let squares: BTreeSet<u64> = (1..self.n).map(|x| mul_mod(x, x, self.n)).collect();
        self.s1 == squares || self.s2 == squares
    }
}

/// Whether mu_b splits n, decided by the coset-fixing search alone.
pub fn splitting_exists(n: u64, q: u64, b: i64) -> Result<bool> {
    check_split_inputs(n, q, b)?;
    if n == 1 {
        return Ok(true);
    }
    let part = cyclotomic_cosets(n, mul_mod(q % n, q % n, n))?;
    let pairing = coset_pairing(&part, b)?;
    Ok(pairing.fixed.iter().all(|&r| r == 0))
}

fn check_split_inputs(n: u64, q: u64, b: i64) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::EvenLength(n));
    }
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { a: q as i64, n });
    }
    if gcd(reduce_mod(b, n), n) != 1 {
        return Err(Error::NotCoprime { a: b, n });
    }
    Ok(())
}

/// All splittings of n by mu_b, deduplicated up to the S1 <-> S2 symmetry by
/// anchoring the coset of 1 in S1, ordered lexicographically by the S1
/// representative lists. Empty iff some nonzero coset is fixed by mu_b.
pub fn find_splittings(n: u64, q: u64, b: i64) -> Result<Vec<Splitting>> {
    check_split_inputs(n, q, b)?;
    if n == 1 {
        return Ok(vec![Splitting {
            n,
            q,
            multiplier: b,
            s1: BTreeSet::new(),
            s2: BTreeSet::new(),
            s1_reps: Vec::new(),
            s2_reps: Vec::new(),
        }]);
    }
    let part = cyclotomic_cosets(n, mul_mod(q % n, q % n, n))?;
    let pairing = coset_pairing(&part, b)?;
    if pairing.fixed.iter().any(|&r| r != 0) {
        return Ok(Vec::new());
    }
    let anchor = pairing
        .swapped
        .iter()
        .position(|&(a, c)| a == 1 || c == 1)
        .expect("1 leads its own coset");
    let free: Vec<(u64, u64)> = pairing
        .swapped
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != anchor)
        .map(|(_, &p)| p)
        .collect();
    let (a0, c0) = pairing.swapped[anchor];
    let anchor_choice = if a0 == 1 { (a0, c0) } else { (c0, a0) };

    let mut splittings = Vec::with_capacity(1 << free.len());
    for mask in 0u64..(1 << free.len()) {
        let mut s1_reps = vec![anchor_choice.0];
        let mut s2_reps = vec![anchor_choice.1];
        for (bit, &(a, c)) in free.iter().enumerate() {
            if mask >> bit & 1 == 0 {
                s1_reps.push(a);
                s2_reps.push(c);
            } else {
                s1_reps.push(c);
                s2_reps.push(a);
            }
        }
        s1_reps.sort_unstable();
        s2_reps.sort_unstable();
        let expand = |reps: &[u64]| -> BTreeSet<u64> {
            reps.iter()
                .flat_map(|&r| part.coset_of(r).iter().copied())
                .collect()
        };
        splittings.push(Splitting {
            n,
            q,
            multiplier: b,
            s1: expand(&s1_reps),
            s2: expand(&s2_reps),
            s1_reps,
            s2_reps,
        });
    }
    splittings.sort_by(|x, y| x.s1_reps.cmp(&y.s1_reps));
    Ok(splittings)
}

/// The four codes induced by a splitting: even-like C_i with defining sets
/// {0} u S_i, odd-like D_i = <1 - e_{3-i}> with defining sets S_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuadicPair {
    pub splitting: Splitting,
    pub c1: CyclicCode,
    pub c2: CyclicCode,
    pub d1: CyclicCode,
    pub d2: CyclicCode,
}

pub fn duadic_from_splitting(s: &Splitting, field: &Arc<FieldSpec>) -> Result<DuadicPair> {
    if field.q() != s.q as u128 {
        return Err(Error::CodeMismatch);
    }
    let with_zero = |set: &BTreeSet<u64>| {
        let mut t = set.clone();
        t.insert(0);
        t
    };
    let c1 = CyclicCode::new(field.clone(), s.n, with_zero(&s.s1))?;
    let c2 = CyclicCode::new(field.clone(), s.n, with_zero(&s.s2))?;
    let d1 = CyclicCode::new(field.clone(), s.n, s.s1.clone())?;
    let d2 = CyclicCode::new(field.clone(), s.n, s.s2.clone())?;
    Ok(DuadicPair { splitting: s.clone(), c1, c2, d1, d2 })
}

/// An odd-like code extended by the gamma parity check c_inf = -gamma * sum(c).
#[derive(Debug, Clone)]
pub struct ExtendedCode {
    base: CyclicCode,
    gamma: FieldElement,
    matrix: Mat,
}

impl ExtendedCode {
    pub fn base(&self) -> &CyclicCode {
        &self.base
    }

    pub fn gamma(&self) -> &FieldElement {
        &self.gamma
    }

    /// Generator matrix of the length-(n+1) extension.
    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }
}

pub fn extend_odd_like(code: &CyclicCode, gamma: &FieldElement) -> Result<ExtendedCode> {
    if gamma.field() != code.field() {
        return Err(Error::FieldMismatch);
    }
    if !gf::is_valid_gamma(gamma, code.n()) {
        return Err(Error::BadGamma);
    }
    let n = code.n() as usize;
    let gen = code.generator_matrix()?;
    let rows = gen
        .rows()
        .iter()
        .map(|row| {
            let mut sum = code.field().zero();
            for c in row {
                sum = sum.add(c);
            }
            let mut extended = row.clone();
            extended.push(gamma.neg().mul(&sum));
            extended
        })
        .collect();
    Ok(ExtendedCode {
        base: code.clone(),
        gamma: gamma.clone(),
        matrix: Mat::new(code.field().clone(), n + 1, rows),
    })
}

/// G * conj(G)^T = 0 with full rank (n+1)/2: Hermitian self-dual at length n+1.
pub fn is_hermitian_self_dual_extended(ext: &ExtendedCode) -> bool {
    let g = ext.matrix();
    let expected_rank = (ext.base.n() as usize + 1) / 2;
    g.gram_is_zero(g, true) && g.rank() == expected_rank
}

/// Evaluation of the two four-way equivalence propositions on a duadic pair:
/// the "swap" family (C1 perp = D1, ..., C1 mu_{-q} = C2) and the "fix" family
/// (C1 perp = D2, ..., C1 mu_{-q} = C1). Each family is internally all-true or
/// all-false on any pair.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub swap_family: [bool; 4],
    pub fix_family: [bool; 4],
}

impl EquivalenceReport {
    pub fn internally_consistent(&self) -> bool {
        let swap_uniform = self.swap_family.iter().all(|&b| b == self.swap_family[0]);
        let fix_uniform = self.fix_family.iter().all(|&b| b == self.fix_family[0]);
        // C1 != C2, so at most one family can hold
        swap_uniform && fix_uniform && !(self.swap_family[0] && self.fix_family[0])
    }
}

pub fn check_duadic_equivalences(pair: &DuadicPair) -> Result<EquivalenceReport> {
    let q = (pair.c1.field().q() % pair.c1.n() as u128) as i64;
    let c1_dual = hermitian_dual_checked(&pair.c1)?;
    let c2_dual = hermitian_dual_checked(&pair.c2)?;
    let c1_mu = pair.c1.multiplier(-q)?;
    let c2_mu = pair.c2.multiplier(-q)?;
    Ok(EquivalenceReport {
        swap_family: [
            c1_dual == pair.d1,
            c2_dual == pair.d2,
            c1_mu == pair.c2,
            c2_mu == pair.c1,
        ],
        fix_family: [
            c1_dual == pair.d2,
            c2_dual == pair.d1,
            c1_mu == pair.c1,
            c2_mu == pair.c2,
        ],
    })
}

/// Hermitian dual by defining set, cross-checked against the null-space oracle.
fn hermitian_dual_checked(code: &CyclicCode) -> Result<CyclicCode> {
    let dual = code.hermitian_dual();
    let oracle = brute_force_dual(code.generator_matrix()?, DualForm::Hermitian);
    if !oracle.row_space_eq(dual.generator_matrix()?) {
        return Err(Error::Internal(
            "defining-set dual disagrees with the null-space dual".into(),
        ));
    }
    Ok(dual)
}

/// One (n, q) cell of the splitting table.
#[derive(Debug, Clone, Serialize)]
pub struct TableCell {
    pub q: u64,
    /// false when gcd(n, q) > 1 and the cell is not applicable
    pub valid: bool,
    pub entries: Vec<TableEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableEntry {
    pub reps: Vec<u64>,
    pub qr: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub n: u64,
    pub cells: Vec<TableCell>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub schema: u32,
    pub n_min: u64,
    pub n_max: u64,
    pub q_list: Vec<u64>,
    pub rows: Vec<TableRow>,
}

/// Enumerate splittings by mu_{-q} over a grid of odd lengths; rows where every
/// q yields nothing are omitted, matching the reference table layout.
pub fn table1(n_min: u64, n_max: u64, q_list: &[u64], exec: Exec) -> Result<TableReport> {
    let lengths: Vec<u64> = (n_min..=n_max).filter(|n| n % 2 == 1).collect();
    let q_list = q_list.to_vec();
    let rows = exec::map_items(lengths, exec, |n| {
        let cells: Vec<TableCell> = q_list
            .iter()
            .map(|&q| {
                if gcd(n, q) != 1 {
                    return TableCell { q, valid: false, entries: Vec::new() };
                }
                let entries = find_splittings(n, q, -(q as i64))
                    .expect("inputs validated")
                    .into_iter()
                    .map(|s| TableEntry { qr: s.is_qr_splitting(), reps: s.s1_reps.clone() })
                    .collect();
                TableCell { q, valid: true, entries }
            })
            .collect();
        TableRow { n, cells }
    });
    let rows = rows
        .into_iter()
        .filter(|r: &TableRow| r.cells.iter().any(|c| !c.entries.is_empty()))
        .collect();
    Ok(TableReport { schema: 1, n_min, n_max, q_list, rows })
}

impl TableEntry {
    pub fn label(&self) -> String {
        let cosets: Vec<String> = self.reps.iter().map(|r| format!("C{r}")).collect();
        let mut s = cosets.join("∪");
        if self.qr {
            s.push('*');
        }
        s
    }
}

impl TableReport {
    /// Fixed-layout text rendering, byte-stable across runs.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.q_list.iter().map(|q| format!("q={q}")).collect();
        out.push_str(&format!("# splittings of n by mu_-q ({})\n", header.join(", ")));
        out.push_str(
            "# entries list S1 as unions of q^2-cyclotomic cosets; * marks quadratic residue splittings\n",
        );
        for row in &self.rows {
            out.push_str(&format!("n={}\n", row.n));
            for cell in &row.cells {
                let body = if !cell.valid {
                    "n/a".to_string()
                } else if cell.entries.is_empty() {
                    "-".to_string()
                } else {
                    cell.entries
                        .iter()
                        .map(TableEntry::label)
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                out.push_str(&format!("  q={}: {}\n", cell.q, body));
            }
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("n,q,entry_index,s1_coset_reps,qr\n");
        for row in &self.rows {
            for cell in &row.cells {
                for (i, e) in cell.entries.iter().enumerate() {
                    let reps: Vec<String> = e.reps.iter().map(u64::to_string).collect();
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        row.n,
                        cell.q,
                        i + 1,
                        reps.join(" "),
                        e.qr
                    ));
                }
            }
        }
        out
    }
}

/// Report for one (n, q) splitting run: the splittings found and whether every
/// gamma extension verified Hermitian self-dual.
#[derive(Debug, Clone, Serialize)]
pub struct SplitReport {
    pub schema: u32,
    pub n: u64,
    pub q: u64,
    pub splittings: Vec<Vec<u64>>,
    pub qr_flags: Vec<bool>,
    pub self_dual_verified: bool,
}

/// Enumerate splittings by mu_{-q}, build each odd-like pair, extend by the
/// least valid gamma, and verify Hermitian self-duality of both extensions.
pub fn split_and_verify(n: u64, q: u64) -> Result<SplitReport> {
    let splittings = find_splittings(n, q, -(q as i64))?;
    let mut verified = true;
    if !splittings.is_empty() && n > 1 {
        let field = gf::build_gf_q2(q)?;
        let gamma = gf::solve_gamma(n, &field)?;
        for s in &splittings {
            let pair = duadic_from_splitting(s, &field)?;
            for d in [&pair.d1, &pair.d2] {
                let ext = extend_odd_like(d, &gamma)?;
                if !is_hermitian_self_dual_extended(&ext) {
                    verified = false;
                }
            }
        }
    }
    Ok(SplitReport {
        schema: 1,
        n,
        q,
        qr_flags: splittings.iter().map(Splitting::is_qr_splitting).collect(),
        splittings: splittings.into_iter().map(|s| s.s1_reps).collect(),
        self_dual_verified: verified,
    })
}

/// Verify the whole-pair invariant e1 + e2 = 1 - jbar in R_n.
pub fn idempotent_identity_holds(pair: &DuadicPair) -> Result<bool> {
    let field = pair.c1.field().clone();
    let n = pair.c1.n();
    let e1 = pair.c1.idempotent()?;
    let e2 = pair.c2.idempotent()?;
    let one = crate::cycodes::Poly::one(field.clone());
    let rhs = one.sub(&jbar(&field, n));
    Ok(e1.add(e2) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_gf_q2;

    fn reps(list: &[Splitting]) -> Vec<Vec<u64>> {
        list.iter().map(|s| s.s1_reps().to_vec()).collect()
    }

    #[test]
    fn find_splittings_examples() {
        let s = find_splittings(5, 3, -3).unwrap();
        assert_eq!(reps(&s), vec![vec![1]]);
        assert_eq!(s[0].s1().iter().copied().collect::<Vec<_>>(), vec![1, 4]);

        let s = find_splittings(9, 4, -4).unwrap();
        assert_eq!(reps(&s), vec![vec![1, 3], vec![1, 6]]);

        assert!(find_splittings(7, 3, -3).unwrap().is_empty());
        assert!(find_splittings(6, 3, -3).is_err());
        assert!(find_splittings(9, 3, -3).is_err());
    }

    #[test]
    fn splitting_count_matches_pairs() {
        // 8 entries at n=17, q=4: 2^(4-1)
        let s = find_splittings(17, 4, -4).unwrap();
        assert_eq!(s.len(), 8);
        let part = cyclotomic_cosets(17, 16).unwrap();
        let pairing = coset_pairing(&part, -4).unwrap();
        assert_eq!(s.len(), 1 << (pairing.swapped.len() - 1));
        // existence predicate agrees with enumeration on a small sweep
        for n in (3..46u64).step_by(2) {
            for q in [3u64, 4, 5] {
                if gcd(n, q) != 1 {
                    continue;
                }
                assert_eq!(
                    splitting_exists(n, q, -(q as i64)).unwrap(),
                    !find_splittings(n, q, -(q as i64)).unwrap().is_empty(),
                    "n={n} q={q}"
                );
            }
        }
    }

    #[test]
    fn splittings_swap_under_multiplier() {
        for (n, q) in [(5u64, 3u64), (9, 4), (13, 5), (17, 4)] {
            for s in find_splittings(n, q, -(q as i64)).unwrap() {
                let image = crate::modarith::apply_multiplier(s.s1(), -(q as i64), n).unwrap();
                assert_eq!(&image, s.s2());
                let back = crate::modarith::apply_multiplier(s.s2(), -(q as i64), n).unwrap();
                assert_eq!(&back, s.s1());
                // partition of {1..n-1}
                assert_eq!(s.s1().len() + s.s2().len(), (n - 1) as usize);
                assert!(s.s1().intersection(s.s2()).next().is_none());
            }
        }
    }

    #[test]
    fn duadic_pair_structure() {
        let field = build_gf_q2(3).unwrap();
        let s = &find_splittings(5, 3, -3).unwrap()[0];
        let pair = duadic_from_splitting(s, &field).unwrap();
        assert_eq!(pair.c1.dim(), 2);
        assert_eq!(pair.d1.dim(), 3);
        assert!(idempotent_identity_holds(&pair).unwrap());
        // C_i is the even-like subcode of D_i
        assert_eq!(pair.d1.even_like_subcode(), pair.c1);
        assert_eq!(pair.d2.even_like_subcode(), pair.c2);
        // C1 mu_{-3} = C2 and back
        assert_eq!(pair.c1.multiplier(-3).unwrap(), pair.c2);
        assert_eq!(pair.c2.multiplier(-3).unwrap(), pair.c1);
    }

    #[test]
    fn idempotent_identity_across_grid() {
        for (n, q) in [(5u64, 3u64), (9, 4), (11, 5), (13, 3)] {
            let field = build_gf_q2(q).unwrap();
            for s in find_splittings(n, q, -(q as i64)).unwrap() {
                let pair = duadic_from_splitting(&s, &field).unwrap();
                assert!(idempotent_identity_holds(&pair).unwrap(), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn extension_basics() {
        let field = build_gf_q2(3).unwrap();
        let s = &find_splittings(5, 3, -3).unwrap()[0];
        let pair = duadic_from_splitting(s, &field).unwrap();
        let gamma = gf::solve_gamma(5, &field).unwrap();
        assert!(gamma.is_one());
        let ext = extend_odd_like(&pair.d1, &gamma).unwrap();
        assert_eq!(ext.matrix().n_rows(), 3);
        assert_eq!(ext.matrix().n_cols(), 6);
        assert_eq!(ext.matrix().rank(), 3);
        // each row ends with -gamma * (row sum)
        for row in ext.matrix().rows() {
            let sum = row[..5].iter().fold(field.zero(), |acc, c| acc.add(c));
            assert_eq!(row[5], gamma.neg().mul(&sum));
        }
        // an even-like codeword extends by zero: rows of C1 are even-like
        let even_ext = extend_odd_like(&pair.d1.even_like_subcode(), &gamma).unwrap();
        for row in even_ext.matrix().rows() {
            assert!(row[5].is_zero());
        }
        // a gamma failing the defining equation is rejected
        let bad = field.from_int(0);
        assert!(matches!(extend_odd_like(&pair.d1, &bad), Err(Error::BadGamma)));
    }

    #[test]
    fn self_dual_examples() {
        for (n, q) in [(5u64, 3u64), (11, 5), (9, 4), (13, 5)] {
            let field = build_gf_q2(q).unwrap();
            let gamma = gf::solve_gamma(n, &field).unwrap();
            for s in find_splittings(n, q, -(q as i64)).unwrap() {
                let pair = duadic_from_splitting(&s, &field).unwrap();
                for d in [&pair.d1, &pair.d2] {
                    let ext = extend_odd_like(d, &gamma).unwrap();
                    assert!(is_hermitian_self_dual_extended(&ext), "n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn other_multiplier_gives_dual_pair_not_self_dual() {
        // n=7, q=3: mu_{-3} fixes the cosets, but mu_3 splits; then D1 mu_{-q} = D1
        // and the two extensions are Hermitian duals of each other.
        let field = build_gf_q2(3).unwrap();
        let splittings = find_splittings(7, 3, 3).unwrap();
        assert_eq!(splittings.len(), 1);
        let pair = duadic_from_splitting(&splittings[0], &field).unwrap();
        assert_eq!(pair.d1.multiplier(-3).unwrap(), pair.d1);
        let gamma = gf::solve_gamma(7, &field).unwrap();
        let e1 = extend_odd_like(&pair.d1, &gamma).unwrap();
        let e2 = extend_odd_like(&pair.d2, &gamma).unwrap();
        assert!(!is_hermitian_self_dual_extended(&e1));
        assert!(!is_hermitian_self_dual_extended(&e2));
        // duals of each other: G1 * conj(G2)^T = 0 and ranks add to n+1
        assert!(e1.matrix().gram_is_zero(e2.matrix(), true));
        assert_eq!(e1.matrix().rank() + e2.matrix().rank(), 8);
    }

    #[test]
    fn equivalence_report_families() {
        let field = build_gf_q2(3).unwrap();
        let s = &find_splittings(5, 3, -3).unwrap()[0];
        let pair = duadic_from_splitting(s, &field).unwrap();
        let report = check_duadic_equivalences(&pair).unwrap();
        assert_eq!(report.swap_family, [true; 4]);
        assert_eq!(report.fix_family, [false; 4]);
        assert!(report.internally_consistent());

        // the mu_3 splitting of n=7 has C1 mu_{-q} = C1: the fix family holds
        let s = &find_splittings(7, 3, 3).unwrap()[0];
        let pair = duadic_from_splitting(s, &field).unwrap();
        let report = check_duadic_equivalences(&pair).unwrap();
        assert_eq!(report.swap_family, [false; 4]);
        assert_eq!(report.fix_family, [true; 4]);
        assert!(report.internally_consistent());
    }

    #[test]
    fn self_orthogonal_iff_minus_q_splitting() {
        let field = build_gf_q2(3).unwrap();
        // mu_{-q} splitting: C1 is Hermitian self-orthogonal
        let s = &find_splittings(5, 3, -3).unwrap()[0];
        let pair = duadic_from_splitting(s, &field).unwrap();
        assert!(pair.c1.is_hermitian_self_orthogonal().unwrap());
        // splitting by another multiplier only: C1 is not
        let s = &find_splittings(7, 3, 3).unwrap()[0];
        let pair = duadic_from_splitting(s, &field).unwrap();
        assert!(!pair.c1.is_hermitian_self_orthogonal().unwrap());
    }

    #[test]
    fn gamma_choice_does_not_affect_self_duality() {
        for (n, q) in [(5u64, 3u64), (9, 4), (11, 5), (13, 5), (7, 4), (15, 2)] {
            let field = build_gf_q2(q).unwrap();
            let splittings = find_splittings(n, q, -(q as i64)).unwrap();
            if splittings.is_empty() {
                continue;
            }
            let pair = duadic_from_splitting(&splittings[0], &field).unwrap();
            let roots = gf::gamma_solutions(n, &field).unwrap();
            assert_eq!(roots.len() as u128, field.q() + 1);
            for gamma in &roots {
                let ext = extend_odd_like(&pair.d1, gamma).unwrap();
                assert!(is_hermitian_self_dual_extended(&ext), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn qr_splitting_examples() {
        let s = &find_splittings(5, 3, -3).unwrap()[0];
        assert!(s.is_qr_splitting());
        let list = find_splittings(13, 5, -5).unwrap();
        let qr: Vec<&Splitting> = list.iter().filter(|s| s.is_qr_splitting()).collect();
        assert_eq!(qr.len(), 1);
        assert_eq!(qr[0].s1_reps(), &[1, 3, 4]);
        // composite lengths never carry the marker
        assert!(find_splittings(9, 4, -4).unwrap().iter().all(|s| !s.is_qr_splitting()));
    }

    #[test]
    fn table_shape() {
        let t = table1(5, 13, &[3, 4, 5], Exec::Sequential).unwrap();
        let ns: Vec<u64> = t.rows.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![5, 7, 9, 11, 13]);
        let text = t.render_text();
        assert!(text.contains("n=5\n  q=3: C1*\n  q=4: -\n  q=5: n/a\n"));
        // parallel and sequential renders are identical
        let t_par = table1(5, 13, &[3, 4, 5], Exec::Parallel).unwrap();
        assert_eq!(text, t_par.render_text());
        let csv = t.render_csv();
        assert!(csv.starts_with("n,q,entry_index,s1_coset_reps,qr\n"));
        assert!(csv.contains("13,5,3,1 3 4,true\n"));
    }

    #[test]
    fn split_report() {
        let r = split_and_verify(5, 3).unwrap();
        assert_eq!(r.splittings, vec![vec![1]]);
        assert_eq!(r.qr_flags, vec![true]);
        assert!(r.self_dual_verified);
        let r = split_and_verify(7, 3).unwrap();
        assert!(r.splittings.is_empty());
    }
}
