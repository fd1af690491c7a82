//! Small dense matrices over a finite field: reduction, rank, null spaces,
//! and row-space comparison. Sizes here are bounded by the code length.

use std::sync::Arc;

use crate::gf::{FieldElement, FieldOps, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Arc<FieldSpec>,
    cols: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            let vals: Vec<u128> = r.iter().map(FieldElement::value).collect();
            writeln!(f, "  {vals:?}")?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn new(field: Arc<FieldSpec>, cols: usize, rows: Vec<Vec<FieldElement>>) -> Mat {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        Mat { field, cols, rows }
    }

    pub fn identity(field: Arc<FieldSpec>, n: usize) -> Mat {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        Mat { field, cols: n, rows }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn conj(&self) -> Mat {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(FieldElement::conj).collect())
            .collect();
        Mat { field: self.field.clone(), cols: self.cols, rows }
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> Mat {
        let mut rows = self.rows.clone();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            let Some(sel) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, sel);
            let inv = rows[pivot_row][col].inv();
            for c in col..self.cols {
                rows[pivot_row][c] = rows[pivot_row][c].mul(&inv);
            }
            for r in 0..rows.len() {
                if r != pivot_row && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for c in col..self.cols {
                        let sub = factor.mul(&rows[pivot_row][c]);
                        rows[r][c] = rows[r][c].sub(&sub);
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        rows.truncate(pivot_row);
        Mat { field: self.field.clone(), cols: self.cols, rows }
    }

    pub fn rank(&self) -> usize {
        self.rref().rows.len()
    }

    /// Basis of {u : M u^T = 0}, one row per free column of the RREF.
    pub fn null_space(&self) -> Mat {
        let r = self.rref();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        for (i, row) in r.rows.iter().enumerate() {
            let lead = row.iter().position(|c| !c.is_zero()).expect("nonzero row");
            pivot_of_col[lead] = Some(i);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (col, pivot) in pivot_of_col.iter().enumerate() {
                if let Some(prow) = pivot {
                    v[col] = r.rows[*prow][free].neg();
                }
            }
            basis.push(v);
        }
        Mat { field: self.field.clone(), cols: self.cols, rows: basis }
    }

    pub fn row_space_eq(&self, other: &Mat) -> bool {
        self.cols == other.cols && self.rref() == other.rref()
    }

    /// Entry (i, j) of self * other^T, conjugating `other` when `hermitian`.
    pub fn gram_entry(&self, other: &Mat, i: usize, j: usize, hermitian: bool) -> FieldElement {
        assert_eq!(self.cols, other.cols);
        let mut acc = self.field.zero();
        for k in 0..self.cols {
            let rhs = if hermitian { other.rows[j][k].conj() } else { other.rows[j][k].clone() };
            acc = acc.add(&self.rows[i][k].mul(&rhs));
        }
        acc
    }

    /// True when self * conj(other)^T (or plain transpose) vanishes entirely.
    pub fn gram_is_zero(&self, other: &Mat, hermitian: bool) -> bool {
        (0..self.rows.len()).all(|i| {
            (0..other.rows.len()).all(|j| self.gram_entry(other, i, j, hermitian).is_zero())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    fn mat_from_values(field: &Arc<FieldSpec>, cols: usize, vals: &[&[u64]]) -> Mat {
        let rows = vals
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Mat::new(field.clone(), cols, rows)
    }

    #[test]
    fn rank_and_null_space() {
        let f = build_field(3, 2).unwrap();
        let m = mat_from_values(&f, 3, &[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.n_rows(), 1);
        // every null vector is killed by the matrix
        for i in 0..m.n_rows() {
            for j in 0..ns.n_rows() {
                assert!(m.gram_entry(&ns, i, j, false).is_zero());
            }
        }
    }

    #[test]
    fn identity_null_space_is_trivial() {
        let f = build_field(2, 2).unwrap();
        let id = Mat::identity(f, 4);
        assert_eq!(id.rank(), 4);
        assert_eq!(id.null_space().n_rows(), 0);
    }

    #[test]
    fn row_space_comparison() {
        let f = build_field(3, 2).unwrap();
        let a = mat_from_values(&f, 3, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = mat_from_values(&f, 3, &[&[2, 2, 0], &[1, 2, 1]]);
        assert!(a.row_space_eq(&b));
        let c = mat_from_values(&f, 3, &[&[1, 0, 0], &[0, 1, 1]]);
        assert!(!a.row_space_eq(&c));
    }
}
