use std::fmt;

use super::field::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Dense matrix over an exact field, stored row-major.
///
/// Maps act on column vectors: a `rows × cols` matrix sends `K^cols` to `K^rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub echelon: Matrix,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_entries(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(Error::Invalid(format!("entry {bad} does not lie in {field}")));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Builds from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend(r);
        }
        Self::from_entries(field, n, cols, data)
    }

    /// Builds from column vectors living in `K^rows`.
    pub fn from_cols(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zero(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!("column of length {} in a {rows}-row matrix", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for a map with {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        let mut out = f.zeros(self.rows);
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !f.is_zero(a) {
                    out[i] = f.add(&out[i], &f.mul(a, x));
                }
            }
        }
        Ok(out)
    }

    /// Composition `self ∘ other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if !f.is_zero(a) {
                    f.axpy(dst, other.row(k), a);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        let mut out = self.clone();
        out.field.axpy(&mut out.data, &other.data, &self.field.one());
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        out.field.scale(&mut out.data, c);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.row_vecs();
        let pivots = rref_rows(self.field, &mut rows, self.cols);
        let rank = pivots.len();
        rows.truncate(rank);
        let echelon = Matrix::from_rows(self.field, self.cols, rows).expect("shape preserved");
        Rref { rank, pivots, echelon }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref_rows(self.field, &mut rows, self.cols).len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let f = self.field;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(f.unit_vector(n, i));
                r
            })
            .collect();
        let pivots = rref_rows(f, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Invalid("matrix is singular".into()));
        }
        let inv = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(f, n, inv)
    }

    /// Basis of `{x | self · x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let Rref { pivots, echelon, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = f.unit_vector(self.cols, free);
            for (i, &p) in pivots.iter().enumerate() {
                let e = echelon.get(i, free);
                if !f.is_zero(e) {
                    v[p] = f.neg(e);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// In-place Gauss–Jordan elimination of `rows` (each of length `cols`).
/// Afterwards the first `rank` rows are the reduced echelon form, the rest
/// are zero; returns the pivot columns.
pub(crate) fn rref_rows(field: FieldSpec, rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        field.scale(&mut rows[r], &inv);
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !field.is_zero(&row[c]) {
                let k = field.neg(&row[c]);
                field.axpy(row, &pivot_row, &k);
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_over_f2() {
        let m = Matrix::identity(FieldSpec::Prime(2), 2);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let r = Matrix::zero(FieldSpec::Rationals, 3, 3).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn dependent_rows_over_q() {
        let m = Matrix::from_i64(FieldSpec::Rationals, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(m.kernel().len(), 1);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Matrix::identity(FieldSpec::Prime(2), 2);
        let b = Matrix::identity(FieldSpec::Rationals, 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(..))));
        assert!(Matrix::from_entries(FieldSpec::Prime(3), 1, 1, vec![Scalar::Mod(5)]).is_err());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = FieldSpec::Prime(5);
        let m = Matrix::from_i64(f, &[&[1, 2, 3, 4], &[2, 4, 1, 3]]);
        for v in m.kernel() {
            assert!(f.is_zero_vec(&m.apply(&v).unwrap()));
        }
    }

    fn arb_field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rationals),
            Just(FieldSpec::Prime(2)),
            Just(FieldSpec::Prime(3)),
            Just(FieldSpec::Prime(5)),
        ]
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (arb_field(), 0usize..6, 0usize..6).prop_flat_map(|(f, r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                let data = v.into_iter().map(|x| f.from_i64(x)).collect();
                Matrix::from_entries(f, r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
        }

        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let e = m.rref().echelon;
            prop_assert_eq!(e.rref().echelon, e);
        }

        #[test]
        fn rank_of_transpose(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
