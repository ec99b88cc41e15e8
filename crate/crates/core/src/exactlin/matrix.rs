use std::fmt;
use std::ops::Mul;

use rayon::prelude::*;

use super::vector::{self, SparseVec};
use super::{Field, LinAlgError, Scalar};

/// A matrix over an exact field stored as a coordinate list.
///
/// Entries are sorted row-major, in range, unique, and nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, cols, entries: Vec::new() }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let entries = (0..n).map(|i| (i, i, field.one())).collect();
        SparseMatrix { field, rows: n, cols: n, entries }
    }

    /// Checked constructor. Zero coefficients are dropped; out-of-range and
    /// duplicate positions are rejected.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        mut entries: Vec<(usize, usize, Scalar)>,
    ) -> Result<Self, LinAlgError> {
        for (r, c, v) in &entries {
            if *r >= rows || *c >= cols {
                return Err(LinAlgError::IndexOutOfRange { row: *r, col: *c, rows, cols });
            }
            if !field.contains(v) {
                return Err(LinAlgError::FieldMismatch);
            }
        }
        entries.retain(|(_, _, v)| !v.is_zero());
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        if let Some(w) = entries.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(LinAlgError::DuplicateEntry { row: w[0].0, col: w[0].1 });
        }
        Ok(SparseMatrix { field, rows, cols, entries })
    }

    /// Assembles a matrix from sparse columns (each already sorted, nonzero).
    pub fn from_columns(field: Field, rows: usize, columns: &[SparseVec]) -> Self {
        let mut entries: Vec<(usize, usize, Scalar)> = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())))
            .collect();
        debug_assert!(entries.iter().all(|(r, _, v)| *r < rows && !v.is_zero()));
        entries.par_sort_unstable_by_key(|(r, c, _)| (*r, *c));
        SparseMatrix { field, rows, cols: columns.len(), entries }
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[SparseVec]) -> Self {
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone())))
            .collect::<Vec<_>>();
        debug_assert!(entries.iter().all(|(_, c, v)| *c < cols && !v.is_zero()));
        SparseMatrix { field, rows: rows.len(), cols, entries }
    }

    pub fn from_dense(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self, LinAlgError> {
        let mut entries = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::ShapeMismatch {
                    op: "from_dense",
                    left: (rows.len(), row.len()),
                    right: (rows.len(), cols),
                });
            }
            for (c, v) in row.iter().enumerate() {
                entries.push((r, c, v.clone()));
            }
        }
        Self::from_triplets(field, rows.len(), cols, entries)
    }

    /// Convenience for tests and fixtures: small integer entries over `field`.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_dense(field, cols, &dense).expect("rectangular integer rows")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.len() == self.rows
            && self.entries.iter().all(|(r, c, v)| r == c && v.is_one())
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries
            .binary_search_by_key(&(row, col), |(r, c, _)| (*r, *c))
            .map(|pos| self.entries[pos].2.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        out
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut out = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            out[*c].push((*r, v.clone()));
        }
        out
    }

    pub fn column(&self, col: usize) -> SparseVec {
        self.entries
            .iter()
            .filter(|(_, c, _)| *c == col)
            .map(|(r, _, v)| (*r, v.clone()))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_unstable_by_key(|(r, c, _)| (*r, *c));
        SparseMatrix { field: self.field, rows: self.cols, cols: self.rows, entries }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.field, self.rows, self.cols);
        }
        let entries = self.entries.iter().map(|(r, c, v)| (*r, *c, v * factor)).collect();
        SparseMatrix { entries, ..*self }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: &Scalar, other: &SparseMatrix) -> Result<Self, LinAlgError> {
        if self.shape() != other.shape() {
            return Err(LinAlgError::ShapeMismatch {
                op: "add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ka = a.get(i).map(|(r, c, _)| (*r, *c));
            let kb = b.get(j).map(|(r, c, _)| (*r, *c));
            match (ka, kb) {
                (Some(x), Some(y)) if x == y => {
                    let v = &a[i].2 + &(factor * &b[j].2);
                    if !v.is_zero() {
                        entries.push((x.0, x.1, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    entries.push(a[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    entries.push(a[i].clone());
                    i += 1;
                }
                (_, Some(y)) => {
                    let v = factor * &b[j].2;
                    if !v.is_zero() {
                        entries.push((y.0, y.1, v));
                    }
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(SparseMatrix { entries, ..*self })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<Self, LinAlgError> {
        self.add_scaled(&self.field.one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<Self, LinAlgError> {
        self.add_scaled(&self.field.from_i64(-1), other)
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &SparseMatrix) -> Result<Self, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::ShapeMismatch {
                op: "multiply",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let rhs_rows = rhs.row_vectors();
        let lhs_rows = self.row_vectors();
        let products: Vec<SparseVec> = lhs_rows
            .par_iter()
            .map(|row| {
                let mut acc: SparseVec = Vec::new();
                for (k, a) in row {
                    acc = vector::add_scaled(&acc, a, &rhs_rows[*k]);
                }
                acc
            })
            .collect();
        Ok(SparseMatrix::from_rows(self.field, rhs.cols, &products))
    }

    pub fn mul_vec(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut terms = Vec::new();
        for (r, c, a) in &self.entries {
            if let Some(x) = vector::get(v, *c) {
                terms.push((*r, a * x));
            }
        }
        vector::from_terms(terms)
    }

    /// Kronecker product, left factor slowest in both row and column indices.
    pub fn kron(&self, rhs: &SparseMatrix) -> Self {
        let lhs_rows = self.row_vectors();
        let rhs_rows = rhs.row_vectors();
        let mut entries = Vec::with_capacity(self.nnz() * rhs.nnz());
        for (i, lrow) in lhs_rows.iter().enumerate() {
            for (k, rrow) in rhs_rows.iter().enumerate() {
                for (j, a) in lrow {
                    for (l, b) in rrow {
                        entries.push((i * rhs.rows + k, j * rhs.cols + l, a * b));
                    }
                }
            }
        }
        SparseMatrix { field: self.field, rows: self.rows * rhs.rows, cols: self.cols * rhs.cols, entries }
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, keep: &[usize]) -> Self {
        let cols = self.columns();
        let picked: Vec<SparseVec> = keep.iter().map(|&c| cols[c].clone()).collect();
        SparseMatrix::from_columns(self.field, self.rows, &picked)
    }
}

impl Mul for &SparseMatrix {
    type Output = SparseMatrix;

    /// Panics on a shape mismatch; use [`SparseMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &SparseMatrix) -> SparseMatrix {
        self.matmul(rhs).expect("matrix shapes agree")
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "({}x{} empty)", self.rows, self.cols);
        }
        let dense = self.to_dense();
        let cells: Vec<Vec<String>> =
            dense.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{cell:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rational()
    }

    #[test]
    fn triplets_are_validated() {
        let f = q();
        assert!(matches!(
            SparseMatrix::from_triplets(f, 2, 2, vec![(2, 0, f.one())]),
            Err(LinAlgError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            SparseMatrix::from_triplets(f, 2, 2, vec![(0, 1, f.one()), (0, 1, f.one())]),
            Err(LinAlgError::DuplicateEntry { row: 0, col: 1 })
        ));
        let m = SparseMatrix::from_triplets(f, 2, 2, vec![(1, 1, f.one()), (0, 0, f.zero())]).unwrap();
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn product_and_kron() {
        let f = q();
        let a = SparseMatrix::from_i64_rows(f, &[&[1, 2], &[0, 1]]);
        let b = SparseMatrix::from_i64_rows(f, &[&[1, -2], &[0, 1]]);
        assert!((&a * &b).is_identity());
        let k = a.kron(&SparseMatrix::identity(f, 2));
        assert_eq!(k.shape(), (4, 4));
        assert_eq!(k.get(0, 2), f.from_i64(2));
        assert_eq!(k.get(1, 3), f.from_i64(2));
        assert!(a.matmul(&SparseMatrix::zeros(f, 3, 1)).is_err());
    }

    #[test]
    fn add_and_transpose() {
        let f = q();
        let a = SparseMatrix::from_i64_rows(f, &[&[1, 2, 0], &[0, 1, 5]]);
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(2, 1), f.from_i64(5));
        assert_eq!(a.mul_vec(&[(1, f.one()), (2, f.one())]), vec![(0, f.from_i64(2)), (1, f.from_i64(6))]);
    }
}
