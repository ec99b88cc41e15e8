//! Exact linear algebra over ℚ and prime fields.

mod echelon;
mod homology;
mod matrix;
mod scalar;
pub mod vector;

use thiserror::Error;

pub use echelon::{Echelon, DENSE_CUTOFF};
pub use homology::{homology_presentation, induced_on_homology, HomologyPresentation};
pub use matrix::SparseMatrix;
pub use scalar::{Field, Scalar};
pub use vector::SparseVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("d_out · d_in is not zero")]
    CompositionNotZero,
    #[error("map does not send cycles to cycles at this degree")]
    NotAChainMapAtThisDegree,
    #[error("vector is not a cycle")]
    NotACycle,
    #[error("representatives are dependent modulo boundaries")]
    DependentRepresentatives,
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown field descriptor `{0}` (expected `rational` or `prime:p`)")]
    UnknownField(String),
    #[error("cannot parse scalar `{0}`")]
    ParseScalar(String),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
}

pub fn rank(m: &SparseMatrix) -> usize {
    if m.nrows() < DENSE_CUTOFF && m.ncols() < DENSE_CUTOFF {
        Echelon::dense(m.field(), m.ncols(), m.row_vectors()).rank()
    } else {
        echelon::forward_sparse(m.row_vectors()).len()
    }
}

/// Columns form a basis of `{v : m·v = 0}`, one per non-pivot column of the
/// reduced echelon form.
pub fn kernel_basis(m: &SparseMatrix) -> SparseMatrix {
    let e = Echelon::new(m.field(), m.ncols(), m.row_vectors());
    SparseMatrix::from_columns(m.field(), m.ncols(), &e.null_space())
}

/// Columns form a basis of the column space of `m` (reduced echelon rows of `mᵀ`).
pub fn image_basis(m: &SparseMatrix) -> SparseMatrix {
    let e = Echelon::new(m.field(), m.nrows(), m.columns());
    SparseMatrix::from_columns(m.field(), m.nrows(), e.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let q = Field::rational();
        assert_eq!(rank(&SparseMatrix::identity(q, 3)), 3);
        assert_eq!(rank(&SparseMatrix::zeros(q, 2, 3)), 0);
        assert_eq!(rank(&SparseMatrix::from_i64_rows(q, &[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        let q = Field::rational();
        assert_eq!(kernel_basis(&SparseMatrix::identity(q, 3)).ncols(), 0);
        assert_eq!(kernel_basis(&SparseMatrix::zeros(q, 2, 3)).ncols(), 3);
        let k = kernel_basis(&SparseMatrix::from_i64_rows(q, &[&[1, 1, 0], &[0, 0, 1]]));
        assert_eq!(k.shape(), (3, 1));
        // hand elimination: x + y = 0, z = 0 → (1, −1, 0) up to scale
        let c = k.column(0);
        assert_eq!(c.len(), 2);
        assert_eq!(&c[0].1 + &c[1].1, q.zero());
        assert!(c.iter().all(|(i, _)| *i < 2));
    }

    #[test]
    fn prime_field_rank_differs() {
        let f2 = Field::prime(2).unwrap();
        let q = Field::rational();
        let rows: &[&[i64]] = &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]];
        assert_eq!(rank(&SparseMatrix::from_i64_rows(q, rows)), 3);
        assert_eq!(rank(&SparseMatrix::from_i64_rows(f2, rows)), 2);
    }

    #[test]
    fn image_is_column_space() {
        let q = Field::rational();
        let m = SparseMatrix::from_i64_rows(q, &[&[1, 2, 3], &[2, 4, 6]]);
        let im = image_basis(&m);
        assert_eq!(im.ncols(), 1);
        assert_eq!(im.column(0), vec![(0, q.one()), (1, q.from_i64(2))]);
    }
}
