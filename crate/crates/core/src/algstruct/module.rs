use std::collections::BTreeSet;
use std::sync::Arc;

use crate::exactlin::vector::{self, SparseVec};
use crate::exactlin::{Scalar, SparseMatrix};
use crate::report::ValidationReport;

use super::{check_basis, FiniteAlgebra, StructureError};

/// A module over a [`FiniteAlgebra`]; `action[i][j]` holds `e_i · m_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    algebra: Arc<FiniteAlgebra>,
    basis: Vec<String>,
    action: Vec<Vec<SparseVec>>,
}

impl FiniteModule {
    /// `action` lists `(i, j, l, α)` meaning `e_i·m_j` has `α` on `m_l`.
    pub fn new(
        algebra: Arc<FiniteAlgebra>,
        basis: Vec<String>,
        action: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self, StructureError> {
        check_basis(&basis)?;
        let (n, r) = (algebra.dim(), basis.len());
        let mut table = vec![vec![Vec::new(); r]; n];
        let mut seen = BTreeSet::new();
        for (i, j, l, c) in action {
            if i >= n || j >= r || l >= r {
                return Err(StructureError::IndexOutOfRange { what: "action", index: vec![i, j, l], dim: r });
            }
            if !algebra.field().contains(&c) {
                return Err(StructureError::FieldMismatch);
            }
            if !seen.insert((i, j, l)) {
                return Err(StructureError::DuplicateEntry { what: "action", index: vec![i, j, l] });
            }
            if !c.is_zero() {
                table[i][j].push((l, c));
            }
        }
        for row in table.iter_mut() {
            for v in row.iter_mut() {
                v.sort_by_key(|(l, _)| *l);
            }
        }
        Ok(FiniteModule { algebra, basis, action: table })
    }

    /// The algebra acting on itself by multiplication.
    pub fn regular(algebra: Arc<FiniteAlgebra>) -> Self {
        let n = algebra.dim();
        let action = (0..n)
            .map(|i| (0..n).map(|j| algebra.basis_product(i, j).clone()).collect())
            .collect();
        FiniteModule { basis: algebra.basis().to_vec(), algebra, action }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_action(&self, i: usize, j: usize) -> &SparseVec {
        &self.action[i][j]
    }

    /// `a · m` for an algebra element `a` and module element `m`.
    pub fn act(&self, a: &[(usize, Scalar)], m: &[(usize, Scalar)]) -> SparseVec {
        let mut terms = Vec::new();
        for (i, x) in a {
            for (j, y) in m {
                let xy = x * y;
                for (l, c) in &self.action[*i][*j] {
                    terms.push((*l, &xy * c));
                }
            }
        }
        vector::from_terms(terms)
    }

    /// Matrix of the action of `e_i`.
    pub fn action_matrix(&self, i: usize) -> SparseMatrix {
        SparseMatrix::from_columns(self.algebra.field(), self.dim(), &self.action[i])
    }

    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, row) in self.action.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.extend(v.iter().map(|(l, c)| (i, j, *l, c.clone())));
            }
        }
        out
    }

    /// Unit acts as the identity; `(e_i e_j)·m = e_i·(e_j·m)`.
    pub fn validate(&self) -> ValidationReport {
        let field = self.algebra.field();
        let (n, r) = (self.algebra.dim(), self.dim());
        let mut report = ValidationReport::new("module");

        let unit = (0..r).find_map(|j| {
            let m = vector::unit(field, j);
            (self.act(self.algebra.unit(), &m) != m)
                .then(|| (vec![j], format!("1·{} ≠ {}", self.basis[j], self.basis[j])))
        });
        report.record("unit acts as identity", unit);

        let mut assoc = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for l in 0..r {
                    let m = vector::unit(field, l);
                    let left = self.act(self.algebra.basis_product(i, j), &m);
                    let right = self.act(&vector::unit(field, i), &self.action[j][l]);
                    if left != right {
                        assoc = Some((vec![i, j, l], "(e_i e_j)·m ≠ e_i·(e_j·m)".to_string()));
                        break 'outer;
                    }
                }
            }
        }
        report.record("action associativity", assoc);
        report
    }
}
