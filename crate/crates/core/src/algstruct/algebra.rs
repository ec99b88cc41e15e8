use crate::exactlin::vector::{self, SparseVec};
use crate::exactlin::{Field, Scalar, SparseMatrix};
use crate::report::ValidationReport;

use super::{check_basis, StructureError};

/// A finite-dimensional algebra given by structure constants on a named basis.
///
/// `products[i][j]` holds the coordinates of `e_i · e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: Field,
    basis: Vec<String>,
    products: Vec<Vec<SparseVec>>,
    unit: SparseVec,
}

impl FiniteAlgebra {
    /// `mult` lists sparse triples `(i, j, k, μ)` meaning `e_i·e_j` has `μ` on
    /// `e_k`; `unit` lists `(k, u_k)` with `1 = Σ u_k e_k`.
    pub fn new(
        field: Field,
        basis: Vec<String>,
        mult: Vec<(usize, usize, usize, Scalar)>,
        unit: Vec<(usize, Scalar)>,
    ) -> Result<Self, StructureError> {
        let n = basis.len();
        check_basis(&basis)?;
        let mut products = vec![vec![Vec::new(); n]; n];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, k, c) in mult {
            if i >= n || j >= n || k >= n {
                return Err(StructureError::IndexOutOfRange { what: "multiplication", index: vec![i, j, k], dim: n });
            }
            if !field.contains(&c) {
                return Err(StructureError::FieldMismatch);
            }
            if !seen.insert((i, j, k)) {
                return Err(StructureError::DuplicateEntry { what: "multiplication", index: vec![i, j, k] });
            }
            if !c.is_zero() {
                products[i][j].push((k, c));
            }
        }
        for row in products.iter_mut() {
            for p in row.iter_mut() {
                p.sort_by_key(|(k, _)| *k);
            }
        }
        Ok(FiniteAlgebra { field, basis, products, unit: sparse_vector(field, "unit", unit, n)? })
    }

    /// `K[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Self {
        assert!(n >= 1, "truncated polynomial algebra needs n ≥ 1");
        let basis = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let mult = (0..n)
            .flat_map(|i| (0..n).filter(move |j| i + j < n).map(move |j| (i, j, i + j, field.one())))
            .collect();
        Self::new(field, basis, mult, vec![(0, field.one())]).expect("well-formed")
    }

    /// `K × … × K` (`n` copies) on its primitive idempotents.
    pub fn split(field: Field, n: usize) -> Self {
        let basis = (1..=n).map(|i| format!("e{i}")).collect();
        let mult = (0..n).map(|i| (i, i, i, field.one())).collect();
        let unit = (0..n).map(|i| (i, field.one())).collect();
        Self::new(field, basis, mult, unit).expect("well-formed")
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        Self::truncated_polynomial(field, 1)
    }

    /// `K ⊕ V` with `V` of dimension `n` squaring to zero.
    pub fn square_zero(field: Field, n: usize) -> Self {
        let mut basis = vec!["1".to_string()];
        basis.extend((1..=n).map(|i| format!("v{i}")));
        let mut mult = vec![(0, 0, 0, field.one())];
        for i in 1..=n {
            mult.push((0, i, i, field.one()));
            mult.push((i, 0, i, field.one()));
        }
        Self::new(field, basis, mult, vec![(0, field.one())]).expect("well-formed")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    /// Coordinates of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i][j]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn multiply(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
        let mut terms = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in &self.products[*i][*j] {
                    terms.push((*k, &xy * c));
                }
            }
        }
        vector::from_terms(terms)
    }

    /// Sparse `(i, j, k, μ)` triples, sorted.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, row) in self.products.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                out.extend(p.iter().map(|(k, c)| (i, j, *k, c.clone())));
            }
        }
        out
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn multiplication_matrix(&self, i: usize) -> SparseMatrix {
        SparseMatrix::from_columns(self.field, self.dim(), &self.products[i])
    }

    /// Commutativity, associativity and unitality on all basis tuples.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::new("algebra");

        let commutativity = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.products[i][j] != self.products[j][i])
            .map(|(i, j)| {
                let k = first_difference(&self.products[i][j], &self.products[j][i]);
                (vec![i, j, k], format!("{}·{} ≠ {}·{}", self.basis[i], self.basis[j], self.basis[j], self.basis[i]))
            });
        report.record("commutativity", commutativity);

        let mut associativity = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let left = self.multiply(&self.products[i][j], &vector::unit(self.field, l));
                    let right = self.multiply(&vector::unit(self.field, i), &self.products[j][l]);
                    if left != right {
                        associativity = Some((vec![i, j, l], "(e_i e_j) e_l ≠ e_i (e_j e_l)".to_string()));
                        break 'outer;
                    }
                }
            }
        }
        report.record("associativity", associativity);

        let unitality = (0..n).find_map(|j| {
            let e = vector::unit(self.field, j);
            if self.multiply(&self.unit, &e) != e {
                Some((vec![j], format!("1·{} ≠ {}", self.basis[j], self.basis[j])))
            } else if self.multiply(&e, &self.unit) != e {
                Some((vec![j], format!("{}·1 ≠ {}", self.basis[j], self.basis[j])))
            } else {
                None
            }
        });
        report.record("unitality", unitality);
        report
    }
}

pub(crate) fn sparse_vector(
    field: Field,
    what: &'static str,
    entries: Vec<(usize, Scalar)>,
    dim: usize,
) -> Result<SparseVec, StructureError> {
    let mut seen = std::collections::BTreeSet::new();
    for (k, c) in &entries {
        if *k >= dim {
            return Err(StructureError::IndexOutOfRange { what, index: vec![*k], dim });
        }
        if !field.contains(c) {
            return Err(StructureError::FieldMismatch);
        }
        if !seen.insert(*k) {
            return Err(StructureError::DuplicateEntry { what, index: vec![*k] });
        }
    }
    Ok(vector::from_terms(entries))
}

fn first_difference(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> usize {
    let idx: std::collections::BTreeSet<usize> = a.iter().chain(b).map(|(k, _)| *k).collect();
    idx.into_iter()
        .find(|&k| vector::get(a, k) != vector::get(b, k))
        .unwrap_or(0)
}
