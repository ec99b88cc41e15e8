use std::collections::BTreeSet;

use crate::exactlin::vector::{self, SparseVec};
use crate::exactlin::{Field, Scalar};
use crate::report::ValidationReport;

use super::algebra::sparse_vector;
use super::tensor::{Bracketing, MultiLegMap};
use super::{check_basis, StructureError};

/// A finite-dimensional coalgebra; `coproduct[s]` lists `(i, j, Δ)` with
/// `Δ(c_s) = Σ Δ c_i ⊗ c_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCoalgebra {
    field: Field,
    basis: Vec<String>,
    coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    counit: SparseVec,
}

impl FiniteCoalgebra {
    pub fn new(
        field: Field,
        basis: Vec<String>,
        coproduct: Vec<(usize, usize, usize, Scalar)>,
        counit: Vec<(usize, Scalar)>,
    ) -> Result<Self, StructureError> {
        check_basis(&basis)?;
        let m = basis.len();
        let mut table = vec![Vec::new(); m];
        let mut seen = BTreeSet::new();
        for (s, i, j, c) in coproduct {
            if s >= m || i >= m || j >= m {
                return Err(StructureError::IndexOutOfRange { what: "coproduct", index: vec![s, i, j], dim: m });
            }
            if !field.contains(&c) {
                return Err(StructureError::FieldMismatch);
            }
            if !seen.insert((s, i, j)) {
                return Err(StructureError::DuplicateEntry { what: "coproduct", index: vec![s, i, j] });
            }
            if !c.is_zero() {
                table[s].push((i, j, c));
            }
        }
        for terms in table.iter_mut() {
            terms.sort_by_key(|(i, j, _)| (*i, *j));
        }
        Ok(FiniteCoalgebra { field, basis, coproduct: table, counit: sparse_vector(field, "counit", counit, m)? })
    }

    /// Every basis element group-like: `Δg = g ⊗ g`, `ε(g) = 1`.
    pub fn set_like(field: Field, names: &[&str]) -> Self {
        let basis = names.iter().map(|s| s.to_string()).collect();
        let coproduct = (0..names.len()).map(|s| (s, s, s, field.one())).collect();
        let counit = (0..names.len()).map(|s| (s, field.one())).collect();
        Self::new(field, basis, coproduct, counit).expect("well-formed")
    }

    /// Divided powers `d_0, …, d_r` with `Δd_n = Σ_{i+j=n} d_i ⊗ d_j` and
    /// `ε(d_n) = δ_{n0}`. `d_0` is group-like and `d_1` is primitive over it;
    /// `r = 1` is the span of `{g, d}`.
    pub fn divided_powers(field: Field, r: usize) -> Self {
        let basis = if r == 1 {
            vec!["g".to_string(), "d".to_string()]
        } else {
            (0..=r).map(|i| format!("d{i}")).collect()
        };
        let coproduct = (0..=r)
            .flat_map(|n| (0..=n).map(move |i| (n, i, n - i, field.one())))
            .collect();
        Self::new(field, basis, coproduct, vec![(0, field.one())]).expect("well-formed")
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

    pub fn coproduct_of(&self, s: usize) -> &[(usize, usize, Scalar)] {
        &self.coproduct[s]
    }

    pub fn counit(&self) -> &SparseVec {
        &self.counit
    }

    pub fn counit_of(&self, s: usize) -> Scalar {
        vector::get(&self.counit, s).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        self.coproduct
            .iter()
            .enumerate()
            .flat_map(|(s, t)| t.iter().map(move |(i, j, c)| (s, *i, *j, c.clone())))
            .collect()
    }

    /// First `(s, i, j)` with `Δ[s][i][j] ≠ Δ[s][j][i]`, if any.
    pub fn cocommutativity_violation(&self) -> Option<(usize, usize, usize)> {
        for (s, terms) in self.coproduct.iter().enumerate() {
            for (i, j, c) in terms {
                let swapped = terms.iter().find(|(a, b, _)| a == j && b == i).map(|t| &t.2);
                if swapped != Some(c) {
                    return Some((s, *i, *j));
                }
            }
        }
        None
    }

    pub fn is_cocommutative(&self) -> bool {
        self.cocommutativity_violation().is_none()
    }

    /// `Δ^{(k)}: C → C^{⊗k}`, iterating on the first leg.
    pub fn iterated_coproduct(&self, k: usize) -> MultiLegMap {
        self.iterated_coproduct_with(k, Bracketing::Left)
    }

    /// `Δ^{(k)}` with `Δ` re-applied to the first (left comb) or last (right
    /// comb) leg at each step.
    pub fn iterated_coproduct_with(&self, k: usize, bracketing: Bracketing) -> MultiLegMap {
        assert!(k >= 1, "iterated coproduct needs k ≥ 1");
        let m = self.dim();
        let mut map = MultiLegMap::identity(self.field, m);
        for _ in 1..k {
            let leg = match bracketing {
                Bracketing::Left => 0,
                Bracketing::Right => map.legs().len() - 1,
            };
            map = map.expand_leg(leg, &[m, m], |c| self.coproduct[c].iter().map(|(i, j, x)| (vec![*i, *j], x.clone())).collect());
        }
        map
    }

    /// Coassociativity, two-sided counit, and optionally cocommutativity.
    pub fn validate(&self, require_cocommutative: bool) -> ValidationReport {
        let mut report = ValidationReport::new("coalgebra");
        let left = self.iterated_coproduct_with(3, Bracketing::Left);
        let right = self.iterated_coproduct_with(3, Bracketing::Right);
        let coassoc = (0..self.dim())
            .find(|&s| left.image(s) != right.image(s))
            .map(|s| (vec![s], format!("(Δ⊗id)Δ ≠ (id⊗Δ)Δ on {}", self.basis[s])));
        report.record("coassociativity", coassoc);

        let mut counit_left = None;
        let mut counit_right = None;
        for s in 0..self.dim() {
            let mut l = Vec::new();
            let mut r = Vec::new();
            for (i, j, c) in &self.coproduct[s] {
                l.push((*j, &self.counit_of(*i) * c));
                r.push((*i, &self.counit_of(*j) * c));
            }
            let e = vector::unit(self.field, s);
            if counit_left.is_none() && vector::from_terms(l) != e {
                counit_left = Some((vec![s], format!("(ε⊗id)Δ{} ≠ {}", self.basis[s], self.basis[s])));
            }
            if counit_right.is_none() && vector::from_terms(r) != e {
                counit_right = Some((vec![s], format!("(id⊗ε)Δ{} ≠ {}", self.basis[s], self.basis[s])));
            }
        }
        report.record("counit (left)", counit_left);
        report.record("counit (right)", counit_right);

        if require_cocommutative {
            let v = self.cocommutativity_violation().map(|(s, i, j)| {
                (vec![s, i, j], format!("Δ{} not symmetric in ({}, {})", self.basis[s], self.basis[i], self.basis[j]))
            });
            report.record("cocommutativity", v);
        }
        report
    }
}
