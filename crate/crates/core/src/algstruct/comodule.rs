use std::collections::BTreeSet;
use std::sync::Arc;

use crate::exactlin::vector;
use crate::exactlin::Scalar;
use crate::report::ValidationReport;

use super::tensor::MultiLegMap;
use super::{check_basis, FiniteCoalgebra, StructureError};

/// A left comodule over a [`FiniteCoalgebra`]; `coaction[t]` lists `(i, u, δ)`
/// with `δ(t) = Σ δ c_i ⊗ t_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComodule {
    coalgebra: Arc<FiniteCoalgebra>,
    basis: Vec<String>,
    coaction: Vec<Vec<(usize, usize, Scalar)>>,
}

impl FiniteComodule {
    pub fn new(
        coalgebra: Arc<FiniteCoalgebra>,
        basis: Vec<String>,
        coaction: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self, StructureError> {
        check_basis(&basis)?;
        let (m, q) = (coalgebra.dim(), basis.len());
        let mut table = vec![Vec::new(); q];
        let mut seen = BTreeSet::new();
        for (t, i, u, c) in coaction {
            if t >= q || i >= m || u >= q {
                return Err(StructureError::IndexOutOfRange { what: "coaction", index: vec![t, i, u], dim: q });
            }
            if !coalgebra.field().contains(&c) {
                return Err(StructureError::FieldMismatch);
            }
            if !seen.insert((t, i, u)) {
                return Err(StructureError::DuplicateEntry { what: "coaction", index: vec![t, i, u] });
            }
            if !c.is_zero() {
                table[t].push((i, u, c));
            }
        }
        for terms in table.iter_mut() {
            terms.sort_by_key(|(i, u, _)| (*i, *u));
        }
        Ok(FiniteComodule { coalgebra, basis, coaction: table })
    }

    /// The coalgebra coacting on itself by `Δ`.
    pub fn regular(coalgebra: Arc<FiniteCoalgebra>) -> Self {
        let coaction = (0..coalgebra.dim()).map(|s| coalgebra.coproduct_of(s).to_vec()).collect();
        FiniteComodule { basis: coalgebra.basis().to_vec(), coalgebra, coaction }
    }

    pub fn coalgebra(&self) -> &Arc<FiniteCoalgebra> {
        &self.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn coaction_of(&self, t: usize) -> &[(usize, usize, Scalar)] {
        &self.coaction[t]
    }

    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        self.coaction
            .iter()
            .enumerate()
            .flat_map(|(t, terms)| terms.iter().map(move |(i, u, c)| (t, *i, *u, c.clone())))
            .collect()
    }

    fn coaction_map(&self) -> MultiLegMap {
        let images = self
            .coaction
            .iter()
            .map(|terms| terms.iter().map(|(i, u, c)| (vec![*i, *u], c.clone())).collect())
            .collect();
        MultiLegMap::from_images(self.coalgebra.field(), vec![self.coalgebra.dim(), self.dim()], images)
    }

    /// `D → C^{⊗k} ⊗ D` with the comodule leg last: `(Δ^{(k)} ⊗ id_D) ∘ δ`
    /// for `k ≥ 1`, the identity for `k = 0`.
    pub fn iterated_coaction(&self, k: usize) -> MultiLegMap {
        if k == 0 {
            return MultiLegMap::identity(self.coalgebra.field(), self.dim());
        }
        let delta_k = self.coalgebra.iterated_coproduct(k);
        let m = self.coalgebra.dim();
        self.coaction_map()
            .expand_leg(0, &vec![m; k], |c| delta_k.image(c).to_vec())
    }

    /// The same map built by coacting `k` times on the comodule leg,
    /// `(id_{C^{⊗(k−1)}} ⊗ δ) ∘ … ∘ δ`. Agrees with
    /// [`iterated_coaction`](Self::iterated_coaction) on a valid comodule.
    pub fn iterated_coaction_by_recoaction(&self, k: usize) -> MultiLegMap {
        let q = self.dim();
        let m = self.coalgebra.dim();
        let mut map = MultiLegMap::identity(self.coalgebra.field(), q);
        for _ in 0..k {
            let last = map.legs().len() - 1;
            map = map.expand_leg(last, &[m, q], |t| {
                self.coaction[t].iter().map(|(i, u, c)| (vec![*i, *u], c.clone())).collect()
            });
        }
        map
    }

    /// Coassociativity with `Δ` and the counit law.
    pub fn validate(&self) -> ValidationReport {
        let field = self.coalgebra.field();
        let mut report = ValidationReport::new("comodule");
        let two = self.iterated_coaction(2);
        let recoact = self.iterated_coaction_by_recoaction(2);
        let coassoc = (0..self.dim())
            .find(|&t| two.image(t) != recoact.image(t))
            .map(|t| (vec![t], format!("(Δ⊗id)δ ≠ (id⊗δ)δ on {}", self.basis[t])));
        report.record("coassociativity", coassoc);

        let counit = (0..self.dim()).find_map(|t| {
            let terms = self.coaction[t]
                .iter()
                .map(|(i, u, c)| (*u, &self.coalgebra.counit_of(*i) * c))
                .collect();
            (vector::from_terms(terms) != vector::unit(field, t))
                .then(|| (vec![t], format!("(ε⊗id)δ{} ≠ {}", self.basis[t], self.basis[t])))
        });
        report.record("counit", counit);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;

    #[test]
    fn regular_comodule_passes() {
        let c = Arc::new(FiniteCoalgebra::divided_powers(Field::rational(), 2));
        let d = FiniteComodule::regular(c);
        assert!(d.validate().passed(), "{}", d.validate());
    }

    #[test]
    fn iterated_coaction_examples() {
        let f = Field::rational();
        let g = Arc::new(FiniteCoalgebra::set_like(f, &["g"]));
        let d = FiniteComodule::regular(g);
        assert!(d.iterated_coaction(0).to_matrix().is_identity());
        assert_eq!(d.iterated_coaction(2).image(0), &[(vec![0, 0, 0], f.one())]);

        let gd = FiniteComodule::regular(Arc::new(FiniteCoalgebra::divided_powers(f, 1)));
        // δ = Δ: d ↦ g⊗d + d⊗g
        assert_eq!(gd.iterated_coaction(1).image(1), &[(vec![0, 1], f.one()), (vec![1, 0], f.one())]);
    }

    #[test]
    fn broken_counit_detected() {
        let f = Field::rational();
        let c = Arc::new(FiniteCoalgebra::set_like(f, &["g"]));
        let d = FiniteComodule::new(c, vec!["t".into()], vec![(0, 0, 0, f.from_i64(2))]).unwrap();
        let r = d.validate();
        assert!(!r.check("counit").unwrap().passed);
    }
}
