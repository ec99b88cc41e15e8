use std::sync::Arc;

use crate::report::ValidationReport;

use super::{models, PointedMap, PointedSimplicialSet, SimplicialError};

/// A levelwise pointed map `g: Y → Z` between simplicial sets of the same
/// truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<PointedSimplicialSet>,
    target: Arc<PointedSimplicialSet>,
    components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// Checks shapes and ranges; compatibility with the structure maps is
    /// checked by [`validate_simplicial_map`].
    pub fn new(
        source: Arc<PointedSimplicialSet>,
        target: Arc<PointedSimplicialSet>,
        components: Vec<Vec<usize>>,
    ) -> Result<Self, SimplicialError> {
        if source.truncation() != target.truncation() {
            return Err(SimplicialError::TruncationMismatch(source.truncation(), target.truncation()));
        }
        if components.len() != source.sizes().len() {
            return Err(SimplicialError::Malformed(format!(
                "need {} components, got {}",
                source.sizes().len(),
                components.len()
            )));
        }
        for (k, g) in components.iter().enumerate() {
            if g.len() != source.sizes()[k] {
                return Err(SimplicialError::Malformed(format!("component {k} has length {}", g.len())));
            }
            if let Some((at, &value)) = g.iter().enumerate().find(|(_, v)| **v >= target.sizes()[k]) {
                return Err(SimplicialError::ValueOutOfRange { at, value, target: target.sizes()[k] });
            }
        }
        Ok(SimplicialMap { source, target, components })
    }

    pub fn identity(y: Arc<PointedSimplicialSet>) -> Self {
        let components = y.sizes().iter().map(|&n| (0..n).collect()).collect();
        SimplicialMap { source: y.clone(), target: y, components }
    }

    /// The unique map to the point.
    pub fn collapse(y: Arc<PointedSimplicialSet>) -> Self {
        let target = Arc::new(models::point(y.truncation()));
        let components = y.sizes().iter().map(|&n| vec![0; n]).collect();
        SimplicialMap { source: y, target, components }
    }

    /// The projection `Y × Z → Y` (`factor = 0`) or `Y × Z → Z` (`factor = 1`).
    pub fn projection(
        y: Arc<PointedSimplicialSet>,
        z: Arc<PointedSimplicialSet>,
        factor: usize,
    ) -> Result<Self, SimplicialError> {
        assert!(factor < 2, "a product has two factors");
        let source = Arc::new(models::product(&y, &z)?);
        let components = (0..source.sizes().len())
            .map(|k| {
                let width = z.sizes()[k];
                (0..source.sizes()[k]).map(|x| if factor == 0 { x / width } else { x % width }).collect()
            })
            .collect();
        let target = if factor == 0 { y } else { z };
        Ok(SimplicialMap { source, target, components })
    }

    /// The isomorphism `Y → relabel(Y, perms)`.
    pub fn relabeling(y: Arc<PointedSimplicialSet>, perms: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        let target = Arc::new(models::relabel(&y, perms)?);
        Ok(SimplicialMap { source: y, target, components: perms.to_vec() })
    }

    pub fn source(&self) -> &Arc<PointedSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PointedSimplicialSet> {
        &self.target
    }

    pub fn component_table(&self, k: usize) -> &[usize] {
        &self.components[k]
    }

    /// `g_k: Y_k → Z_k`.
    pub fn component(&self, k: usize) -> PointedMap {
        PointedMap {
            source: self.source.level(k),
            target: self.target.level(k),
            values: self.components[k].clone(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> Result<SimplicialMap, SimplicialError> {
        if *first.target != *self.source {
            return Err(SimplicialError::Malformed("maps are not composable".into()));
        }
        let components = first
            .components
            .iter()
            .zip(&self.components)
            .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
            .collect();
        Ok(SimplicialMap { source: first.source.clone(), target: self.target.clone(), components })
    }
}

/// Pointedness of each component and `g d_i = d_i g`, `g s_j = s_j g`.
/// Witnesses are `[k, i, x]`.
pub fn validate_simplicial_map(g: &SimplicialMap) -> ValidationReport {
    let (y, z) = (&g.source, &g.target);
    let n = y.truncation();
    let mut report = ValidationReport::new(format!("simplicial map {} → {}", y.name(), z.name()));
    let pointed = g
        .components
        .iter()
        .position(|c| c[0] != 0)
        .map(|k| (vec![k], format!("g_{k} moves the basepoint")));
    report.record("pointedness", pointed);

    let mut faces = None;
    'f: for k in 1..=n {
        for i in 0..=k {
            for x in 0..y.sizes()[k] {
                if g.components[k - 1][y.face_table(k, i)[x]] != z.face_table(k, i)[g.components[k][x]] {
                    faces = Some((vec![k, i, x], format!("g d_{i} ≠ d_{i} g on level {k}")));
                    break 'f;
                }
            }
        }
    }
    report.record("commutes with faces", faces);

    let mut degeneracies = None;
    'd: for k in 0..n {
        for j in 0..=k {
            for x in 0..y.sizes()[k] {
                if g.components[k + 1][y.degeneracy_table(k, j)[x]] != z.degeneracy_table(k, j)[g.components[k][x]] {
                    degeneracies = Some((vec![k, j, x], format!("g s_{j} ≠ s_{j} g on level {k}")));
                    break 'd;
                }
            }
        }
    }
    report.record("commutes with degeneracies", degeneracies);
    report
}
