//! Finite pointed sets and truncated pointed simplicial sets.
//!
//! Every level is a finite pointed set `{0, …, n−1}` with basepoint `0`. A
//! simplicial set truncated at `N` stores levels `Y_0..Y_N` with explicit face
//! tables `d_i: Y_k → Y_{k−1}` and degeneracy tables `s_j: Y_k → Y_{k+1}`.
//! Degenerate simplices are kept; normalization happens on chains.

mod maps;
mod models;

use thiserror::Error;

use crate::report::ValidationReport;

pub use maps::{validate_simplicial_map, SimplicialMap};
pub use models::{builtin, circle, point, product, relabel, sphere, wedge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("sphere needs 1 ≤ d ≤ N, got d = {d}, N = {truncation}")]
    InvalidDimension { d: usize, truncation: usize },
    #[error("truncation levels differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("pointed set must have at least one element")]
    EmptyPointedSet,
    #[error("pointed map value {value} at {at} out of range for target size {target}")]
    ValueOutOfRange { at: usize, value: usize, target: usize },
    #[error("map does not fix the basepoint")]
    NotPointed,
    #[error("malformed tables: {0}")]
    Malformed(String),
    #[error("unknown simplicial set `{0}`")]
    UnknownBuiltin(String),
}

/// A finite pointed set `{0, …, size−1}` based at `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PointedSet {
    size: usize,
}

impl PointedSet {
    pub fn new(size: usize) -> Result<Self, SimplicialError> {
        if size == 0 {
            return Err(SimplicialError::EmptyPointedSet);
        }
        Ok(PointedSet { size })
    }

    /// `[k] = {0, …, k}`.
    pub fn standard(k: usize) -> Self {
        PointedSet { size: k + 1 }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of non-basepoint elements.
    pub fn rank(&self) -> usize {
        self.size - 1
    }
}

/// A basepoint-preserving map of finite pointed sets. Order is not required
/// to be preserved.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedMap {
    source: PointedSet,
    target: PointedSet,
    values: Vec<usize>,
}

impl PointedMap {
    pub fn new(target: PointedSet, values: Vec<usize>) -> Result<Self, SimplicialError> {
        let source = PointedSet::new(values.len())?;
        if let Some((at, &value)) = values.iter().enumerate().find(|(_, v)| **v >= target.size) {
            return Err(SimplicialError::ValueOutOfRange { at, value, target: target.size });
        }
        if values[0] != 0 {
            return Err(SimplicialError::NotPointed);
        }
        Ok(PointedMap { source, target, values })
    }

    pub fn identity(set: PointedSet) -> Self {
        PointedMap { source: set, target: set, values: (0..set.size).collect() }
    }

    pub fn source(&self) -> PointedSet {
        self.source
    }

    pub fn target(&self) -> PointedSet {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PointedMap) -> PointedMap {
        assert_eq!(first.target, self.source, "composable maps");
        PointedMap {
            source: first.source,
            target: self.target,
            values: first.values.iter().map(|&x| self.values[x]).collect(),
        }
    }
}

/// A pointed simplicial set truncated at level `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedSimplicialSet {
    name: String,
    model: String,
    sizes: Vec<usize>,
    /// `faces[k][i]` is `d_i: Y_k → Y_{k−1}`; empty for `k = 0`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[k][j]` is `s_j: Y_k → Y_{k+1}` for `k < N`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl PointedSimplicialSet {
    /// Checks table shapes and value ranges. The simplicial identities and
    /// pointedness are left to [`validate_simplicial_set`].
    pub fn new(
        name: impl Into<String>,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, SimplicialError> {
        let malformed = |m: String| Err(SimplicialError::Malformed(m));
        if sizes.is_empty() {
            return malformed("at least level 0 is required".into());
        }
        if sizes.contains(&0) {
            return Err(SimplicialError::EmptyPointedSet);
        }
        let n = sizes.len() - 1;
        if faces.len() != n + 1 || degeneracies.len() != n {
            return malformed(format!(
                "expected {} face levels and {} degeneracy levels, got {} and {}",
                n + 1,
                n,
                faces.len(),
                degeneracies.len()
            ));
        }
        for k in 0..=n {
            let want = if k == 0 { 0 } else { k + 1 };
            if faces[k].len() != want {
                return malformed(format!("level {k} needs {want} face maps, got {}", faces[k].len()));
            }
            for (i, f) in faces[k].iter().enumerate() {
                if f.len() != sizes[k] || f.iter().any(|&v| v >= sizes[k - 1]) {
                    return malformed(format!("face d_{i} on level {k} has wrong length or range"));
                }
            }
        }
        for k in 0..n {
            if degeneracies[k].len() != k + 1 {
                return malformed(format!("level {k} needs {} degeneracy maps, got {}", k + 1, degeneracies[k].len()));
            }
            for (j, s) in degeneracies[k].iter().enumerate() {
                if s.len() != sizes[k] || s.iter().any(|&v| v >= sizes[k + 1]) {
                    return malformed(format!("degeneracy s_{j} on level {k} has wrong length or range"));
                }
            }
        }
        let name = name.into();
        Ok(PointedSimplicialSet { model: name.clone(), name, sizes, faces, degeneracies })
    }

    pub fn with_model(mut self, model: impl Into<String>) -> Self {
        self.model = model.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Human-readable description of the combinatorial model.
    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn truncation(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn level(&self, k: usize) -> PointedSet {
        PointedSet { size: self.sizes[k] }
    }

    pub fn face_table(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k][i]
    }

    pub fn degeneracy_table(&self, k: usize, j: usize) -> &[usize] {
        &self.degeneracies[k][j]
    }

    /// `d_i: Y_k → Y_{k−1}` as a pointed map.
    pub fn face(&self, k: usize, i: usize) -> PointedMap {
        PointedMap { source: self.level(k), target: self.level(k - 1), values: self.faces[k][i].clone() }
    }

    /// `s_j: Y_k → Y_{k+1}` as a pointed map.
    pub fn degeneracy(&self, k: usize, j: usize) -> PointedMap {
        PointedMap { source: self.level(k), target: self.level(k + 1), values: self.degeneracies[k][j].clone() }
    }

    /// Simplices of level `k` outside the image of every degeneracy.
    pub fn nondegenerate(&self, k: usize) -> Vec<usize> {
        let mut degenerate = vec![false; self.sizes[k]];
        if k > 0 {
            for s in &self.degeneracies[k - 1] {
                for &v in s {
                    degenerate[v] = true;
                }
            }
        }
        (0..self.sizes[k]).filter(|&x| !degenerate[x]).collect()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Checks pointedness of every structure map and every simplicial identity
/// whose two sides both lie inside the truncation. Witnesses are
/// `[k, i, j, x]`: level of the input, the two operator indices, and the
/// offending simplex.
pub fn validate_simplicial_set(y: &PointedSimplicialSet) -> ValidationReport {
    let n = y.truncation();
    let mut report = ValidationReport::new(format!("simplicial set {}", y.name));
    let d = |k: usize, i: usize, x: usize| y.faces[k][i][x];
    let s = |k: usize, j: usize, x: usize| y.degeneracies[k][j][x];

    let mut pointed = None;
    'p: for k in 0..=n {
        for (i, f) in y.faces[k].iter().enumerate() {
            if f[0] != 0 {
                pointed = Some((vec![k, i], format!("d_{i} on level {k} moves the basepoint")));
                break 'p;
            }
        }
        if k < n {
            for (j, g) in y.degeneracies[k].iter().enumerate() {
                if g[0] != 0 {
                    pointed = Some((vec![k, j], format!("s_{j} on level {k} moves the basepoint")));
                    break 'p;
                }
            }
        }
    }
    report.record("pointedness", pointed);

    // d_i d_j = d_{j−1} d_i for i < j
    let mut dd = None;
    'dd: for k in 2..=n {
        for j in 1..=k {
            for i in 0..j {
                for x in 0..y.sizes[k] {
                    if d(k - 1, i, d(k, j, x)) != d(k - 1, j - 1, d(k, i, x)) {
                        dd = Some((vec![k, i, j, x], format!("d_{i} d_{j} ≠ d_{} d_{i} on level {k}", j - 1)));
                        break 'dd;
                    }
                }
            }
        }
    }
    report.record("d_i d_j = d_{j-1} d_i", dd);

    // s_i s_j = s_{j+1} s_i for i ≤ j
    let mut ss = None;
    'ss: for k in 0..n.saturating_sub(1) {
        for j in 0..=k {
            for i in 0..=j {
                for x in 0..y.sizes[k] {
                    if s(k + 1, i, s(k, j, x)) != s(k + 1, j + 1, s(k, i, x)) {
                        ss = Some((vec![k, i, j, x], format!("s_{i} s_{j} ≠ s_{} s_{i} on level {k}", j + 1)));
                        break 'ss;
                    }
                }
            }
        }
    }
    report.record("s_i s_j = s_{j+1} s_i", ss);

    let mut ds = None;
    'ds: for k in 0..n {
        for j in 0..=k {
            for i in 0..=k + 1 {
                for x in 0..y.sizes[k] {
                    let lhs = d(k + 1, i, s(k, j, x));
                    let (rhs, law) = if i < j {
                        (s(k - 1, j - 1, d(k, i, x)), format!("d_{i} s_{j} ≠ s_{} d_{i}", j - 1))
                    } else if i == j || i == j + 1 {
                        (x, format!("d_{i} s_{j} ≠ id"))
                    } else {
                        (s(k - 1, j, d(k, i - 1, x)), format!("d_{i} s_{j} ≠ s_{j} d_{}", i - 1))
                    };
                    if lhs != rhs {
                        ds = Some((vec![k, i, j, x], format!("{law} on level {k}")));
                        break 'ds;
                    }
                }
            }
        }
    }
    report.record("d_i s_j", ds);
    report
}
