use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactlin::vector::{self, SparseVec};
use crate::exactlin::{homology_presentation, Echelon, Field, HomologyPresentation, SparseMatrix};
use crate::simplicial::PointedSimplicialSet;

use super::loday::{loday_map_column, LodayModule};
use super::HochschildError;

/// The quotient of a degree by its degenerate subspace. The quotient basis
/// is the set of non-pivot coordinates of the degenerate subspace's reduced
/// echelon form.
#[derive(Clone, Debug)]
pub(crate) struct Quotient {
    degenerate: Echelon,
    basis: Vec<usize>,
    position: Vec<u32>,
}

impl Quotient {
    fn new(field: Field, ambient: usize, degenerate_vectors: Vec<SparseVec>) -> Self {
        let degenerate = Echelon::new(field, ambient, degenerate_vectors);
        let basis = degenerate.free_columns();
        let mut position = vec![u32::MAX; ambient];
        for (i, &c) in basis.iter().enumerate() {
            position[c] = i as u32;
        }
        Quotient { degenerate, basis, position }
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn ambient_coordinate(&self, i: usize) -> usize {
        self.basis[i]
    }

    /// Class of an ambient vector, in quotient coordinates.
    pub(crate) fn project(&self, v: &[(usize, crate::Scalar)]) -> SparseVec {
        self.degenerate
            .reduce(v)
            .into_iter()
            .map(|(c, x)| (self.position[c] as usize, x))
            .collect()
    }

    pub(crate) fn is_degenerate(&self, v: &[(usize, crate::Scalar)]) -> bool {
        self.degenerate.contains(v)
    }

    pub(crate) fn degenerate_basis(&self) -> &[SparseVec] {
        self.degenerate.rows()
    }
}

/// Descriptive data carried into reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexMetadata {
    pub simplicial_set: String,
    pub model: String,
    pub normalized: bool,
    pub truncation: usize,
    pub field: String,
    /// Tensor slot `e` of degree `k` holds the factor of simplex `e` of `Y_k`.
    pub slot_order: String,
    pub unnormalized_dims: Vec<usize>,
}

/// `C_k = M ⊗ A^{⊗(|Y_k|−1)}` with `∂_k = Σ_i (−1)^i L(d_i)`, optionally
/// divided by the degenerate subcomplex.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    loday: LodayModule,
    y: Arc<PointedSimplicialSet>,
    normalized: bool,
    dims: Vec<usize>,
    /// `differentials[k]: C_k → C_{k−1}`; `differentials[0]` has zero rows.
    differentials: Vec<SparseMatrix>,
    quotients: Option<Vec<Quotient>>,
}

fn unnormalized_differential_column(l: &LodayModule, y: &PointedSimplicialSet, k: usize, col: usize) -> SparseVec {
    let field = l.algebra().field();
    let mut acc = Vec::new();
    for i in 0..=k {
        let sign = if i % 2 == 0 { field.one() } else { field.from_i64(-1) };
        acc = vector::add_scaled(&acc, &sign, &loday_map_column(l, &y.face(k, i), col));
    }
    acc
}

impl ChainComplex {
    /// Builds the complex through degree `N` and checks `∂∘∂ = 0`.
    pub fn new(loday: LodayModule, y: Arc<PointedSimplicialSet>, normalized: bool) -> Result<Self, HochschildError> {
        let field = loday.algebra().field();
        let n = y.truncation();
        let full: Vec<usize> = (0..=n).map(|k| loday.space(y.level(k)).dim()).collect();

        let quotients: Option<Vec<Quotient>> = normalized.then(|| {
            (0..=n)
                .into_par_iter()
                .map(|k| {
                    let mut degenerate = Vec::new();
                    if k > 0 {
                        for j in 0..k {
                            let s = y.degeneracy(k - 1, j);
                            degenerate.extend((0..full[k - 1]).map(|c| loday_map_column(&loday, &s, c)));
                        }
                    }
                    Quotient::new(field, full[k], degenerate)
                })
                .collect()
        });

        let dims: Vec<usize> = match &quotients {
            Some(q) => q.iter().map(Quotient::dim).collect(),
            None => full.clone(),
        };

        let differentials: Vec<SparseMatrix> = (0..=n)
            .into_par_iter()
            .map(|k| {
                if k == 0 {
                    return SparseMatrix::zeros(field, 0, dims[0]);
                }
                let columns: Vec<SparseVec> = (0..dims[k])
                    .into_par_iter()
                    .map(|c| match &quotients {
                        None => unnormalized_differential_column(&loday, &y, k, c),
                        Some(q) => {
                            let ambient = q[k].ambient_coordinate(c);
                            q[k - 1].project(&unnormalized_differential_column(&loday, &y, k, ambient))
                        }
                    })
                    .collect();
                SparseMatrix::from_columns(field, dims[k - 1], &columns)
            })
            .collect();

        let complex = ChainComplex { loday, y, normalized, dims, differentials, quotients };
        complex.check_square_zero()?;
        Ok(complex)
    }

    fn check_square_zero(&self) -> Result<(), HochschildError> {
        let bad = (2..self.differentials.len())
            .into_par_iter()
            .find_first(|&k| !(&self.differentials[k - 1] * &self.differentials[k]).is_zero());
        match bad {
            Some(k) => Err(HochschildError::SquareNotZero { degree: k }),
            None => Ok(()),
        }
    }

    pub fn loday(&self) -> &LodayModule {
        &self.loday
    }

    pub fn simplicial_set(&self) -> &Arc<PointedSimplicialSet> {
        &self.y
    }

    pub fn field(&self) -> Field {
        self.loday.algebra().field()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Highest degree present, equal to the truncation of `Y`.
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    /// `∂_k: C_k → C_{k−1}` (for `k = 0`, the map to the zero space).
    pub fn differential(&self, k: usize) -> &SparseMatrix {
        &self.differentials[k]
    }

    /// Unnormalized coordinate of each basis vector of `C_k`. The normalized
    /// basis is the classes of these unnormalized basis tensors.
    pub fn chain_basis(&self, k: usize) -> Vec<usize> {
        match self.quotient(k) {
            Some(q) => (0..q.dim()).map(|i| q.ambient_coordinate(i)).collect(),
            None => (0..self.dims[k]).collect(),
        }
    }

    /// `chain_basis(k)` as tensor labels like `x⊗1⊗x`.
    pub fn chain_basis_labels(&self, k: usize) -> Vec<String> {
        let space = self.loday.space(self.y.level(k));
        let (m, a) = (self.loday.module().basis(), self.loday.algebra().basis());
        self.chain_basis(k)
            .into_iter()
            .map(|c| {
                let tuple = space.decode(c);
                std::iter::once(m[tuple[0]].as_str())
                    .chain(tuple[1..].iter().map(|&i| a[i].as_str()))
                    .collect::<Vec<_>>()
                    .join("⊗")
            })
            .collect()
    }

    pub(crate) fn quotient(&self, k: usize) -> Option<&Quotient> {
        self.quotients.as_ref().map(|q| &q[k])
    }

    /// Highest degree whose homology is determined by the truncation.
    pub fn max_homology_degree(&self) -> Option<usize> {
        self.top_degree().checked_sub(1)
    }

    pub fn check_degree(&self, n: usize) -> Result<(), HochschildError> {
        if n + 1 > self.top_degree() {
            return Err(HochschildError::TruncationTooShallow { requested: n, truncation: self.top_degree() });
        }
        Ok(())
    }

    /// `HH_n^Y(A, M)` from `∂_n` and `∂_{n+1}`.
    pub fn homology(&self, n: usize) -> Result<HomologyPresentation, HochschildError> {
        self.check_degree(n)?;
        Ok(homology_presentation(&self.differentials[n], &self.differentials[n + 1])?)
    }

    pub fn metadata(&self) -> ComplexMetadata {
        ComplexMetadata {
            simplicial_set: self.y.name().to_string(),
            model: self.y.model().to_string(),
            normalized: self.normalized,
            truncation: self.y.truncation(),
            field: self.field().to_string(),
            slot_order: "degree k: module factor, then one algebra factor per non-basepoint simplex of Y_k in index order"
                .into(),
            unnormalized_dims: (0..=self.top_degree()).map(|k| self.loday.space(self.y.level(k)).dim()).collect(),
        }
    }
}

/// `HH_n^Y(A, M)`.
pub fn homology(
    l: &LodayModule,
    y: Arc<PointedSimplicialSet>,
    n: usize,
    normalized: bool,
) -> Result<HomologyPresentation, HochschildError> {
    if n + 1 > y.truncation() {
        return Err(HochschildError::TruncationTooShallow { requested: n, truncation: y.truncation() });
    }
    ChainComplex::new(l.clone(), y, normalized)?.homology(n)
}
