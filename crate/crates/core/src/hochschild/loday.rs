use std::sync::Arc;

use rayon::prelude::*;

use crate::algstruct::{flatten, FiniteAlgebra, FiniteModule};
use crate::exactlin::vector::{self, SparseVec};
use crate::exactlin::SparseMatrix;
use crate::simplicial::{PointedMap, PointedSet};

use super::HochschildError;

/// The pair `(A, M)` defining the functor `[k] ↦ M ⊗ A^{⊗k}` on finite
/// pointed sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LodayModule {
    algebra: Arc<FiniteAlgebra>,
    module: Arc<FiniteModule>,
}

impl LodayModule {
    /// Validates `A` (commutative, associative, unital) and `M` over `A`.
    pub fn new(algebra: Arc<FiniteAlgebra>, module: Arc<FiniteModule>) -> Result<Self, HochschildError> {
        if !crate::measuring::same(module.algebra(), &algebra) {
            return Err(HochschildError::InvalidInput("module is over a different algebra".into()));
        }
        let report = algebra.validate();
        if !report.passed() {
            return Err(HochschildError::InvalidInput(report.to_string()));
        }
        let report = module.validate();
        if !report.passed() {
            return Err(HochschildError::InvalidInput(report.to_string()));
        }
        Ok(LodayModule { algebra, module })
    }

    /// `L(A) = L(A, A)`.
    pub fn regular(algebra: Arc<FiniteAlgebra>) -> Result<Self, HochschildError> {
        let module = Arc::new(FiniteModule::regular(algebra.clone()));
        Self::new(algebra, module)
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn space(&self, set: PointedSet) -> LodaySpace {
        LodaySpace { module_dim: self.module.dim(), algebra_dim: self.algebra.dim(), slots: set.rank() }
    }
}

/// Basis of `M ⊗ A^{⊗k}`: tuples `(m, a_1, …, a_k)` in lexicographic order,
/// module index slowest. Slot `e` holds the factor of the `e`-th
/// non-basepoint element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LodaySpace {
    module_dim: usize,
    algebra_dim: usize,
    slots: usize,
}

impl LodaySpace {
    pub fn dim(&self) -> usize {
        self.module_dim * self.algebra_dim.pow(self.slots as u32)
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    /// Leg dimensions `[dim M, dim A, …, dim A]`.
    pub fn legs(&self) -> Vec<usize> {
        let mut legs = vec![self.algebra_dim; self.slots + 1];
        legs[0] = self.module_dim;
        legs
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        flatten(tuple, &self.legs())
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.slots + 1];
        for e in (1..=self.slots).rev() {
            tuple[e] = index % self.algebra_dim;
            index /= self.algebra_dim;
        }
        tuple[0] = index;
        tuple
    }
}

pub fn loday_space(l: &LodayModule, set: PointedSet) -> LodaySpace {
    l.space(set)
}

/// Image of basis vector `col` under `L(f)`: multiply the algebra factors
/// along each fiber of `f`; the basepoint fiber acts on the module factor.
/// Empty fibers contribute the unit.
pub fn loday_map_column(l: &LodayModule, f: &PointedMap, col: usize) -> SparseVec {
    let a = &l.algebra;
    let tuple = l.space(f.source()).decode(col);
    let mut fibers: Vec<Option<SparseVec>> = vec![None; f.target().size()];
    for (e, &ai) in tuple.iter().enumerate().skip(1) {
        let target = f.apply(e);
        fibers[target] = Some(match fibers[target].take() {
            None => vector::unit(a.field(), ai),
            Some(acc) => a.multiply(&acc, &vector::unit(a.field(), ai)),
        });
    }
    let m = vector::unit(a.field(), tuple[0]);
    let mut out = match &fibers[0] {
        None => m,
        Some(acc) => l.module.act(acc, &m),
    };
    for fiber in &fibers[1..] {
        let b = fiber.as_ref().unwrap_or_else(|| a.unit());
        out = vector::kron(&out, b, a.dim());
        if out.is_empty() {
            break;
        }
    }
    out
}

/// Matrix of `L(f): M ⊗ A^{⊗|S|−1} → M ⊗ A^{⊗|T|−1}`.
pub fn loday_map(l: &LodayModule, f: &PointedMap) -> SparseMatrix {
    let (src, dst) = (l.space(f.source()), l.space(f.target()));
    let columns: Vec<SparseVec> = (0..src.dim()).into_par_iter().map(|c| loday_map_column(l, f, c)).collect();
    SparseMatrix::from_columns(l.algebra.field(), dst.dim(), &columns)
}
