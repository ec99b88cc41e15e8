use std::sync::Arc;

use rayon::prelude::*;

use crate::exactlin::vector::SparseVec;
use crate::exactlin::{induced_on_homology, HomologyPresentation, Scalar, SparseMatrix};
use crate::measuring::{same, ComoduleMeasuring};
use crate::simplicial::SimplicialMap;

use super::complex::ChainComplex;
use super::loday::{loday_map, loday_map_column};
use super::HochschildError;

/// Degreewise matrices `F_k: C_k → D_k`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    components: Vec<SparseMatrix>,
}

impl ChainMap {
    /// Checks shapes and `∂ F = F ∂` in every degree.
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: Vec<SparseMatrix>,
    ) -> Result<Self, HochschildError> {
        let map = Self::new_unchecked(source, target, components)?;
        if let Some(k) = map.first_non_commuting_degree() {
            return Err(HochschildError::NotChainMap { degree: k });
        }
        Ok(map)
    }

    /// Checks shapes only.
    pub fn new_unchecked(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: Vec<SparseMatrix>,
    ) -> Result<Self, HochschildError> {
        if source.top_degree() != target.top_degree() || components.len() != source.dims().len() {
            return Err(HochschildError::Incompatible("chain map degree ranges differ".into()));
        }
        for (k, f) in components.iter().enumerate() {
            if f.shape() != (target.dim(k), source.dim(k)) {
                return Err(HochschildError::Incompatible(format!(
                    "component {k} has shape {:?}, expected {:?}",
                    f.shape(),
                    (target.dim(k), source.dim(k))
                )));
            }
        }
        Ok(ChainMap { source, target, components })
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn component(&self, k: usize) -> &SparseMatrix {
        &self.components[k]
    }

    pub fn components(&self) -> &[SparseMatrix] {
        &self.components
    }

    /// Lowest `k ≥ 1` with `∂_k F_k ≠ F_{k−1} ∂_k`.
    pub fn first_non_commuting_degree(&self) -> Option<usize> {
        (1..self.components.len()).into_par_iter().find_first(|&k| !self.commutes_at(k))
    }

    pub fn commutes_at(&self, k: usize) -> bool {
        let lhs = self.target.differential(k) * &self.components[k];
        let rhs = &self.components[k - 1] * self.source.differential(k);
        lhs == rhs
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(SparseMatrix::is_identity)
    }
}

/// Turns a map on the unnormalized spaces, given column by column, into the
/// component between the complexes actually used.
fn transport<F>(src: &ChainComplex, dst: &ChainComplex, k: usize, column: F) -> SparseMatrix
where
    F: Fn(usize) -> SparseVec + Sync,
{
    let field = src.field();
    let columns: Vec<SparseVec> = (0..src.dim(k))
        .into_par_iter()
        .map(|c| match (src.quotient(k), dst.quotient(k)) {
            (Some(qs), Some(qd)) => qd.project(&column(qs.ambient_coordinate(c))),
            _ => column(c),
        })
        .collect();
    SparseMatrix::from_columns(field, dst.dim(k), &columns)
}

fn check_same_shape(src: &ChainComplex, dst: &ChainComplex) -> Result<(), HochschildError> {
    if src.is_normalized() != dst.is_normalized() {
        return Err(HochschildError::Incompatible("one complex is normalized and the other is not".into()));
    }
    if src.top_degree() != dst.top_degree() {
        return Err(HochschildError::Incompatible("truncation levels differ".into()));
    }
    Ok(())
}

/// `L(g)` between the complexes of `g`'s source and target for the same
/// `(A, M)`.
pub fn simplicial_chain_map(
    g: &SimplicialMap,
    src: Arc<ChainComplex>,
    dst: Arc<ChainComplex>,
) -> Result<ChainMap, HochschildError> {
    check_same_shape(&src, &dst)?;
    if src.loday() != dst.loday() {
        return Err(HochschildError::Incompatible("complexes use different (A, M)".into()));
    }
    if src.simplicial_set() != g.source() || dst.simplicial_set() != g.target() {
        return Err(HochschildError::Incompatible("complexes are not over the map's source and target".into()));
    }
    let l = src.loday().clone();
    let components = (0..=src.top_degree())
        .map(|k| {
            let gk = g.component(k);
            transport(&src, &dst, k, |c| loday_map_column(&l, &gk, c))
        })
        .collect();
    ChainMap::new(src, dst, components)
}

/// Unnormalized degree-`k` component of `L(g)`.
pub fn simplicial_component(g: &SimplicialMap, l: &super::LodayModule, k: usize) -> SparseMatrix {
    loday_map(l, &g.component(k))
}

fn check_measuring_fit(phi: &ComoduleMeasuring, src: &ChainComplex, dst: &ChainComplex) -> Result<(), HochschildError> {
    check_same_shape(src, dst)?;
    if src.simplicial_set() != dst.simplicial_set() {
        return Err(HochschildError::Incompatible("source and target complexes are over different simplicial sets".into()));
    }
    let m = phi.measuring();
    if !same(src.loday().algebra(), m.source()) || !same(src.loday().module(), phi.source()) {
        return Err(HochschildError::Incompatible("source complex is not over (A, M) of the measuring".into()));
    }
    if !same(dst.loday().algebra(), m.target()) || !same(dst.loday().module(), phi.target()) {
        return Err(HochschildError::Incompatible("target complex is not over (B, N) of the measuring".into()));
    }
    Ok(())
}

/// `L^φ(t)` as a chain map, with the chain-map identity and (for normalized
/// complexes) preservation of degenerate chains verified.
pub fn measuring_chain_map(
    phi: &ComoduleMeasuring,
    t: &[Scalar],
    src: Arc<ChainComplex>,
    dst: Arc<ChainComplex>,
) -> Result<ChainMap, HochschildError> {
    let map = build_measuring_map(phi, t, src, dst, true)?;
    if let Some(k) = map.first_non_commuting_degree() {
        return Err(HochschildError::NotChainMap { degree: k });
    }
    Ok(map)
}

/// As [`measuring_chain_map`] but only the fit of the inputs is checked.
/// Used to examine data that fails validation.
pub fn measuring_chain_map_unchecked(
    phi: &ComoduleMeasuring,
    t: &[Scalar],
    src: Arc<ChainComplex>,
    dst: Arc<ChainComplex>,
) -> Result<ChainMap, HochschildError> {
    build_measuring_map(phi, t, src, dst, false)
}

fn build_measuring_map(
    phi: &ComoduleMeasuring,
    t: &[Scalar],
    src: Arc<ChainComplex>,
    dst: Arc<ChainComplex>,
    check_degenerate: bool,
) -> Result<ChainMap, HochschildError> {
    check_measuring_fit(phi, &src, &dst)?;
    let y = src.simplicial_set().clone();
    let mut components = Vec::with_capacity(src.dims().len());
    for k in 0..=src.top_degree() {
        let full = phi.multilinear_operator(t, y.level(k).rank())?;
        if check_degenerate {
            if let (Some(qs), Some(qd)) = (src.quotient(k), dst.quotient(k)) {
                if qs.degenerate_basis().par_iter().any(|v| !qd.is_degenerate(&full.mul_vec(v))) {
                    return Err(HochschildError::DegeneracyNotPreserved { degree: k });
                }
            }
        }
        let columns = full.columns();
        components.push(transport(&src, &dst, k, |c| columns[c].clone()));
    }
    ChainMap::new_unchecked(src, dst, components)
}

/// Matrix of the induced map on `H_n` in the stored representative bases.
pub fn homology_map(cm: &ChainMap, n: usize) -> Result<SparseMatrix, HochschildError> {
    let src = cm.source.homology(n)?;
    let dst = cm.target.homology(n)?;
    homology_map_with(cm, n, &src, &dst)
}

/// As [`homology_map`] with precomputed presentations.
pub fn homology_map_with(
    cm: &ChainMap,
    n: usize,
    src: &HomologyPresentation,
    dst: &HomologyPresentation,
) -> Result<SparseMatrix, HochschildError> {
    cm.target.check_degree(n)?;
    Ok(induced_on_homology(&cm.components[n], src, dst, cm.target.differential(n))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algstruct::{FiniteAlgebra, FiniteCoalgebra};
    use crate::exactlin::Field;
    use crate::hochschild::LodayModule;
    use crate::measuring::Measuring;
    use crate::simplicial::{circle, relabel};

    fn q() -> Field {
        Field::rational()
    }

    fn dual_number_phi() -> ComoduleMeasuring {
        let f = q();
        let c = Arc::new(FiniteCoalgebra::divided_powers(f, 1));
        let a = Arc::new(FiniteAlgebra::truncated_polynomial(f, 2));
        let b = Arc::new(FiniteAlgebra::ground(f));
        let psi = Measuring::new(c, a, b, vec![(0, 0, 0, f.one()), (1, 1, 0, f.one())]).unwrap();
        ComoduleMeasuring::regular(Arc::new(psi))
    }

    fn complexes(phi: &ComoduleMeasuring, n: usize, normalized: bool) -> (Arc<ChainComplex>, Arc<ChainComplex>) {
        let y = Arc::new(circle(n));
        let la = LodayModule::new(phi.measuring().source().clone(), phi.source().clone()).unwrap();
        let lb = LodayModule::new(phi.measuring().target().clone(), phi.target().clone()).unwrap();
        (
            Arc::new(ChainComplex::new(la, y.clone(), normalized).unwrap()),
            Arc::new(ChainComplex::new(lb, y, normalized).unwrap()),
        )
    }

    #[test]
    fn measuring_chain_maps_are_chain_maps() {
        let phi = dual_number_phi();
        let f = q();
        for normalized in [false, true] {
            let (a, b) = complexes(&phi, 3, normalized);
            for t in [[f.one(), f.zero()], [f.zero(), f.one()], [f.from_i64(3), f.from_i64(-2)]] {
                measuring_chain_map(&phi, &t, a.clone(), b.clone()).unwrap();
            }
        }
    }

    #[test]
    fn degree_zero_is_the_operator() {
        let phi = dual_number_phi();
        let f = q();
        let (a, b) = complexes(&phi, 2, true);
        let d = [f.zero(), f.one()];
        let map = measuring_chain_map(&phi, &d, a, b).unwrap();
        assert_eq!(map.component(0), &phi.operator(&d).unwrap());
    }

    #[test]
    fn group_like_identity_gives_identity() {
        let f = q();
        let a = Arc::new(FiniteAlgebra::truncated_polynomial(f, 2));
        let psi = Measuring::from_algebra_map(a.clone(), a, SparseMatrix::identity(f, 2)).unwrap();
        let phi = ComoduleMeasuring::regular(Arc::new(psi));
        let (a, b) = complexes(&phi, 3, true);
        let map = measuring_chain_map(&phi, &[f.one()], a, b).unwrap();
        assert!(map.is_identity());
        assert!(homology_map(&map, 1).unwrap().is_identity());
        let zero = measuring_chain_map(&phi, &[f.zero()], map.source().clone(), map.target().clone()).unwrap();
        assert!(homology_map(&zero, 1).unwrap().is_zero());
    }

    #[test]
    fn collapse_degree_one_multiplies() {
        let f = q();
        let l = LodayModule::regular(Arc::new(FiniteAlgebra::truncated_polynomial(f, 2))).unwrap();
        let y = Arc::new(circle(2));
        let g = SimplicialMap::collapse(y.clone());
        let src = Arc::new(ChainComplex::new(l.clone(), y, false).unwrap());
        let dst = Arc::new(ChainComplex::new(l, g.target().clone(), false).unwrap());
        let map = simplicial_chain_map(&g, src, dst).unwrap();
        // m⊗a ↦ m·a: 1⊗1 ↦ 1, 1⊗x ↦ x, x⊗1 ↦ x, x⊗x ↦ 0
        assert_eq!(map.component(1), &SparseMatrix::from_i64_rows(f, &[&[1, 0, 0, 0], &[0, 1, 1, 0]]));
    }

    #[test]
    fn relabeling_is_invertible() {
        let f = q();
        let l = LodayModule::regular(Arc::new(FiniteAlgebra::truncated_polynomial(f, 2))).unwrap();
        let y = Arc::new(circle(3));
        let perms = vec![vec![0], vec![0, 1], vec![0, 2, 1], vec![0, 3, 1, 2]];
        let g = SimplicialMap::relabeling(y.clone(), &perms).unwrap();
        assert_eq!(**g.target(), relabel(&y, &perms).unwrap());
        for normalized in [false, true] {
            let src = Arc::new(ChainComplex::new(l.clone(), y.clone(), normalized).unwrap());
            let dst = Arc::new(ChainComplex::new(l.clone(), g.target().clone(), normalized).unwrap());
            let map = simplicial_chain_map(&g, src, dst).unwrap();
            for k in 0..=3 {
                let c = map.component(k);
                assert_eq!(c.nrows(), c.ncols());
                assert_eq!(crate::exactlin::rank(c), c.ncols());
            }
            for n in 0..3 {
                let h = homology_map(&map, n).unwrap();
                assert_eq!(crate::exactlin::rank(&h), h.ncols());
            }
        }
    }

    #[test]
    fn fit_errors() {
        let phi = dual_number_phi();
        let (a, b) = complexes(&phi, 2, true);
        let f = q();
        let t = [f.one(), f.zero()];
        assert!(matches!(measuring_chain_map(&phi, &t, b.clone(), a.clone()), Err(HochschildError::Incompatible(_))));
        let (_, bu) = complexes(&phi, 2, false);
        assert!(matches!(measuring_chain_map(&phi, &t, a, bu), Err(HochschildError::Incompatible(_))));
    }
}
