use super::echelon::{Echelon, TaggedEchelon};
use super::vector::{self, SparseVec};
use super::{kernel_basis, LinAlgError, Scalar, SparseMatrix};

/// A chosen basis of `ker d_out / im d_in` together with the machinery to
/// express any cycle in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPresentation {
    dimension: usize,
    cycles: SparseMatrix,
    boundaries: SparseMatrix,
    representatives: SparseMatrix,
    projector: TaggedEchelon,
}

impl HomologyPresentation {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Columns span `ker d_out`.
    pub fn cycles(&self) -> &SparseMatrix {
        &self.cycles
    }

    /// Columns form a basis of `im d_in`.
    pub fn boundaries(&self) -> &SparseMatrix {
        &self.boundaries
    }

    /// Columns are the chosen class representatives.
    pub fn representatives(&self) -> &SparseMatrix {
        &self.representatives
    }

    /// Ambient dimension of the chain group.
    pub fn ambient_dim(&self) -> usize {
        self.cycles.nrows()
    }

    /// Coordinates of the class of `cycle` in the representative basis.
    ///
    /// Fails with [`LinAlgError::NotACycle`] if `cycle` is not in the span of
    /// boundaries and representatives.
    pub fn project(&self, cycle: &[(usize, Scalar)]) -> Result<Vec<Scalar>, LinAlgError> {
        let field = self.cycles.field();
        let (residual, tag) = self.projector.reduce(cycle, &[]);
        if !residual.is_empty() {
            return Err(LinAlgError::NotACycle);
        }
        let coords = vector::scale(&tag, &field.from_i64(-1));
        Ok(vector::to_dense(field, &coords, self.dimension))
    }

    /// Is `v` a boundary?
    pub fn is_boundary(&self, v: &[(usize, Scalar)]) -> bool {
        let field = self.cycles.field();
        Echelon::new(field, self.ambient_dim(), self.boundaries.columns()).contains(v)
    }

    /// Builds a presentation with caller-chosen representatives. They must be
    /// cycles, independent modulo boundaries, and as many as the homology
    /// dimension.
    pub fn with_representatives(
        d_out: &SparseMatrix,
        d_in: &SparseMatrix,
        representatives: &SparseMatrix,
    ) -> Result<Self, LinAlgError> {
        let base = homology_presentation(d_out, d_in)?;
        if representatives.nrows() != base.ambient_dim() || representatives.ncols() != base.dimension {
            return Err(LinAlgError::ShapeMismatch {
                op: "representatives",
                left: representatives.shape(),
                right: (base.ambient_dim(), base.dimension),
            });
        }
        if !(d_out * representatives).is_zero() {
            return Err(LinAlgError::NotACycle);
        }
        let reps = representatives.columns();
        let projector = build_projector(&base.boundaries.columns(), &reps)
            .ok_or(LinAlgError::DependentRepresentatives)?;
        Ok(HomologyPresentation { representatives: representatives.clone(), projector, ..base })
    }
}

fn build_projector(boundaries: &[SparseVec], reps: &[SparseVec]) -> Option<TaggedEchelon> {
    let mut projector = TaggedEchelon::new();
    for b in boundaries {
        projector.insert(b, &[]);
    }
    let field = reps.iter().flatten().next().map(|(_, c)| c.field());
    for (j, r) in reps.iter().enumerate() {
        let field = field.expect("some representative is nonzero");
        if !projector.insert(r, &vector::unit(field, j)) {
            return None;
        }
    }
    Some(projector)
}

/// Homology at the middle of `· --d_in--> V --d_out--> ·`.
///
/// Representatives are the cycle-basis vectors that are independent modulo
/// boundaries, each put in normal form against the reduced echelon basis of
/// the boundary space. The choice depends only on the input matrices.
pub fn homology_presentation(
    d_out: &SparseMatrix,
    d_in: &SparseMatrix,
) -> Result<HomologyPresentation, LinAlgError> {
    if d_out.ncols() != d_in.nrows() {
        return Err(LinAlgError::ShapeMismatch {
            op: "homology",
            left: d_out.shape(),
            right: d_in.shape(),
        });
    }
    if d_out.field() != d_in.field() {
        return Err(LinAlgError::FieldMismatch);
    }
    if !(d_out * d_in).is_zero() {
        return Err(LinAlgError::CompositionNotZero);
    }
    let field = d_out.field();
    let n = d_out.ncols();
    let cycles = kernel_basis(d_out);
    let boundary_echelon = Echelon::new(field, n, d_in.columns());
    let boundaries = SparseMatrix::from_columns(field, n, boundary_echelon.rows());

    let mut projector = TaggedEchelon::new();
    for b in boundary_echelon.rows() {
        projector.insert(b, &[]);
    }
    let mut reps: Vec<SparseVec> = Vec::new();
    for z in cycles.columns() {
        let (residual, _) = projector.reduce(&z, &[]);
        if residual.is_empty() {
            continue;
        }
        let rep = boundary_echelon.reduce(&z);
        projector.insert(&rep, &vector::unit(field, reps.len()));
        reps.push(rep);
    }
    debug_assert_eq!(reps.len(), cycles.ncols() - boundary_echelon.rank());
    Ok(HomologyPresentation {
        dimension: reps.len(),
        cycles,
        boundaries,
        representatives: SparseMatrix::from_columns(field, n, &reps),
        projector,
    })
}

/// Matrix of the map induced by `f` from `src` homology to `dst` homology, in
/// the stored representative bases.
///
/// `d_out_dst` is the outgoing differential at the destination degree; it is
/// used to check that representatives land on cycles.
pub fn induced_on_homology(
    f: &SparseMatrix,
    src: &HomologyPresentation,
    dst: &HomologyPresentation,
    d_out_dst: &SparseMatrix,
) -> Result<SparseMatrix, LinAlgError> {
    if f.ncols() != src.ambient_dim() || f.nrows() != dst.ambient_dim() {
        return Err(LinAlgError::ShapeMismatch {
            op: "induced map",
            left: f.shape(),
            right: (dst.ambient_dim(), src.ambient_dim()),
        });
    }
    if d_out_dst.ncols() != dst.ambient_dim() {
        return Err(LinAlgError::ShapeMismatch {
            op: "induced map differential",
            left: d_out_dst.shape(),
            right: (d_out_dst.nrows(), dst.ambient_dim()),
        });
    }
    let images = f * src.representatives();
    if !(d_out_dst * &images).is_zero() {
        return Err(LinAlgError::NotAChainMapAtThisDegree);
    }
    let field = f.field();
    let mut columns = Vec::with_capacity(src.dimension());
    for w in images.columns() {
        let coords = dst.project(&w).map_err(|_| LinAlgError::NotAChainMapAtThisDegree)?;
        columns.push(vector::from_dense(&coords));
    }
    Ok(SparseMatrix::from_columns(field, dst.dimension(), &columns))
}
