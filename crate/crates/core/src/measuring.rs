//! Coalgebra measurings `ψ: C → Hom(A, B)` and comodule measurings
//! `φ: D → Hom(M, N)`.
//!
//! A measuring sends each coalgebra element to a linear map that behaves
//! like an algebra map "up to the coproduct": `ψ(s)(a a') = Σ ψ(s₁)(a) ψ(s₂)(a')`
//! and `ψ(s)(1) = ε(s) 1`. Group-like elements give algebra maps; primitives
//! give twisted derivations.

use std::sync::Arc;

use thiserror::Error;

use crate::algstruct::{FiniteAlgebra, FiniteCoalgebra, FiniteComodule, FiniteModule};
use crate::exactlin::vector::{self, SparseVec};
use crate::exactlin::{Scalar, SparseMatrix};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasuringError {
    #[error("coalgebra is not cocommutative: Δ[{0}] differs from its swap at ({1}, {2})")]
    NotCocommutative(usize, usize, usize),
    #[error("dimension mismatch: expected {expected}, got {actual} ({what})")]
    DimensionMismatch { what: &'static str, expected: usize, actual: usize },
    #[error("{what} index {index:?} out of range")]
    IndexOutOfRange { what: &'static str, index: Vec<usize> },
    #[error("duplicate {what} entry at {index:?}")]
    DuplicateEntry { what: &'static str, index: Vec<usize> },
    #[error("inconsistent structures: {0}")]
    Mismatch(String),
}

pub(crate) fn same<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn operator_table(
    what: &'static str,
    field: crate::Field,
    count: usize,
    src_dim: usize,
    dst_dim: usize,
    table: Vec<(usize, usize, usize, Scalar)>,
) -> Result<Vec<SparseMatrix>, MeasuringError> {
    let mut per = vec![Vec::new(); count];
    for (s, a, b, c) in table {
        if s >= count || a >= src_dim || b >= dst_dim {
            return Err(MeasuringError::IndexOutOfRange { what, index: vec![s, a, b] });
        }
        per[s].push((b, a, c));
    }
    per.into_iter()
        .map(|entries| {
            SparseMatrix::from_triplets(field, dst_dim, src_dim, entries).map_err(|e| match e {
                crate::LinAlgError::DuplicateEntry { row, col } => {
                    MeasuringError::DuplicateEntry { what, index: vec![col, row] }
                }
                other => MeasuringError::Mismatch(other.to_string()),
            })
        })
        .collect()
}

/// `ψ: C → Hom(A, B)` stored as one `dim B × dim A` matrix per basis
/// element of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measuring {
    coalgebra: Arc<FiniteCoalgebra>,
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    operators: Vec<SparseMatrix>,
}

impl Measuring {
    /// `table` lists `(s, a, b, c)` meaning `ψ(c_s)(e_a)` has `c` on `f_b`.
    ///
    /// The coalgebra must be cocommutative: the induced maps on Hochschild
    /// homology need it, so it is enforced here rather than on the coalgebra.
    pub fn new(
        coalgebra: Arc<FiniteCoalgebra>,
        source: Arc<FiniteAlgebra>,
        target: Arc<FiniteAlgebra>,
        table: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self, MeasuringError> {
        let ops = operator_table("measuring", coalgebra.field(), coalgebra.dim(), source.dim(), target.dim(), table)?;
        Self::from_operators(coalgebra, source, target, ops)
    }

    pub fn from_operators(
        coalgebra: Arc<FiniteCoalgebra>,
        source: Arc<FiniteAlgebra>,
        target: Arc<FiniteAlgebra>,
        operators: Vec<SparseMatrix>,
    ) -> Result<Self, MeasuringError> {
        if let Some((s, i, j)) = coalgebra.cocommutativity_violation() {
            return Err(MeasuringError::NotCocommutative(s, i, j));
        }
        if source.field() != coalgebra.field() || target.field() != coalgebra.field() {
            return Err(MeasuringError::Mismatch("fields differ".into()));
        }
        if operators.len() != coalgebra.dim() {
            return Err(MeasuringError::DimensionMismatch {
                what: "one operator per coalgebra basis element",
                expected: coalgebra.dim(),
                actual: operators.len(),
            });
        }
        for op in &operators {
            if op.shape() != (target.dim(), source.dim()) {
                return Err(MeasuringError::DimensionMismatch {
                    what: "operator columns",
                    expected: source.dim(),
                    actual: op.ncols(),
                });
            }
        }
        Ok(Measuring { coalgebra, source, target, operators })
    }

    /// The measuring of a single group-like element onto an algebra map.
    pub fn from_algebra_map(
        source: Arc<FiniteAlgebra>,
        target: Arc<FiniteAlgebra>,
        map: SparseMatrix,
    ) -> Result<Self, MeasuringError> {
        let c = Arc::new(FiniteCoalgebra::set_like(source.field(), &["g"]));
        Self::from_operators(c, source, target, vec![map])
    }

    pub fn coalgebra(&self) -> &Arc<FiniteCoalgebra> {
        &self.coalgebra
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.target
    }

    /// `ψ(c_s)` as a matrix.
    pub fn basis_operator(&self, s: usize) -> &SparseMatrix {
        &self.operators[s]
    }

    /// `(s, a, b, c)` entries, sorted.
    pub fn table(&self) -> Vec<(usize, usize, usize, Scalar)> {
        table_of(&self.operators)
    }

    /// Matrix of `ψ(s)` for `s` given in coordinates.
    pub fn operator(&self, s: &[Scalar]) -> Result<SparseMatrix, MeasuringError> {
        combine_operators(&self.operators, s, self.target.dim(), self.source.dim())
    }

    /// Both measuring laws on every basis triple. Bilinearity makes the basis
    /// check complete.
    pub fn validate(&self) -> ValidationReport {
        let (a_dim, m) = (self.source.dim(), self.coalgebra.dim());
        let mut report = ValidationReport::new("measuring");
        let images: Vec<Vec<SparseVec>> = self.operators.iter().map(|op| op.columns()).collect();

        let mut product = None;
        'outer: for s in 0..m {
            for a in 0..a_dim {
                for b in 0..a_dim {
                    let lhs = self.operators[s].mul_vec(self.source.basis_product(a, b));
                    let mut rhs = Vec::new();
                    for (i, j, c) in self.coalgebra.coproduct_of(s) {
                        let p = self.target.multiply(&images[*i][a], &images[*j][b]);
                        rhs = vector::add_scaled(&rhs, c, &p);
                    }
                    if lhs != rhs {
                        product = Some((vec![s, a, b], format!(
                            "ψ({})({}·{}) ≠ Σ ψ(s₁)({})ψ(s₂)({})",
                            self.coalgebra.basis()[s],
                            self.source.basis()[a],
                            self.source.basis()[b],
                            self.source.basis()[a],
                            self.source.basis()[b]
                        )));
                        break 'outer;
                    }
                }
            }
        }
        report.record("product law", product);

        let unit = (0..m).find_map(|s| {
            let lhs = self.operators[s].mul_vec(self.source.unit());
            let rhs = vector::scale(self.target.unit(), &self.coalgebra.counit_of(s));
            (lhs != rhs).then(|| (vec![s], format!("ψ({})(1) ≠ ε·1", self.coalgebra.basis()[s])))
        });
        report.record("unit law", unit);
        report
    }
}

/// `φ: D → Hom(M, N)` over a measuring `ψ: C → Hom(A, B)`, where `D` is a
/// `C`-comodule, `M` an `A`-module and `N` a `B`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleMeasuring {
    measuring: Arc<Measuring>,
    comodule: Arc<FiniteComodule>,
    source: Arc<FiniteModule>,
    target: Arc<FiniteModule>,
    operators: Vec<SparseMatrix>,
}

impl ComoduleMeasuring {
    /// `table` lists `(t, m, n, c)` meaning `φ(t)(m_m)` has `c` on `n_n`.
    pub fn new(
        measuring: Arc<Measuring>,
        comodule: Arc<FiniteComodule>,
        source: Arc<FiniteModule>,
        target: Arc<FiniteModule>,
        table: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self, MeasuringError> {
        let field = measuring.coalgebra.field();
        let ops = operator_table("comodule measuring", field, comodule.dim(), source.dim(), target.dim(), table)?;
        Self::from_operators(measuring, comodule, source, target, ops)
    }

    pub fn from_operators(
        measuring: Arc<Measuring>,
        comodule: Arc<FiniteComodule>,
        source: Arc<FiniteModule>,
        target: Arc<FiniteModule>,
        operators: Vec<SparseMatrix>,
    ) -> Result<Self, MeasuringError> {
        if !same(comodule.coalgebra(), &measuring.coalgebra) {
            return Err(MeasuringError::Mismatch("comodule is over a different coalgebra".into()));
        }
        if !same(source.algebra(), &measuring.source) {
            return Err(MeasuringError::Mismatch("source module is over a different algebra".into()));
        }
        if !same(target.algebra(), &measuring.target) {
            return Err(MeasuringError::Mismatch("target module is over a different algebra".into()));
        }
        if operators.len() != comodule.dim() {
            return Err(MeasuringError::DimensionMismatch {
                what: "one operator per comodule basis element",
                expected: comodule.dim(),
                actual: operators.len(),
            });
        }
        for op in &operators {
            if op.shape() != (target.dim(), source.dim()) {
                return Err(MeasuringError::DimensionMismatch {
                    what: "operator shape",
                    expected: target.dim() * source.dim(),
                    actual: op.nrows() * op.ncols(),
                });
            }
        }
        Ok(ComoduleMeasuring { measuring, comodule, source, target, operators })
    }

    /// `D = C`, `M = A`, `N = B`, `φ = ψ`.
    pub fn regular(measuring: Arc<Measuring>) -> Self {
        let comodule = Arc::new(FiniteComodule::regular(measuring.coalgebra.clone()));
        let source = Arc::new(FiniteModule::regular(measuring.source.clone()));
        let target = Arc::new(FiniteModule::regular(measuring.target.clone()));
        let operators = measuring.operators.clone();
        ComoduleMeasuring { measuring, comodule, source, target, operators }
    }

    pub fn measuring(&self) -> &Arc<Measuring> {
        &self.measuring
    }

    pub fn comodule(&self) -> &Arc<FiniteComodule> {
        &self.comodule
    }

    pub fn source(&self) -> &Arc<FiniteModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteModule> {
        &self.target
    }

    pub fn basis_operator(&self, t: usize) -> &SparseMatrix {
        &self.operators[t]
    }

    pub fn table(&self) -> Vec<(usize, usize, usize, Scalar)> {
        table_of(&self.operators)
    }

    /// Matrix of `φ(t)`.
    pub fn operator(&self, t: &[Scalar]) -> Result<SparseMatrix, MeasuringError> {
        combine_operators(&self.operators, t, self.target.dim(), self.source.dim())
    }

    /// `φ(t)(a·m) = Σ ψ(t_C)(a) · φ(t_D)(m)` on every basis triple `(t, a, m)`,
    /// with `δ(t) = Σ t_C ⊗ t_D`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new("comodule measuring");
        let algebra = &self.measuring.source;
        let psi_images: Vec<Vec<SparseVec>> = self.measuring.operators.iter().map(|op| op.columns()).collect();
        let phi_images: Vec<Vec<SparseVec>> = self.operators.iter().map(|op| op.columns()).collect();
        let mut violation = None;
        'outer: for t in 0..self.comodule.dim() {
            for a in 0..algebra.dim() {
                for m in 0..self.source.dim() {
                    let lhs = self.operators[t].mul_vec(self.source.basis_action(a, m));
                    let mut rhs = Vec::new();
                    for (i, u, c) in self.comodule.coaction_of(t) {
                        let p = self.target.act(&psi_images[*i][a], &phi_images[*u][m]);
                        rhs = vector::add_scaled(&rhs, c, &p);
                    }
                    if lhs != rhs {
                        violation = Some((vec![t, a, m], format!(
                            "φ({})({}·{}) ≠ Σ ψ(t_C)({})·φ(t_D)({})",
                            self.comodule.basis()[t],
                            algebra.basis()[a],
                            self.source.basis()[m],
                            algebra.basis()[a],
                            self.source.basis()[m]
                        )));
                        break 'outer;
                    }
                }
            }
        }
        report.record("comodule measuring law", violation);
        report
    }

    /// `L^φ(t)[k]: M ⊗ A^{⊗k} → N ⊗ B^{⊗k}`,
    /// `m ⊗ a_1 ⊗ … ⊗ a_k ↦ Σ φ(t_D)(m) ⊗ ψ(t_1)(a_1) ⊗ … ⊗ ψ(t_k)(a_k)`
    /// where `Σ t_1 ⊗ … ⊗ t_k ⊗ t_D` is the `k`-fold iterated coaction of `t`.
    ///
    /// Tensor bases are ordered lexicographically with the module leg slowest.
    pub fn multilinear_operator(&self, t: &[Scalar], k: usize) -> Result<SparseMatrix, MeasuringError> {
        if t.len() != self.comodule.dim() {
            return Err(MeasuringError::DimensionMismatch {
                what: "comodule element",
                expected: self.comodule.dim(),
                actual: t.len(),
            });
        }
        let field = self.measuring.coalgebra.field();
        let rows = self.target.dim() * self.measuring.target.dim().pow(k as u32);
        let cols = self.source.dim() * self.measuring.source.dim().pow(k as u32);
        let coaction = self.comodule.iterated_coaction(k);
        let terms = coaction.apply(&vector::from_dense(t));
        let mut total = SparseMatrix::zeros(field, rows, cols);
        for (idx, c) in terms {
            let (module_leg, algebra_legs) = idx.split_last().expect("comodule leg present");
            let mut op = self.operators[*module_leg].clone();
            for leg in algebra_legs {
                op = op.kron(&self.measuring.operators[*leg]);
            }
            total = total.add_scaled(&c, &op).expect("shapes agree");
        }
        Ok(total)
    }
}

fn combine_operators(
    operators: &[SparseMatrix],
    coords: &[Scalar],
    rows: usize,
    cols: usize,
) -> Result<SparseMatrix, MeasuringError> {
    if coords.len() != operators.len() {
        return Err(MeasuringError::DimensionMismatch {
            what: "element coordinates",
            expected: operators.len(),
            actual: coords.len(),
        });
    }
    let field = operators.first().map(|o| o.field()).unwrap_or_else(|| coords[0].field());
    let mut out = SparseMatrix::zeros(field, rows, cols);
    for (op, c) in operators.iter().zip(coords) {
        if !c.is_zero() {
            out = out.add_scaled(c, op).expect("operators share a shape");
        }
    }
    Ok(out)
}

fn table_of(operators: &[SparseMatrix]) -> Vec<(usize, usize, usize, Scalar)> {
    let mut out: Vec<_> = operators
        .iter()
        .enumerate()
        .flat_map(|(s, op)| op.entries().iter().map(move |(b, a, c)| (s, *a, *b, c.clone())))
        .collect();
    out.sort_by_key(|(s, a, b, _)| (*s, *a, *b));
    out
}
