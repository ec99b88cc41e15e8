//! Higher-order Hochschild homology `HH^Y_•(A, M)`.
//!
//! The Loday functor `L(A, M)` sends a finite pointed set with `k`
//! non-basepoint elements to `M ⊗ A^{⊗k}` and a pointed map to the map that
//! multiplies tensor factors along its fibers. Composing with a pointed
//! simplicial set `Y` gives a simplicial vector space whose alternating face
//! sum is the chain complex computed here. Measurings act degreewise through
//! iterated coactions, and simplicial maps act through `L` applied levelwise.

mod chainmap;
mod complex;
mod loday;
mod square;

use thiserror::Error;

use crate::exactlin::LinAlgError;
use crate::measuring::MeasuringError;

pub use chainmap::{
    homology_map, homology_map_with, measuring_chain_map, measuring_chain_map_unchecked,
    simplicial_chain_map, simplicial_component, ChainMap,
};
pub use complex::{homology, ChainComplex, ComplexMetadata};
pub use loday::{loday_map, loday_map_column, loday_space, LodayModule, LodaySpace};
pub use square::{verify_theorem_square, ChainSquare, Difference, HomologySquare, SquareReport, SquareVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("∂∘∂ ≠ 0 at degree {degree}")]
    SquareNotZero { degree: usize },
    #[error("degree {requested} needs truncation at least {}, have {truncation}", requested + 1)]
    TruncationTooShallow { requested: usize, truncation: usize },
    #[error("not a chain map in degree {degree}")]
    NotChainMap { degree: usize },
    #[error("degenerate chains are not sent to degenerate chains in degree {degree}")]
    DegeneracyNotPreserved { degree: usize },
    #[error("incompatible inputs: {0}")]
    Incompatible(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Measuring(#[from] MeasuringError),
}
