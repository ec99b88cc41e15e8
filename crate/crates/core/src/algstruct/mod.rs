//! Structure-constant models of commutative algebras, their modules,
//! cocommutative coalgebras and their comodules.
//!
//! Basis names exist for I/O only; everything here works on indices.

mod algebra;
mod coalgebra;
mod comodule;
mod module;
mod tensor;

use thiserror::Error;

pub use algebra::FiniteAlgebra;
pub use coalgebra::FiniteCoalgebra;
pub use comodule::FiniteComodule;
pub use module::FiniteModule;
pub use tensor::{flatten, Bracketing, MultiLegMap};


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{what} index {index:?} out of range for dimension {dim}")]
    IndexOutOfRange { what: &'static str, index: Vec<usize>, dim: usize },
    #[error("duplicate {what} entry at {index:?}")]
    DuplicateEntry { what: &'static str, index: Vec<usize> },
    #[error("duplicate basis name `{0}`")]
    DuplicateBasisName(String),
    #[error("structure constant lives in a different field")]
    FieldMismatch,
}

fn check_basis(basis: &[String]) -> Result<(), StructureError> {
    let mut seen = std::collections::BTreeSet::new();
    for name in basis {
        if !seen.insert(name) {
            return Err(StructureError::DuplicateBasisName(name.clone()));
        }
    }
    Ok(())
}
