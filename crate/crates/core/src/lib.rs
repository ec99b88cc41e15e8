//! Exact higher-order Hochschild homology of finite-dimensional commutative
//! algebras over truncated pointed simplicial sets, and the maps on it induced
//! by coalgebra and comodule measurings.

pub mod algstruct;
pub mod exactlin;
pub mod hochschild;
pub mod measuring;
pub mod report;
pub mod simplicial;

pub use algstruct::{FiniteAlgebra, FiniteCoalgebra, FiniteComodule, FiniteModule, StructureError};
pub use exactlin::{Field, HomologyPresentation, LinAlgError, Scalar, SparseMatrix};
pub use hochschild::{ChainComplex, ChainMap, HochschildError, LodayModule, SquareReport};
pub use measuring::{ComoduleMeasuring, Measuring, MeasuringError};
pub use report::{Check, ValidationReport};
pub use simplicial::{PointedMap, PointedSet, PointedSimplicialSet, SimplicialError, SimplicialMap};
