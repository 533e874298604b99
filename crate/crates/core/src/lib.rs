//! Exact computation of Hochschild, relative and cyclic cohomology of
//! finite-dimensional associative algebras given by structure constants.

pub mod algebra;
pub mod bimodule;
pub mod cyclic;
pub mod error;
pub mod exactlin;
pub mod hochschild;
pub mod io;
pub mod scalar;
pub mod theoremlab;

pub use algebra::{Algebra, DirectSum, IdealSpec, SubalgebraSpec};
pub use bimodule::Bimodule;
pub use error::{Error, Result};
pub use exactlin::{LinearMap, Matrix, SparseVec, Subspace};
pub use hochschild::Limits;
pub use theoremlab::{Status, TheoremCase, Verdict};
pub use scalar::{Field, Rational, Scalar};
