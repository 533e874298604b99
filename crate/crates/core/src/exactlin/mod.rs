//! Exact linear algebra over `Q` and `Q(i)`.
//!
//! Ranks, nullspaces and subspace arithmetic are computed by sparse
//! Gaussian elimination on exact scalars. Subspaces are always stored in
//! reduced row echelon form, which makes every choice of basis and of
//! cohomology representative deterministic.

mod complex;
mod echelon;
mod matrix;
mod sparse;
mod subspace;

pub use complex::{
    check_chain_map, exactness_defect, induced_map, induced_map_on_cohomology, Cohomology, ComplexSes,
    LongExactSequence, SubComplex,
};
pub use echelon::{kernel_of_images, rank_of, solve_affine, Echelon, Insert, Solver};
pub use matrix::{nullspace_of_rows, Matrix};
pub use sparse::{combine, LinearMap, SparseVec};
pub use subspace::{subspace_ops, Subspace, SubspaceOps};

use crate::error::Result;

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    m.rref()
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn nullspace(m: &Matrix) -> Subspace {
    m.nullspace()
}

/// `dim(big) − dim(small)`, failing unless `small ⊆ big`.
pub fn quotient_dim(big: &Subspace, small: &Subspace) -> Result<usize> {
    big.quotient_dim(small)
}

/// Snake-lemma connecting homomorphism `Hⁿ(C″) → Hⁿ⁺¹(C′)`.
pub fn connecting_map(ses: &ComplexSes, n: usize) -> Result<Matrix> {
    ses.connecting_map(n)
}
