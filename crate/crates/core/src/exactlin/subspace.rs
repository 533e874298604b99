use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::echelon::{Echelon, Insert};
use super::sparse::{combine, SparseVec};
use super::Matrix;

/// A linear subspace of `K^ambient`, stored as its reduced row echelon basis.
///
/// Because the basis is reduced, the coordinates of a member vector are
/// just its entries at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(SparseVec::unit).collect(), pivots: (0..ambient).collect() }
    }

    /// Span of the given vectors.
    pub fn span<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            ech.insert(v);
        }
        Self::from_echelon(&ech)
    }

    pub fn from_echelon(ech: &Echelon) -> Self {
        let basis = ech.rref_rows();
        let pivots = ech.pivots();
        Subspace { ambient: ech.dim(), basis, pivots }
    }

    /// Span of the rows of a dense matrix.
    pub fn row_space(m: &Matrix) -> Self {
        let rows: Vec<SparseVec> = (0..m.rows()).map(|i| m.row_sparse(i)).collect();
        Self::span(m.cols(), &rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as a dense matrix whose rows are the RREF basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_sparse_rows(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let back = combine(coords.iter().zip(&self.basis));
        if &back == v {
            Some(coords)
        } else {
            None
        }
    }

    /// Coordinates as a sparse vector (index = basis position).
    pub fn coordinates_sparse(&self, v: &SparseVec) -> Option<SparseVec> {
        self.coordinates(v).map(|c| SparseVec::from_dense(&c))
    }

    /// `Σ coords[r]·basis[r]`.
    pub fn vector(&self, coords: &SparseVec) -> SparseVec {
        combine(coords.iter().map(|(r, c)| (c, &self.basis[*r])))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        if v.support_end() > self.ambient {
            return false;
        }
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(self.ambient, self.basis.iter().chain(&other.basis)))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // Relations Σ αᵢuᵢ + Σ βⱼvⱼ = 0 give Σ αᵢuᵢ in the intersection.
        let mut ech = Echelon::with_free_pivots(self.ambient);
        for (i, u) in self.basis.iter().enumerate() {
            ech.insert_tagged(u, &SparseVec::unit(i));
        }
        let k = self.basis.len();
        let mut common = Vec::new();
        for (j, v) in other.basis.iter().enumerate() {
            if let Insert::Dependent(rel) = ech.insert_tagged(v, &SparseVec::unit(k + j)) {
                let alpha = rel.window(0, k);
                common.push(self.vector(&alpha));
            }
        }
        Ok(Subspace::span(self.ambient, &common))
    }

    /// Dimension of `self / small`; errors unless `small ⊆ self`.
    pub fn quotient_dim(&self, small: &Subspace) -> Result<usize> {
        self.check_ambient(small)?;
        if !self.contains_subspace(small) {
            return Err(Error::Containment(format!(
                "subspace of dim {} is not contained in subspace of dim {}",
                small.dim(),
                self.dim()
            )));
        }
        Ok(self.dim() - small.dim())
    }
}

/// Lattice data for a pair of subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub intersection: Subspace,
    pub sum: Subspace,
    pub contains: bool,
}

/// Intersection, sum, and whether `u ⊇ v`.
pub fn subspace_ops(u: &Subspace, v: &Subspace) -> Result<SubspaceOps> {
    Ok(SubspaceOps { intersection: u.intersection(v)?, sum: u.sum(v)?, contains: u.contains_subspace(v) })
}
