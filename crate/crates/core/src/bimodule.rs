//! Coefficient bimodules given by explicit action matrices.
//!
//! A bimodule over `(A, B)` stores `L(eᵢ)` for every basis element of `A`
//! and `R(eⱼ)` for every basis element of `B`, acting on column vectors:
//! `eᵢ·x = L(eᵢ)x` and `x·eⱼ = R(eⱼ)x`.

use crate::algebra::{Algebra, DirectSum, SubalgebraSpec};
use crate::error::{Error, Result};
use crate::exactlin::{nullspace_of_rows, LinearMap, Matrix, SparseVec, Subspace};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    /// Builds from action matrices, checking only their shapes.
    pub fn new(dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self> {
        for (side, mats) in [("left", &left), ("right", &right)] {
            if let Some(i) = mats.iter().position(|m| m.rows() != dim || m.cols() != dim) {
                return Err(Error::InvalidBimodule(format!("{side} action {i} is not {dim}x{dim}")));
            }
        }
        Ok(Bimodule { dim, left, right })
    }

    /// The zero module of dimension `dim` over algebras of dimensions `ld`, `rd`.
    pub fn zero(ld: usize, rd: usize, dim: usize) -> Self {
        Bimodule { dim, left: vec![Matrix::zeros(dim, dim); ld], right: vec![Matrix::zeros(dim, dim); rd] }
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(a: &Algebra) -> Self {
        let d = a.dim();
        let left = (0..d).map(|i| Matrix::from_linear_map(&a.left_mult(&SparseVec::unit(i)))).collect();
        let right = (0..d).map(|i| Matrix::from_linear_map(&a.right_mult(&SparseVec::unit(i)))).collect();
        Bimodule { dim: d, left, right }
    }

    /// The field as a bimodule over itself.
    pub fn regular_scalars(field: Field) -> Self {
        Self::regular(&Algebra::scalars(field))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the algebra acting on the left.
    pub fn left_dim(&self) -> usize {
        self.left.len()
    }

    /// Dimension of the algebra acting on the right.
    pub fn right_dim(&self) -> usize {
        self.right.len()
    }

    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right
    }

    fn combine(mats: &[Matrix], dim: usize, x: &SparseVec) -> Matrix {
        let mut out = Matrix::zeros(dim, dim);
        for (i, c) in x.iter() {
            out = out.add(&mats[*i].scale(c));
        }
        out
    }

    /// `L(x)` for an arbitrary element `x` of the left algebra.
    pub fn left_action_of(&self, x: &SparseVec) -> Matrix {
        Self::combine(&self.left, self.dim, x)
    }

    /// `R(x)` for an arbitrary element `x` of the right algebra.
    pub fn right_action_of(&self, x: &SparseVec) -> Matrix {
        Self::combine(&self.right, self.dim, x)
    }

    /// Left action of `α·e₊ + a`, with `e₊` acting as the identity.
    pub fn left_action_unitized(&self, alpha: &Scalar, a: &SparseVec) -> Matrix {
        self.left_action_of(a).add(&Matrix::identity(self.dim).scale(alpha))
    }

    /// Right action of `α·e₊ + a`, with `e₊` acting as the identity.
    pub fn right_action_unitized(&self, alpha: &Scalar, a: &SparseVec) -> Matrix {
        self.right_action_of(a).add(&Matrix::identity(self.dim).scale(alpha))
    }

    /// Sparse forms of the actions, for cochain assembly.
    pub fn left_maps(&self) -> Vec<LinearMap> {
        self.left.iter().map(Matrix::to_linear_map).collect()
    }

    pub fn right_maps(&self) -> Vec<LinearMap> {
        self.right.iter().map(Matrix::to_linear_map).collect()
    }

    /// Checks the module axioms over `(la, ra)`.
    pub fn validate_over(&self, la: &Algebra, ra: &Algebra) -> Result<()> {
        if self.left.len() != la.dim() || self.right.len() != ra.dim() {
            return Err(Error::InvalidBimodule(format!(
                "actions given for algebras of dimensions ({}, {}), expected ({}, {})",
                self.left.len(),
                self.right.len(),
                la.dim(),
                ra.dim()
            )));
        }
        for i in 0..la.dim() {
            for j in 0..la.dim() {
                if self.left[i].mul(&self.left[j]) != self.left_action_of(la.product(i, j)) {
                    return Err(Error::InvalidBimodule(format!("left module axiom fails for (e{i}, e{j})")));
                }
            }
        }
        for i in 0..ra.dim() {
            for j in 0..ra.dim() {
                if self.right[j].mul(&self.right[i]) != self.right_action_of(ra.product(i, j)) {
                    return Err(Error::InvalidBimodule(format!("right module axiom fails for (e{i}, e{j})")));
                }
            }
        }
        for (i, l) in self.left.iter().enumerate() {
            for (j, r) in self.right.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::InvalidBimodule(format!("left e{i} and right e{j} do not commute")));
                }
            }
        }
        Ok(())
    }

    /// Checks the module axioms over `(a, a)`.
    pub fn validate(&self, a: &Algebra) -> Result<()> {
        self.validate_over(a, a)
    }

    /// Whether the units of `la` and `ra` act as the identity.
    pub fn is_unital_over(&self, la: &Algebra, ra: &Algebra) -> bool {
        match (la.unit(), ra.unit()) {
            (Some(u), Some(v)) => {
                self.left_action_of(u).is_identity() && self.right_action_of(v).is_identity()
            }
            _ => false,
        }
    }

    /// The coordinate dual `M*`: `(a·f)(x) = f(x·a)`, `(f·a)(x) = f(a·x)`.
    pub fn dual(&self) -> Bimodule {
        Bimodule {
            dim: self.dim,
            left: self.right.iter().map(Matrix::transpose).collect(),
            right: self.left.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Restriction to an invariant subspace, in the subspace's RREF basis.
    pub fn submodule(&self, sub: &Subspace) -> Result<Bimodule> {
        if sub.ambient_dim() != self.dim {
            return Err(Error::Dimension(format!("subspace of {} in a module of dim {}", sub.ambient_dim(), self.dim)));
        }
        let restrict = |m: &Matrix| -> Result<Matrix> {
            let cols = sub
                .basis()
                .iter()
                .map(|b| {
                    let image = SparseVec::from_dense(&m.mul_vec(&b.to_dense(self.dim)));
                    sub.coordinates_sparse(&image)
                        .ok_or_else(|| Error::InvalidBimodule("subspace is not invariant".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_sparse_columns(sub.dim(), &cols))
        };
        Ok(Bimodule {
            dim: sub.dim(),
            left: self.left.iter().map(restrict).collect::<Result<_>>()?,
            right: self.right.iter().map(restrict).collect::<Result<_>>()?,
        })
    }

    /// Pulls both actions back along algebra maps `theta_l : A → A'`,
    /// `theta_r : B → B'` given as matrices.
    pub fn pullback(&self, theta_l: &Matrix, theta_r: &Matrix) -> Result<Bimodule> {
        if theta_l.rows() != self.left.len() || theta_r.rows() != self.right.len() {
            return Err(Error::Dimension("pullback map has the wrong target dimension".into()));
        }
        let left = (0..theta_l.cols()).map(|j| self.left_action_of(&theta_l.column_sparse(j))).collect();
        let right = (0..theta_r.cols()).map(|j| self.right_action_of(&theta_r.column_sparse(j))).collect();
        Ok(Bimodule { dim: self.dim, left, right })
    }
}

/// `A*` with `(a·f)(x) = f(xa)` and `(f·a)(x) = f(ax)`.
pub fn dual_bimodule(a: &Algebra) -> Bimodule {
    Bimodule::regular(a).dual()
}

/// `I*` as an `A`-bimodule, in the dual of the ideal's RREF basis.
pub fn ideal_dual(a: &Algebra, ideal: &crate::algebra::IdealSpec) -> Result<Bimodule> {
    Ok(Bimodule::regular(a).submodule(ideal.space())?.dual())
}

/// An `A/I`-bimodule regarded as an `A`-bimodule through `θ`.
pub fn inflate(m: &Bimodule, theta: &Matrix) -> Result<Bimodule> {
    m.pullback(theta, theta)
}

/// The corner `eᵢMeᵢ` of a bimodule over a direct sum.
#[derive(Clone, Debug)]
pub struct Corner {
    /// The corner as an `Aᵢ`-bimodule.
    pub module: Bimodule,
    /// Columns: corner basis vectors inside `M`.
    pub embedding: Matrix,
    /// `x ↦ coordinates of eᵢ·x·eᵢ`.
    pub projection: Matrix,
}

/// `eᵢMeᵢ` with the actions of `Aᵢ` restricted from `A`.
pub fn corner(m: &Bimodule, ds: &DirectSum, i: usize) -> Result<Corner> {
    let e = ds
        .idempotents
        .get(i)
        .ok_or_else(|| Error::Precondition(format!("direct sum has no component {i}")))?;
    let a = &ds.algebra;
    if &a.mul(e, e) != e {
        return Err(Error::Precondition("corner requires an idempotent".into()));
    }
    let p = m.left_action_of(e).mul(&m.right_action_of(e));
    let image = Subspace::span(m.dim(), &(0..m.dim()).map(|j| p.column_sparse(j)).collect::<Vec<_>>());
    let full = m.pullback(&ds.inclusion(i), &ds.inclusion(i))?;
    let module = full.submodule(&image)?;
    let embedding = image.basis_matrix().transpose();
    let cols = (0..m.dim())
        .map(|j| image.coordinates_sparse(&p.column_sparse(j)).expect("image of the projection"))
        .collect::<Vec<_>>();
    let projection = Matrix::from_sparse_columns(image.dim(), &cols);
    Ok(Corner { module, embedding, projection })
}

/// `Cen_S X = {x : s·x = x·s for all s ∈ S}`.
pub fn center_s(x: &Bimodule, s: &SubalgebraSpec) -> Result<Subspace> {
    if s.parent_dim() != x.left_dim() || s.parent_dim() != x.right_dim() {
        return Err(Error::Dimension("subalgebra and module live over different algebras".into()));
    }
    let mut rows = Vec::new();
    for (alpha, a) in s.elements() {
        let diff = x.left_action_unitized(&alpha, &a).sub(&x.right_action_unitized(&alpha, &a));
        rows.extend((0..x.dim()).map(|r| diff.row_sparse(r)));
    }
    Ok(nullspace_of_rows(x.dim(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_sum;

    const Q: Field = Field::Rationals;

    #[test]
    fn duals_satisfy_axioms() {
        for a in [Algebra::scalars(Q), Algebra::matrix(2, Q), Algebra::upper_triangular(2, Q), Algebra::dual_numbers(Q)] {
            let m = dual_bimodule(&a);
            m.validate(&a).unwrap();
            assert!(m.is_unital_over(&a, &a));
        }
    }

    #[test]
    fn dual_of_scalars_is_trivial() {
        let m = dual_bimodule(&Algebra::scalars(Q));
        assert_eq!(m.dim(), 1);
        assert!(m.left(0).is_identity() && m.right(0).is_identity());
    }

    #[test]
    fn dual_action_convention() {
        // (e11·f)(e12) = f(e12·e11) = 0 and (e11·f)(e21) = f(e21·e11) = f(e21)
        let m = dual_bimodule(&Algebra::matrix(2, Q));
        let l = m.left(0);
        for k in 0..4 {
            assert!(l[(1, k)].is_zero());
        }
        assert!(l[(2, 2)].is_one());
    }

    #[test]
    fn zero_product_dual_is_still_a_bimodule() {
        let a = Algebra::zero_product(2, Q);
        dual_bimodule(&a).validate(&a).unwrap();
    }

    #[test]
    fn broken_module_is_rejected() {
        let a = Algebra::scalars(Q);
        let m = Bimodule::new(1, vec![Matrix::from_ints(&[&[2]])], vec![Matrix::identity(1)]).unwrap();
        assert!(m.validate(&a).is_err());
    }

    #[test]
    fn corners() {
        let ds = direct_sum(&[Algebra::scalars(Q), Algebra::scalars(Q)]).unwrap();
        let m = dual_bimodule(&ds.algebra);
        let c = corner(&m, &ds, 0).unwrap();
        assert_eq!(c.module.dim(), 1);
        c.module.validate(&ds.parts[0]).unwrap();

        let ds = direct_sum(&[Algebra::matrix(2, Q), Algebra::scalars(Q)]).unwrap();
        let m = dual_bimodule(&ds.algebra);
        let c0 = corner(&m, &ds, 0).unwrap();
        let c1 = corner(&m, &ds, 1).unwrap();
        assert_eq!(c0.module.dim() + c1.module.dim(), m.dim());
        assert_eq!(c0.module, dual_bimodule(&ds.parts[0]));
        assert!(c0.projection.mul(&c0.embedding).is_identity());
    }

    #[test]
    fn inflation_kills_the_ideal() {
        use crate::algebra::{quotient, IdealSpec};
        let ds = direct_sum(&[Algebra::scalars(Q), Algebra::scalars(Q)]).unwrap();
        let ideal = IdealSpec::new(&ds.algebra, vec![SparseVec::unit(0)]).unwrap();
        let q = quotient(&ds.algebra, &ideal).unwrap();
        let m = inflate(&dual_bimodule(&q.algebra), &q.projection).unwrap();
        m.validate(&ds.algebra).unwrap();
        assert!(m.left(0).is_zero() && m.right(0).is_zero());

        let a = Algebra::matrix(2, Q);
        let id = inflate(&dual_bimodule(&a), &Matrix::identity(4)).unwrap();
        assert_eq!(id, dual_bimodule(&a));
    }

    #[test]
    fn centers() {
        let m2 = Algebra::matrix(2, Q);
        let x = dual_bimodule(&m2);
        assert_eq!(center_s(&x, &SubalgebraSpec::unit_scalars(&m2)).unwrap().dim(), 4);
        assert_eq!(center_s(&x, &SubalgebraSpec::whole(&m2)).unwrap().dim(), 1);

        let ut = Algebra::upper_triangular(2, Q);
        let diag = SubalgebraSpec::new(&ut, false, vec![SparseVec::unit(0), SparseVec::unit(2)]).unwrap();
        assert_eq!(center_s(&dual_bimodule(&ut), &diag).unwrap().dim(), 2);
    }

    #[test]
    fn ideal_dual_of_whole_algebra() {
        use crate::algebra::IdealSpec;
        let a = Algebra::matrix(2, Q);
        let all = IdealSpec::new(&a, (0..4).map(SparseVec::unit).collect()).unwrap();
        assert_eq!(ideal_dual(&a, &all).unwrap(), dual_bimodule(&a));
    }
}
