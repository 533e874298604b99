//! Finite-dimensional associative algebras given by structure constants,
//! and the constructions applied to them: unitization, direct sums,
//! triangular matrix algebras, quotients, subalgebras and ideals.

use std::fmt;

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::exactlin::{nullspace_of_rows, solve_affine, LinearMap, Matrix, SparseVec, Subspace};
use crate::scalar::{Field, Scalar};

/// An associative algebra with basis `e₀, …, e_{d−1}`.
///
/// `products[i·d + j]` holds the coordinates of `eᵢ·eⱼ`. The unit, when
/// one exists, is found at construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    products: Vec<SparseVec>,
    unit: Option<SparseVec>,
    labels: Option<Vec<String>>,
}

/// Where a structure-constant table first breaks an algebra law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `((eᵢeⱼ)e_k)_m ≠ (eᵢ(eⱼe_k))_m`.
    Associativity { i: usize, j: usize, k: usize, m: usize },
    /// `u·eⱼ ≠ eⱼ` or `eⱼ·u ≠ eⱼ` for the claimed unit `u`.
    Unit { j: usize, side: &'static str },
    /// A structure constant lies outside the declared field.
    Field { i: usize, j: usize, k: usize },
    /// Malformed table shape.
    Shape(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k, m } => {
                write!(f, "associativity fails for (e{i}·e{j})·e{k} vs e{i}·(e{j}·e{k}) at coordinate {m}")
            }
            Violation::Unit { j, side } => write!(f, "unit fails on the {side} of e{j}"),
            Violation::Field { i, j, k } => write!(f, "structure constant c[{i}][{j}][{k}] is not in the field"),
            Violation::Shape(s) => write!(f, "{s}"),
        }
    }
}

/// Result of [`validate_structure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    pub associative: bool,
    pub unital: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

fn mul_with(products: &[SparseVec], dim: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let mut pairs = Vec::new();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            let ab = a * b;
            pairs.extend(products[i * dim + j].iter().map(|(k, c)| (*k, &ab * c)));
        }
    }
    SparseVec::from_pairs(pairs)
}

/// Checks associativity, the field of definition and (if given) the unit
/// laws of a raw structure-constant table `c[i][j][k]`.
pub fn validate_structure(
    field: Field,
    consts: &[Vec<Vec<Scalar>>],
    unit: Option<&[Scalar]>,
) -> ValidationReport {
    let dim = consts.len();
    let mut report = ValidationReport { dim, associative: false, unital: false, violation: None };
    for (i, row) in consts.iter().enumerate() {
        if row.len() != dim || row.iter().any(|c| c.len() != dim) {
            report.violation = Some(Violation::Shape(format!("structure constants row {i} is not {dim}x{dim}")));
            return report;
        }
        for (j, c) in row.iter().enumerate() {
            if let Some(k) = c.iter().position(|x| !field.contains(x)) {
                report.violation = Some(Violation::Field { i, j, k });
                return report;
            }
        }
    }
    let products: Vec<SparseVec> =
        consts.iter().flat_map(|row| row.iter().map(|c| SparseVec::from_dense(c))).collect();
    if let Some(v) = first_associativity_violation(dim, &products) {
        report.violation = Some(v);
        return report;
    }
    report.associative = true;
    if let Some(u) = unit {
        if u.len() != dim {
            report.violation = Some(Violation::Shape(format!("unit has length {}, expected {dim}", u.len())));
            return report;
        }
        let u = SparseVec::from_dense(u);
        if let Some(v) = unit_violation(dim, &products, &u) {
            report.violation = Some(v);
            return report;
        }
        report.unital = true;
    } else {
        report.unital = find_unit(dim, &products).is_some();
    }
    report
}

fn first_associativity_violation(dim: usize, products: &[SparseVec]) -> Option<Violation> {
    for i in 0..dim {
        for j in 0..dim {
            let ij = &products[i * dim + j];
            for k in 0..dim {
                let left = mul_with(products, dim, ij, &SparseVec::unit(k));
                let right = mul_with(products, dim, &SparseVec::unit(i), &products[j * dim + k]);
                if left != right {
                    let diff = left.sub(&right);
                    let m = diff.leading().expect("nonzero difference").0;
                    return Some(Violation::Associativity { i, j, k, m });
                }
            }
        }
    }
    None
}

fn unit_violation(dim: usize, products: &[SparseVec], u: &SparseVec) -> Option<Violation> {
    for j in 0..dim {
        let e = SparseVec::unit(j);
        if mul_with(products, dim, u, &e) != e {
            return Some(Violation::Unit { j, side: "left" });
        }
        if mul_with(products, dim, &e, u) != e {
            return Some(Violation::Unit { j, side: "right" });
        }
    }
    None
}

/// Solves `u·eⱼ = eⱼ = eⱼ·u` for all `j`.
fn find_unit(dim: usize, products: &[SparseVec]) -> Option<SparseVec> {
    if dim == 0 {
        return None;
    }
    // Unknown u = Σ uᵢeᵢ. Equation for (j, m): Σᵢ uᵢ c[i][j][m] = δⱼₘ (and the mirror).
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..dim {
        for m in 0..dim {
            let target = if j == m { Scalar::ONE } else { Scalar::ZERO };
            let left: SparseVec = (0..dim).map(|i| (i, products[i * dim + j].get(m))).collect();
            let right: SparseVec = (0..dim).map(|i| (i, products[j * dim + i].get(m))).collect();
            rows.push(left);
            rhs.push(target.clone());
            rows.push(right);
            rhs.push(target);
        }
    }
    solve_affine(dim, &rows, &rhs)
}

impl Algebra {
    /// Builds and validates an algebra from `c[i][j][k]`. A unit is
    /// detected automatically when none is given.
    pub fn new(
        field: Field,
        consts: Vec<Vec<Vec<Scalar>>>,
        unit: Option<Vec<Scalar>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let report = validate_structure(field, &consts, unit.as_deref());
        if let Some(v) = report.violation {
            return Err(Error::InvalidAlgebra(v.to_string()));
        }
        let dim = consts.len();
        let products = consts.iter().flat_map(|row| row.iter().map(|c| SparseVec::from_dense(c))).collect();
        Self::from_products(field, dim, products, unit.map(|u| SparseVec::from_dense(&u)), labels)
    }

    /// Builds from sparse products `eᵢeⱼ` (row-major), validating.
    pub fn from_products(
        field: Field,
        dim: usize,
        products: Vec<SparseVec>,
        unit: Option<SparseVec>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if products.len() != dim * dim {
            return Err(Error::InvalidAlgebra(format!("expected {} products, got {}", dim * dim, products.len())));
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(Error::InvalidAlgebra(format!("{} labels for dimension {dim}", l.len())));
            }
        }
        if let Some(v) = first_associativity_violation(dim, &products) {
            return Err(Error::InvalidAlgebra(v.to_string()));
        }
        let unit = match unit {
            Some(u) => {
                if let Some(v) = unit_violation(dim, &products, &u) {
                    return Err(Error::InvalidAlgebra(v.to_string()));
                }
                Some(u)
            }
            None => find_unit(dim, &products),
        };
        Ok(Algebra { field, dim, products, unit, labels })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&SparseVec> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }

    /// Coordinates of `eᵢ·eⱼ`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim + j]
    }

    pub fn struct_const(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.product(i, j).get(k)
    }

    /// The full table `c[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.product(i, j).to_dense(self.dim)).collect()).collect()
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        mul_with(&self.products, self.dim, x, y)
    }

    /// `y ↦ x·y`.
    pub fn left_mult(&self, x: &SparseVec) -> LinearMap {
        LinearMap::from_columns(self.dim, (0..self.dim).map(|j| self.mul(x, &SparseVec::unit(j))).collect())
    }

    /// `y ↦ y·x`.
    pub fn right_mult(&self, x: &SparseVec) -> LinearMap {
        LinearMap::from_columns(self.dim, (0..self.dim).map(|j| self.mul(&SparseVec::unit(j), x)).collect())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Associativity and unit laws. Always valid for a constructed value;
    /// use [`validate_structure`] for raw tables.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport { dim: self.dim, associative: true, unital: self.is_unital(), violation: None };
        if let Some(v) = first_associativity_violation(self.dim, &self.products) {
            report.associative = false;
            report.violation = Some(v);
        } else if let Some(u) = &self.unit {
            report.violation = unit_violation(self.dim, &self.products, u);
        }
        report
    }

    /// Checks that `theta` (a `target.dim × self.dim` matrix) is multiplicative.
    pub fn is_homomorphism_to(&self, target: &Algebra, theta: &Matrix) -> bool {
        if theta.rows() != target.dim || theta.cols() != self.dim {
            return false;
        }
        let map = theta.to_linear_map();
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let lhs = map.apply(self.product(i, j));
                let rhs = target.mul(map.column(i), map.column(j));
                lhs == rhs
            })
        })
    }

    // ---- built-in generators ----

    /// The 0-dimensional algebra.
    pub fn zero(field: Field) -> Self {
        Algebra { field, dim: 0, products: Vec::new(), unit: None, labels: Some(Vec::new()) }
    }

    /// The field itself, basis `{1}`.
    pub fn scalars(field: Field) -> Self {
        Algebra {
            field,
            dim: 1,
            products: vec![SparseVec::unit(0)],
            unit: Some(SparseVec::unit(0)),
            labels: Some(vec!["1".into()]),
        }
    }

    /// `Mₙ` with matrix units `e_{ij}` at index `i·n + j`.
    pub fn matrix(n: usize, field: Field) -> Self {
        let dim = n * n;
        let mut products = vec![SparseVec::zero(); dim * dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    products[(i * n + j) * dim + (j * n + l)] = SparseVec::unit(i * n + l);
                }
            }
        }
        let unit = (0..n).map(|i| (i * n + i, Scalar::ONE)).collect();
        let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1))).collect();
        Algebra { field, dim, products, unit: Some(unit), labels: Some(labels) }
    }

    /// `K[ε]/(ε²)` with basis `{1, ε}`.
    pub fn dual_numbers(field: Field) -> Self {
        let products = vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::zero()];
        Algebra {
            field,
            dim: 2,
            products,
            unit: Some(SparseVec::unit(0)),
            labels: Some(vec!["1".into(), "eps".into()]),
        }
    }

    /// Upper-triangular `n×n` matrices, basis `e_{ij}` (`i ≤ j`) in row order.
    pub fn upper_triangular(n: usize, field: Field) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j));
        let dim = pairs.len();
        let mut products = vec![SparseVec::zero(); dim * dim];
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                if j == k {
                    products[a * dim + b] = SparseVec::unit(index(i, l).expect("i ≤ l"));
                }
            }
        }
        let unit = (0..n).map(|i| (index(i, i).expect("diagonal"), Scalar::ONE)).collect();
        let labels = pairs.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
        Algebra { field, dim, products, unit: Some(unit), labels: Some(labels) }
    }

    /// `dim`-dimensional algebra with all products zero.
    pub fn zero_product(dim: usize, field: Field) -> Self {
        Algebra { field, dim, products: vec![SparseVec::zero(); dim * dim], unit: None, labels: None }
    }

    /// `K[x]/(xⁿ)` with basis `1, x, …, xⁿ⁻¹`.
    pub fn truncated_polynomial(n: usize, field: Field) -> Self {
        let mut products = vec![SparseVec::zero(); n * n];
        for i in 0..n {
            for j in 0..n - i {
                products[i * n + j] = SparseVec::unit(i + j);
            }
        }
        let unit = (n > 0).then(|| SparseVec::unit(0));
        let labels = (0..n).map(|i| format!("x^{i}")).collect();
        Algebra { field, dim: n, products, unit, labels: Some(labels) }
    }

    // ---- constructions ----

    /// The same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        let d = self.dim;
        if p.rows() != d || p.cols() != d {
            return Err(Error::Dimension(format!("change of basis must be {d}×{d}")));
        }
        let inv = p.inverse().ok_or_else(|| Error::Precondition("change of basis is singular".into()))?.to_linear_map();
        let cols: Vec<SparseVec> = (0..d).map(|j| p.column_sparse(j)).collect();
        let products =
            (0..d * d).map(|ij| inv.apply(&self.mul(&cols[ij / d], &cols[ij % d]))).collect();
        let unit = self.unit.as_ref().map(|u| inv.apply(u));
        Algebra::from_products(self.field, d, products, unit, None)
    }

    /// `A₊ = A ⊕ K·e₊`; `e₊` is the last basis element. A new unit is
    /// adjoined even when `A` already has one.
    pub fn unitize(&self) -> Algebra {
        let d = self.dim;
        let n = d + 1;
        let mut products = vec![SparseVec::zero(); n * n];
        for i in 0..d {
            for j in 0..d {
                products[i * n + j] = self.product(i, j).clone();
            }
            products[i * n + d] = SparseVec::unit(i);
            products[d * n + i] = SparseVec::unit(i);
        }
        products[d * n + d] = SparseVec::unit(d);
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.push("e+".into());
            l
        });
        Algebra { field: self.field, dim: n, products, unit: Some(SparseVec::unit(d)), labels }
    }

    /// Trace functionals `{f ∈ A* : f(ab) = f(ba)}`, in dual-basis coordinates.
    pub fn trace_space(&self) -> Subspace {
        let d = self.dim;
        let rows = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).filter(|(i, j)| i < j).map(|(i, j)| {
            self.product(i, j).sub(self.product(j, i))
        });
        nullspace_of_rows(d, rows.collect::<Vec<_>>())
    }

    /// A separability idempotent `u = Σ u_{ij} eᵢ⊗eⱼ` (coordinate `i·d + j`)
    /// with `m(u) = 1` and `(b⊗1)u = u(1⊗b)` for every basis `b`.
    pub fn separability_idempotent(&self) -> Result<Option<SparseVec>> {
        let unit = self
            .unit
            .as_ref()
            .ok_or_else(|| Error::Precondition("separability needs a unital algebra".into()))?;
        let d = self.dim;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        // m(u) = Σ u_ij c[i][j][k] = unit_k
        for k in 0..d {
            let row: SparseVec = (0..d)
                .flat_map(|i| (0..d).map(move |j| (i, j)))
                .map(|(i, j)| (i * d + j, self.struct_const(i, j, k)))
                .collect();
            rows.push(row);
            rhs.push(unit.get(k));
        }
        // coordinate (p, q) of (b⊗1)u − u(1⊗b): Σᵢ u_iq c[b][i][p] − Σⱼ u_pj c[j][b][q]
        for b in 0..d {
            for p in 0..d {
                for q in 0..d {
                    let mut pairs = Vec::new();
                    for i in 0..d {
                        pairs.push((i * d + q, self.struct_const(b, i, p)));
                    }
                    for j in 0..d {
                        pairs.push((p * d + j, -self.struct_const(j, b, q)));
                    }
                    rows.push(SparseVec::from_pairs(pairs));
                    rhs.push(Scalar::ZERO);
                }
            }
        }
        Ok(solve_affine(d * d, &rows, &rhs))
    }

    /// Checks the two defining identities of a separability idempotent.
    pub fn is_separability_idempotent(&self, u: &SparseVec) -> bool {
        let Some(unit) = &self.unit else { return false };
        let d = self.dim;
        let mut m = Vec::new();
        for (idx, x) in u.iter() {
            let (i, j) = (idx / d, idx % d);
            m.extend(self.product(i, j).iter().map(|(k, c)| (*k, x * c)));
        }
        if SparseVec::from_pairs(m) != *unit {
            return false;
        }
        (0..d).all(|b| {
            let mut diff = Vec::new();
            for (idx, x) in u.iter() {
                let (i, j) = (idx / d, idx % d);
                for (p, c) in self.product(b, i).iter() {
                    diff.push((p * d + j, x * c));
                }
                for (q, c) in self.product(j, b).iter() {
                    diff.push((i * d + q, -(x * c)));
                }
            }
            SparseVec::from_pairs(diff).is_zero()
        })
    }

    /// Whether a separability idempotent exists.
    pub fn is_separable(&self) -> bool {
        matches!(self.separability_idempotent(), Ok(Some(_)))
    }
}

/// Block-diagonal direct sum with its component identities.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub algebra: Algebra,
    pub parts: Vec<Algebra>,
    pub offsets: Vec<usize>,
    /// Component identities `eᵢ`, orthogonal and summing to the unit.
    pub idempotents: Vec<SparseVec>,
}

impl DirectSum {
    /// Inclusion `Aᵢ → A` as a matrix.
    pub fn inclusion(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.algebra.dim(), self.parts[i].dim());
        for k in 0..self.parts[i].dim() {
            m[(self.offsets[i] + k, k)] = Scalar::ONE;
        }
        m
    }

    /// Projection `A → Aᵢ`, `a ↦ a·eᵢ` read in `Aᵢ` coordinates.
    pub fn projection(&self, i: usize) -> Matrix {
        self.inclusion(i).transpose()
    }

    /// Span of the component identities.
    pub fn idempotent_subalgebra(&self) -> Result<SubalgebraSpec> {
        SubalgebraSpec::new(&self.algebra, false, self.idempotents.clone())
    }
}

/// `⊕ Aᵢ`; every part must be unital and over the same field.
pub fn direct_sum(parts: &[Algebra]) -> Result<DirectSum> {
    let field = parts.first().map_or(Field::Rationals, Algebra::field);
    if parts.iter().any(|p| p.field() != field) {
        return Err(Error::Precondition("direct sum parts must share a field".into()));
    }
    if let Some(i) = parts.iter().position(|p| !p.is_unital()) {
        return Err(Error::Precondition(format!("direct sum part {i} is not unital")));
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut dim = 0;
    for p in parts {
        offsets.push(dim);
        dim += p.dim();
    }
    let mut products = vec![SparseVec::zero(); dim * dim];
    let mut labels = Vec::with_capacity(dim);
    for (pi, (p, &off)) in parts.iter().zip(&offsets).enumerate() {
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                products[(off + i) * dim + off + j] = p.product(i, j).shifted(off);
            }
            labels.push(format!("{}[{}]", p.label(i), pi + 1));
        }
    }
    let idempotents: Vec<SparseVec> =
        parts.iter().zip(&offsets).map(|(p, &off)| p.unit().expect("checked unital").shifted(off)).collect();
    let unit = idempotents.iter().fold(SparseVec::zero(), |acc, e| acc.add(e));
    let algebra = Algebra::from_products(field, dim, products, Some(unit), Some(labels))?;
    Ok(DirectSum { algebra, parts: parts.to_vec(), offsets, idempotents })
}

/// `𝓤 = [[A₁, Y], [0, A₂]]` with basis `A₁, Y, A₂` in that order.
#[derive(Clone, Debug)]
pub struct Triangular {
    pub algebra: Algebra,
    pub a1: Algebra,
    pub a2: Algebra,
    pub e11: SparseVec,
    pub e22: SparseVec,
}

impl Triangular {
    /// Projection `𝓤 → A₁`.
    pub fn projection1(&self) -> Matrix {
        let mut m = Matrix::zeros(self.a1.dim(), self.algebra.dim());
        for k in 0..self.a1.dim() {
            m[(k, k)] = Scalar::ONE;
        }
        m
    }

    /// Projection `𝓤 → A₂`.
    pub fn projection2(&self) -> Matrix {
        let off = self.algebra.dim() - self.a2.dim();
        let mut m = Matrix::zeros(self.a2.dim(), self.algebra.dim());
        for k in 0..self.a2.dim() {
            m[(k, off + k)] = Scalar::ONE;
        }
        m
    }

    /// The subalgebra spanned by the corner idempotents.
    pub fn corner_subalgebra(&self) -> Result<SubalgebraSpec> {
        SubalgebraSpec::new(&self.algebra, false, vec![self.e11.clone(), self.e22.clone()])
    }
}

/// Triangular matrix algebra from unital `a1`, `a2` and a unital
/// `a1`–`a2` bimodule `y` (left action by `a1`, right action by `a2`).
pub fn triangular(a1: &Algebra, a2: &Algebra, y: &Bimodule) -> Result<Triangular> {
    let (u1, u2) = match (a1.unit(), a2.unit()) {
        (Some(u1), Some(u2)) => (u1, u2),
        _ => return Err(Error::Precondition("triangular algebra needs unital corners".into())),
    };
    if a1.field() != a2.field() {
        return Err(Error::Precondition("corner algebras must share a field".into()));
    }
    y.validate_over(a1, a2)?;
    let yd = y.dim();
    if y.left_action_of(u1) != Matrix::identity(yd) || y.right_action_of(u2) != Matrix::identity(yd) {
        return Err(Error::Precondition("the bimodule is not unital".into()));
    }
    let (d1, d2) = (a1.dim(), a2.dim());
    let dim = d1 + yd + d2;
    let (oy, o2) = (d1, d1 + yd);
    let mut products = vec![SparseVec::zero(); dim * dim];
    for i in 0..d1 {
        for j in 0..d1 {
            products[i * dim + j] = a1.product(i, j).clone();
        }
        for k in 0..yd {
            // eᵢ·y_k
            products[i * dim + oy + k] = y.left(i).column_sparse(k).shifted(oy);
        }
    }
    for k in 0..yd {
        for j in 0..d2 {
            // y_k·eⱼ
            products[(oy + k) * dim + o2 + j] = y.right(j).column_sparse(k).shifted(oy);
        }
    }
    for i in 0..d2 {
        for j in 0..d2 {
            products[(o2 + i) * dim + o2 + j] = a2.product(i, j).shifted(o2);
        }
    }
    let e11 = u1.clone();
    let e22 = u2.shifted(o2);
    let unit = e11.add(&e22);
    let labels = (0..d1)
        .map(|i| format!("{}[1]", a1.label(i)))
        .chain((0..yd).map(|k| format!("y{k}")))
        .chain((0..d2).map(|i| format!("{}[2]", a2.label(i))))
        .collect();
    let algebra = Algebra::from_products(a1.field(), dim, products, Some(unit), Some(labels))?;
    Ok(Triangular { algebra, a1: a1.clone(), a2: a2.clone(), e11, e22 })
}

/// A subalgebra of `A` or of `A₊` (then vectors have length `dim A + 1`,
/// the last coordinate being `e₊`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraSpec {
    parent_dim: usize,
    in_unitization: bool,
    space: Subspace,
}

impl SubalgebraSpec {
    /// Validates multiplicative closure.
    pub fn new(parent: &Algebra, in_unitization: bool, vectors: Vec<SparseVec>) -> Result<Self> {
        let host = if in_unitization { parent.unitize() } else { parent.clone() };
        if let Some(v) = vectors.iter().find(|v| v.support_end() > host.dim()) {
            return Err(Error::Subalgebra(format!("vector {v} exceeds dimension {}", host.dim())));
        }
        let space = Subspace::span(host.dim(), &vectors);
        if space.dim() != vectors.len() {
            return Err(Error::Subalgebra("spanning vectors are linearly dependent".into()));
        }
        for x in space.basis() {
            for y in space.basis() {
                if !space.contains(&host.mul(x, y)) {
                    return Err(Error::Subalgebra("not closed under multiplication".into()));
                }
            }
        }
        Ok(SubalgebraSpec { parent_dim: parent.dim(), in_unitization, space })
    }

    /// `K·e₊ ⊆ A₊`; relative objects over it are the absolute ones.
    pub fn unit_scalars(parent: &Algebra) -> Self {
        let d = parent.dim();
        SubalgebraSpec { parent_dim: d, in_unitization: true, space: Subspace::span(d + 1, &[SparseVec::unit(d)]) }
    }

    /// `A` itself.
    pub fn whole(parent: &Algebra) -> Self {
        SubalgebraSpec { parent_dim: parent.dim(), in_unitization: false, space: Subspace::full(parent.dim()) }
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }

    pub fn in_unitization(&self) -> bool {
        self.in_unitization
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Basis elements split as `(α, a)` meaning `α·e₊ + a` with `a ∈ A`.
    pub fn elements(&self) -> Vec<(Scalar, SparseVec)> {
        let d = self.parent_dim;
        self.space
            .basis()
            .iter()
            .map(|v| {
                if self.in_unitization {
                    (v.get(d), v.window(0, d))
                } else {
                    (Scalar::ZERO, v.clone())
                }
            })
            .collect()
    }

    /// This subalgebra inside `A₊` coordinates.
    pub fn in_unitization_coords(&self) -> Subspace {
        if self.in_unitization {
            self.space.clone()
        } else {
            Subspace::span(self.parent_dim + 1, self.space.basis())
        }
    }

    /// `self ⊆ other` as subsets of `A₊`.
    pub fn is_subset_of(&self, other: &SubalgebraSpec) -> bool {
        self.parent_dim == other.parent_dim
            && other.in_unitization_coords().contains_subspace(&self.in_unitization_coords())
    }

    /// The subalgebra as an algebra in its own RREF basis.
    pub fn to_algebra(&self, parent: &Algebra) -> Result<Algebra> {
        let host = if self.in_unitization { parent.unitize() } else { parent.clone() };
        let basis = self.space.basis();
        let k = basis.len();
        let mut products = Vec::with_capacity(k * k);
        for x in basis {
            for y in basis {
                let c = self
                    .space
                    .coordinates_sparse(&host.mul(x, y))
                    .ok_or_else(|| Error::Subalgebra("not closed under multiplication".into()))?;
                products.push(c);
            }
        }
        Algebra::from_products(parent.field(), k, products, None, None)
    }
}

/// A two-sided ideal of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    parent_dim: usize,
    space: Subspace,
}

impl IdealSpec {
    /// Validates two-sided absorption.
    pub fn new(parent: &Algebra, vectors: Vec<SparseVec>) -> Result<Self> {
        let d = parent.dim();
        if vectors.iter().any(|v| v.support_end() > d) {
            return Err(Error::Ideal(format!("vector exceeds dimension {d}")));
        }
        let space = Subspace::span(d, &vectors);
        for x in space.basis() {
            for i in 0..d {
                let e = SparseVec::unit(i);
                if !space.contains(&parent.mul(&e, x)) || !space.contains(&parent.mul(x, &e)) {
                    return Err(Error::Ideal(format!("absorption fails for {} and basis element {i}", x)));
                }
            }
        }
        Ok(IdealSpec { parent_dim: d, space })
    }

    pub fn zero(parent: &Algebra) -> Self {
        IdealSpec { parent_dim: parent.dim(), space: Subspace::zero(parent.dim()) }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The ideal as a subalgebra of `A`.
    pub fn as_subalgebra(&self, parent: &Algebra) -> Result<SubalgebraSpec> {
        SubalgebraSpec::new(parent, false, self.space.basis().to_vec())
    }

    /// The ideal as an algebra in its own RREF basis.
    pub fn to_algebra(&self, parent: &Algebra) -> Result<Algebra> {
        self.as_subalgebra(parent)?.to_algebra(parent)
    }
}

/// `A/I` with the projection `θ` on the canonical complement of `I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    /// `θ : A → A/I`, a `(dim A/I) × (dim A)` matrix.
    pub projection: Matrix,
    /// Coordinates of `A` that survive as the basis of `A/I`.
    pub complement: Vec<usize>,
}

/// Quotient by an ideal. The basis of `A/I` is the set of coordinate
/// vectors `e_c` with `c` not a pivot of the ideal's RREF basis.
pub fn quotient(a: &Algebra, ideal: &IdealSpec) -> Result<Quotient> {
    let d = a.dim();
    let space = ideal.space();
    if space.ambient_dim() != d {
        return Err(Error::Ideal("ideal lives in a different algebra".into()));
    }
    let pivots = space.pivots();
    let complement: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let q = complement.len();
    let position: Vec<Option<usize>> = (0..d).map(|c| complement.iter().position(|&x| x == c)).collect();
    // θ(x) = residual of x after clearing the pivot coordinates.
    let theta = |x: &SparseVec| -> SparseVec {
        let coords: Vec<Scalar> = pivots.iter().map(|&p| x.get(p)).collect();
        let mut res = x.clone();
        for (c, b) in coords.iter().zip(space.basis()) {
            res = res.axpy(&-c, b);
        }
        res.reindex(|i| position[i].expect("residual avoids pivots"))
    };
    let mut projection = Matrix::zeros(q, d);
    for j in 0..d {
        for (i, x) in theta(&SparseVec::unit(j)).iter() {
            projection[(*i, j)] = x.clone();
        }
    }
    let mut products = Vec::with_capacity(q * q);
    for &ci in &complement {
        for &cj in &complement {
            products.push(theta(a.product(ci, cj)));
        }
    }
    let unit = a.unit().map(&theta);
    let labels = Some(complement.iter().map(|&c| a.label(c)).collect());
    let unit = unit.filter(|_| q > 0);
    let algebra = Algebra::from_products(a.field(), q, products, unit, labels)?;
    if !a.is_homomorphism_to(&algebra, &projection) {
        return Err(Error::Ideal("quotient map is not multiplicative".into()));
    }
    Ok(Quotient { algebra, projection, complement })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn builtins_are_valid() {
        for a in [
            Algebra::matrix(2, Q),
            Algebra::matrix(3, Field::GaussianRationals),
            Algebra::dual_numbers(Q),
            Algebra::upper_triangular(3, Q),
            Algebra::scalars(Q),
            Algebra::zero_product(2, Q),
            Algebra::zero(Q),
        ] {
            assert!(a.validate().is_valid(), "{a:?}");
        }
        assert!(Algebra::dual_numbers(Q).is_unital());
        assert!(!Algebra::zero_product(1, Q).is_unital());
    }

    #[test]
    fn perturbed_constants_fail_associativity() {
        let mut c = Algebra::matrix(2, Q).structure_constants();
        c[0][0][0] = Scalar::from_int(2);
        let report = validate_structure(Q, &c, None);
        assert!(!report.associative);
        assert!(matches!(report.violation, Some(Violation::Associativity { .. })));
        assert!(Algebra::new(Q, c, None, None).is_err());
    }

    #[test]
    fn real_field_rejects_gaussian_constants() {
        let c = vec![vec![vec![Scalar::i()]]];
        assert!(matches!(validate_structure(Q, &c, None).violation, Some(Violation::Field { .. })));
        // c = i·e is associative over Q(i): (e·e)·e = i²e = e·(e·e)
        assert!(validate_structure(Field::GaussianRationals, &c, None).is_valid());
    }

    #[test]
    fn unit_detection() {
        let c = Algebra::upper_triangular(2, Q).structure_constants();
        let a = Algebra::new(Q, c, None, None).unwrap();
        assert_eq!(a.unit().unwrap(), &SparseVec::from_pairs(vec![(0, Scalar::ONE), (2, Scalar::ONE)]));
    }

    #[test]
    fn unitize_zero_and_unital() {
        let z = Algebra::zero(Q).unitize();
        assert_eq!(z.dim(), 1);
        assert_eq!(z.unit(), Some(&SparseVec::unit(0)));
        let m = Algebra::matrix(2, Q);
        let mp = m.unitize();
        assert_eq!(mp.dim(), 5);
        assert_eq!(mp.unit(), Some(&SparseVec::unit(4)));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(mp.product(i, j), m.product(i, j));
            }
        }
        assert!(mp.validate().is_valid());
    }

    #[test]
    fn direct_sum_idempotents() {
        let ds = direct_sum(&[Algebra::scalars(Q), Algebra::scalars(Q)]).unwrap();
        assert_eq!(ds.algebra.dim(), 2);
        let (e1, e2) = (&ds.idempotents[0], &ds.idempotents[1]);
        assert!(ds.algebra.mul(e1, e2).is_zero());
        assert_eq!(&e1.add(e2), ds.algebra.unit().unwrap());

        let ds = direct_sum(&[Algebra::matrix(2, Q), Algebra::scalars(Q)]).unwrap();
        assert_eq!(ds.algebra.dim(), 5);
        for (i, ei) in ds.idempotents.iter().enumerate() {
            for (j, ej) in ds.idempotents.iter().enumerate() {
                let p = ds.algebra.mul(ei, ej);
                assert_eq!(p, if i == j { ei.clone() } else { SparseVec::zero() });
            }
        }
        assert_eq!(ds.idempotents[0].nnz(), 2);
        assert_eq!(ds.idempotents[1].nnz(), 1);
        assert!(direct_sum(&[Algebra::zero_product(1, Q)]).is_err());
    }

    #[test]
    fn triangular_of_scalars_is_upper_triangular() {
        let k = Algebra::scalars(Q);
        let y = Bimodule::regular_scalars(Q);
        let t = triangular(&k, &k, &y).unwrap();
        assert_eq!(t.algebra.structure_constants(), Algebra::upper_triangular(2, Q).structure_constants());
        assert_eq!(t.e11, SparseVec::unit(0));
        assert_eq!(t.e22, SparseVec::unit(2));
        assert!(t.algebra.validate().is_valid());
    }

    #[test]
    fn triangular_with_zero_bimodule_is_direct_sum() {
        let k = Algebra::scalars(Q);
        let y = Bimodule::zero(1, 4, 0);
        let t = triangular(&k, &Algebra::matrix(2, Q), &y).unwrap();
        let ds = direct_sum(&[k, Algebra::matrix(2, Q)]).unwrap();
        assert_eq!(t.algebra.structure_constants(), ds.algebra.structure_constants());
    }

    #[test]
    fn quotient_examples() {
        let ds = direct_sum(&[Algebra::scalars(Q), Algebra::scalars(Q)]).unwrap();
        let i = IdealSpec::new(&ds.algebra, vec![SparseVec::unit(0)]).unwrap();
        let q = quotient(&ds.algebra, &i).unwrap();
        assert_eq!(q.algebra.structure_constants(), Algebra::scalars(Q).structure_constants());

        let m = Algebra::matrix(2, Q);
        let all = IdealSpec::new(&m, (0..4).map(SparseVec::unit).collect()).unwrap();
        assert_eq!(quotient(&m, &all).unwrap().algebra.dim(), 0);

        let ut = Algebra::upper_triangular(2, Q);
        let strict = IdealSpec::new(&ut, vec![SparseVec::unit(1)]).unwrap();
        let q = quotient(&ut, &strict).unwrap();
        // complement {e11, e22}: e11² = e11, e22² = e22, mixed products vanish
        let expected = direct_sum(&[Algebra::scalars(Q), Algebra::scalars(Q)]).unwrap();
        assert_eq!(q.complement, vec![0, 2]);
        assert_eq!(q.algebra.structure_constants(), expected.algebra.structure_constants());
        assert!(ut.is_homomorphism_to(&q.algebra, &q.projection));
    }

    #[test]
    fn non_ideal_is_rejected() {
        let m = Algebra::matrix(2, Q);
        assert!(matches!(IdealSpec::new(&m, vec![SparseVec::unit(0)]), Err(Error::Ideal(_))));
    }

    #[test]
    fn separability() {
        let k = Algebra::scalars(Q);
        assert_eq!(k.separability_idempotent().unwrap(), Some(SparseVec::unit(0)));

        let m = Algebra::matrix(2, Q);
        let u = m.separability_idempotent().unwrap().expect("M2 is separable");
        assert!(m.is_separability_idempotent(&u));
        // Σⱼ e_{j1}⊗e_{1j} is also a certificate
        let idx = |i: usize, j: usize| i * 2 + j;
        let alt: SparseVec = (0..2).map(|j| (idx(j, 0) * 4 + idx(0, j), Scalar::ONE)).collect();
        assert!(m.is_separability_idempotent(&alt));

        assert_eq!(Algebra::dual_numbers(Q).separability_idempotent().unwrap(), None);
        assert!(Algebra::zero_product(1, Q).separability_idempotent().is_err());
    }

    #[test]
    fn trace_spaces() {
        assert_eq!(Algebra::matrix(2, Q).trace_space().dim(), 1);
        assert_eq!(Algebra::dual_numbers(Q).trace_space().dim(), 2);
        let ut = Algebra::upper_triangular(2, Q);
        let tr = ut.trace_space();
        assert_eq!(tr.dim(), 2);
        assert!(tr.basis().iter().all(|f| f.get(1).is_zero()));
    }

    #[test]
    fn subalgebras() {
        let ut = Algebra::upper_triangular(2, Q);
        let diag = SubalgebraSpec::new(&ut, false, vec![SparseVec::unit(0), SparseVec::unit(2)]).unwrap();
        let b = diag.to_algebra(&ut).unwrap();
        assert!(b.is_separable());
        assert!(SubalgebraSpec::new(&ut, false, vec![SparseVec::unit(0).add(&SparseVec::unit(1))]).is_ok());
        let m = Algebra::matrix(2, Q);
        assert!(SubalgebraSpec::new(&m, false, vec![SparseVec::unit(1), SparseVec::unit(2)]).is_err());
        let unit = SubalgebraSpec::unit_scalars(&ut);
        assert!(unit.is_subset_of(&SubalgebraSpec::new(&ut, true, vec![SparseVec::unit(3)]).unwrap()));
        assert!(!unit.is_subset_of(&diag));
    }
}
