//! The Hochschild complex `C(A,X)`, its `S`-relative subcomplex, and the
//! comparison maps between cohomologies of related algebras.
//!
//! Coordinates of `Cⁿ(A,X)` are indexed by `(a₁,…,aₙ; k)` in
//! lexicographic order with the output coordinate `k` varying fastest.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Algebra, DirectSum, IdealSpec, SubalgebraSpec};
use crate::bimodule::{center_s, corner, inflate, Bimodule};
use crate::error::{Error, Result};
use crate::exactlin::{
    induced_map, nullspace_of_rows, Cohomology, LinearMap, Matrix, SparseVec, SubComplex, Subspace,
};
use crate::scalar::Scalar;

/// Degree cap and coordinate budget for cochain spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    pub size_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 3, size_budget: 200_000 }
    }
}

impl Limits {
    pub fn new(max_degree: usize, size_budget: usize) -> Self {
        Limits { max_degree, size_budget }
    }

    /// Fails when cohomology in degree `n` is requested beyond the cap.
    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::DegreeCap { degree: n, cap: self.max_degree });
        }
        Ok(())
    }

    /// Fails when a space of dimension `dim` exceeds the budget.
    pub fn check_size(&self, what: impl Into<String>, dim: u128) -> Result<()> {
        if dim > self.size_budget as u128 {
            return Err(Error::SizeBudget { what: what.into(), dim, budget: self.size_budget });
        }
        Ok(())
    }
}

/// `(dim A)ⁿ` as an exact count, saturating on overflow.
pub fn tuple_count(d: usize, n: usize) -> u128 {
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(d as u128))
}

/// Basis enumeration of `Cⁿ(A,X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainIndex {
    pub degree: usize,
    pub algebra_dim: usize,
    pub module_dim: usize,
}

impl CochainIndex {
    pub fn new(degree: usize, algebra_dim: usize, module_dim: usize) -> Self {
        CochainIndex { degree, algebra_dim, module_dim }
    }

    pub fn tuples(&self) -> usize {
        self.algebra_dim.pow(self.degree as u32)
    }

    pub fn dim(&self) -> usize {
        self.tuples() * self.module_dim
    }

    pub fn index(&self, tuple: &[usize], k: usize) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        tuple.iter().fold(0, |acc, &w| acc * self.algebra_dim + w) * self.module_dim + k
    }

    pub fn decode(&self, idx: usize) -> (Vec<usize>, usize) {
        let k = idx % self.module_dim;
        let mut t = idx / self.module_dim;
        let mut tuple = vec![0; self.degree];
        for slot in tuple.iter_mut().rev() {
            *slot = t % self.algebra_dim;
            t /= self.algebra_dim;
        }
        (tuple, k)
    }
}

/// For each basis index `m`, the pairs `(p, q, c)` with `c = c[p][q][m] ≠ 0`.
pub(crate) fn product_preimages(a: &Algebra) -> Vec<Vec<(usize, usize, Scalar)>> {
    let d = a.dim();
    let mut pre = vec![Vec::new(); d];
    for p in 0..d {
        for q in 0..d {
            for (m, c) in a.product(p, q).iter() {
                pre[*m].push((p, q, c.clone()));
            }
        }
    }
    pre
}

fn sign(i: usize) -> Scalar {
    if i % 2 == 0 {
        Scalar::ONE
    } else {
        -Scalar::ONE
    }
}

/// `δⁿ : Cⁿ(A,X) → Cⁿ⁺¹(A,X)`.
pub fn hochschild_delta(a: &Algebra, x: &Bimodule, n: usize) -> LinearMap {
    let d = a.dim();
    let m = x.dim();
    let src = CochainIndex::new(n, d, m);
    let tgt = CochainIndex::new(n + 1, d, m);
    let left = x.left_maps();
    let right = x.right_maps();
    let pre = product_preimages(a);
    let dn = src.tuples();
    let mut columns = Vec::with_capacity(src.dim());
    for t in 0..dn {
        for k in 0..m {
            let mut pairs = Vec::new();
            for (b, l) in left.iter().enumerate() {
                let tt = b * dn + t;
                pairs.extend(l.column(k).iter().map(|(r, v)| (tt * m + r, v.clone())));
            }
            for i in 1..=n {
                let tail = d.pow((n - i) as u32);
                let prefix = t / (tail * d);
                let w = (t / tail) % d;
                let suffix = t % tail;
                let s = sign(i);
                for (p, q, c) in &pre[w] {
                    let tt = ((prefix * d + p) * d + q) * tail + suffix;
                    pairs.push((tt * m + k, &s * c));
                }
            }
            let s = sign(n + 1);
            for (b, r) in right.iter().enumerate() {
                let tt = t * d + b;
                pairs.extend(r.column(k).iter().map(|(row, v)| (tt * m + row, &s * v)));
            }
            columns.push(SparseVec::from_pairs(pairs));
        }
    }
    LinearMap::from_columns(tgt.dim(), columns)
}

/// `C_Sⁿ(A,X)`: cochains balanced over `S` on the left, in the middle and
/// on the right. For `n = 0` this is `Cen_S X`.
pub fn relative_cochains(a: &Algebra, x: &Bimodule, s: &SubalgebraSpec, n: usize) -> Result<Subspace> {
    if s.parent_dim() != a.dim() {
        return Err(Error::Subalgebra("subalgebra lives over a different algebra".into()));
    }
    if n == 0 {
        return center_s(x, s);
    }
    let d = a.dim();
    let m = x.dim();
    let idx = CochainIndex::new(n, d, m);
    let dn = idx.tuples();
    let mut rows = Vec::new();
    for (_, el) in s.elements() {
        if el.is_zero() {
            continue;
        }
        // e₊ components cancel from every condition
        let la = x.left_action_of(&el);
        let ra = x.right_action_of(&el);
        let el_b: Vec<SparseVec> = (0..d).map(|b| a.mul(&el, &SparseVec::unit(b))).collect();
        let b_el: Vec<SparseVec> = (0..d).map(|b| a.mul(&SparseVec::unit(b), &el)).collect();
        for t in 0..dn {
            let (tuple, _) = idx.decode(t * m);
            let first_tail = d.pow((n - 1) as u32);
            for k in 0..m {
                // ρ(s·b₁, …) = s·ρ(b₁, …)
                let mut pairs: Vec<(usize, Scalar)> = el_b[tuple[0]]
                    .iter()
                    .map(|(j, c)| ((j * first_tail + t % first_tail) * m + k, c.clone()))
                    .collect();
                pairs.extend(la.row(k).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(l, v)| (t * m + l, -v)));
                rows.push(SparseVec::from_pairs(pairs));
                // ρ(…, bᵢ·s, bᵢ₊₁, …) = ρ(…, bᵢ, s·bᵢ₊₁, …)
                for i in 1..n {
                    let mut pairs = Vec::new();
                    let at = |pos: usize, j: usize| {
                        let mut tt = tuple.clone();
                        tt[pos] = j;
                        idx.index(&tt, k)
                    };
                    for (j, c) in b_el[tuple[i - 1]].iter() {
                        pairs.push((at(i - 1, *j), c.clone()));
                    }
                    for (j, c) in el_b[tuple[i]].iter() {
                        pairs.push((at(i, *j), -c));
                    }
                    rows.push(SparseVec::from_pairs(pairs));
                }
                // ρ(…, bₙ·s) = ρ(…, bₙ)·s
                let mut pairs: Vec<(usize, Scalar)> = b_el[tuple[n - 1]]
                    .iter()
                    .map(|(j, c)| ((t - tuple[n - 1] + j) * m + k, c.clone()))
                    .collect();
                pairs.extend(ra.row(k).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(l, v)| (t * m + l, -v)));
                rows.push(SparseVec::from_pairs(pairs));
            }
        }
    }
    Ok(nullspace_of_rows(idx.dim(), rows))
}

/// The (relative) Hochschild complex in degrees `0..=top`.
pub fn hochschild_complex(
    a: &Algebra,
    x: &Bimodule,
    s: Option<&SubalgebraSpec>,
    top: usize,
    limits: &Limits,
) -> Result<SubComplex> {
    for n in 0..=top {
        limits.check_size(format!("C^{n}(A,X)"), tuple_count(a.dim(), n).saturating_mul(x.dim() as u128))?;
    }
    let spaces = (0..=top)
        .map(|n| {
            let dim = CochainIndex::new(n, a.dim(), x.dim()).dim();
            match s {
                Some(s) => relative_cochains(a, x, s, n),
                None => Ok(Subspace::full(dim)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let differentials = (0..top).map(|n| hochschild_delta(a, x, n)).collect();
    SubComplex::new(spaces, differentials)
}

/// `Hⁿ = Zⁿ/Nⁿ` together with its report data.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub degree: usize,
    pub relative: bool,
    pub cohomology: Cohomology,
}

/// Report JSON of one cohomology computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degree: usize,
    #[serde(rename = "dimZ")]
    pub dim_z: usize,
    #[serde(rename = "dimN")]
    pub dim_n: usize,
    #[serde(rename = "dimH")]
    pub dim_h: usize,
    pub relative: bool,
    pub iso_flags: BTreeMap<String, bool>,
}

impl CohomologyResult {
    pub fn dim_cocycles(&self) -> usize {
        self.cohomology.dim_cocycles()
    }

    pub fn dim_coboundaries(&self) -> usize {
        self.cohomology.dim_coboundaries()
    }

    pub fn dim_cohomology(&self) -> usize {
        self.cohomology.dim()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        self.cohomology.representatives()
    }

    /// Representatives as rows.
    pub fn representatives_matrix(&self) -> Matrix {
        Matrix::from_sparse_rows(self.cohomology.cocycles().ambient_dim(), self.representatives())
    }

    pub fn report(&self) -> CohomologyReport {
        CohomologyReport {
            degree: self.degree,
            dim_z: self.dim_cocycles(),
            dim_n: self.dim_coboundaries(),
            dim_h: self.dim_cohomology(),
            relative: self.relative,
            iso_flags: BTreeMap::new(),
        }
    }
}

/// `Hⁿ(A,X)` or `H_Sⁿ(A,X)` for `n = 0..=max_n`.
pub fn cohomology_range(
    a: &Algebra,
    x: &Bimodule,
    s: Option<&SubalgebraSpec>,
    max_n: usize,
    limits: &Limits,
) -> Result<Vec<CohomologyResult>> {
    limits.check_degree(max_n)?;
    x.validate(a)?;
    let complex = hochschild_complex(a, x, s, max_n + 1, limits)?;
    (0..=max_n)
        .map(|n| Ok(CohomologyResult { degree: n, relative: s.is_some(), cohomology: complex.cohomology(n)? }))
        .collect()
}

/// `Hⁿ(A,X)` or `H_Sⁿ(A,X)` in the single degree `n`.
pub fn cohomology(
    a: &Algebra,
    x: &Bimodule,
    n: usize,
    s: Option<&SubalgebraSpec>,
    limits: &Limits,
) -> Result<CohomologyResult> {
    limits.check_degree(n)?;
    x.validate(a)?;
    let complex = hochschild_complex(a, x, s, n + 1, limits)?;
    Ok(CohomologyResult { degree: n, relative: s.is_some(), cohomology: complex.cohomology(n)? })
}

/// An induced map on cohomology with its invertibility data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonMap {
    pub degree: usize,
    pub matrix: Matrix,
    pub src_dim: usize,
    pub tgt_dim: usize,
}

impl ComparisonMap {
    pub fn new(degree: usize, matrix: Matrix) -> Self {
        ComparisonMap { degree, src_dim: matrix.cols(), tgt_dim: matrix.rows(), matrix }
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.is_surjective()
    }

    pub fn is_iso(&self) -> bool {
        self.src_dim == self.tgt_dim && self.matrix.is_invertible()
    }
}

fn chain_map_degrees(
    src: &SubComplex,
    tgt: &SubComplex,
    maps: &[LinearMap],
    max_n: usize,
) -> Result<Vec<ComparisonMap>> {
    for n in 0..=max_n {
        crate::exactlin::check_chain_map(src, tgt, &maps[n], &maps[n + 1], n)?;
    }
    (0..=max_n)
        .map(|n| {
            let m = induced_map(&maps[n], &src.cohomology(n)?, &tgt.cohomology(n)?)?;
            Ok(ComparisonMap::new(n, m))
        })
        .collect()
}

/// `𝓕ₙ : H_Sⁿ(A,X) → Hⁿ(A,X)` induced by inclusion, `n = 0..=max_n`.
pub fn comparison_inclusion_range(
    a: &Algebra,
    x: &Bimodule,
    s: &SubalgebraSpec,
    max_n: usize,
    limits: &Limits,
) -> Result<Vec<ComparisonMap>> {
    limits.check_degree(max_n)?;
    x.validate(a)?;
    let rel = hochschild_complex(a, x, Some(s), max_n + 1, limits)?;
    let abs = hochschild_complex(a, x, None, max_n + 1, limits)?;
    let maps: Vec<LinearMap> =
        (0..=max_n + 1).map(|n| LinearMap::identity(CochainIndex::new(n, a.dim(), x.dim()).dim())).collect();
    chain_map_degrees(&rel, &abs, &maps, max_n)
}

/// `𝓕ₙ` in the single degree `n`.
pub fn comparison_inclusion(
    a: &Algebra,
    x: &Bimodule,
    s: &SubalgebraSpec,
    n: usize,
    limits: &Limits,
) -> Result<ComparisonMap> {
    Ok(comparison_inclusion_range(a, x, s, n, limits)?.pop().expect("nonempty range"))
}

/// `f ↦ coeff ∘ f ∘ θ^{⊗n}` from `Cⁿ(A′,Y)` to `Cⁿ(A,X)`, where
/// `θ : A → A′` is `dim A′ × dim A` and `coeff : Y → X` is `dim X × dim Y`.
pub fn cochain_pullback(theta: &Matrix, coeff: &Matrix, n: usize) -> LinearMap {
    let (dp, d) = (theta.rows(), theta.cols());
    let (mx, my) = (coeff.rows(), coeff.cols());
    let theta_rows: Vec<SparseVec> = (0..dp).map(|w| theta.row_sparse(w)).collect();
    let coeff_cols: Vec<SparseVec> = (0..my).map(|k| coeff.column_sparse(k)).collect();
    let src = CochainIndex::new(n, dp, my);
    let tgt = CochainIndex::new(n, d, mx);
    let mut columns = Vec::with_capacity(src.dim());
    for t in 0..src.tuples() {
        let (w, _) = src.decode(t * my);
        // all tuples b with Π θ[wᵢ][bᵢ] ≠ 0
        let mut terms: Vec<(usize, Scalar)> = vec![(0, Scalar::ONE)];
        for wi in &w {
            let mut next = Vec::new();
            for (tt, c) in &terms {
                for (b, v) in theta_rows[*wi].iter() {
                    next.push((tt * d + b, c * v));
                }
            }
            terms = next;
        }
        for col in &coeff_cols {
            let mut pairs = Vec::new();
            for (tt, c) in &terms {
                pairs.extend(col.iter().map(|(r, v)| (tt * mx + r, c * v)));
            }
            columns.push(SparseVec::from_pairs(pairs));
        }
    }
    LinearMap::from_columns(tgt.dim(), columns)
}

/// Induced maps of `f ↦ coeff ∘ f ∘ θ^{⊗n}` from `H(A′,Y)` to `H(A,X)`.
pub fn pullback_comparison_range(
    src: (&Algebra, &Bimodule),
    tgt: (&Algebra, &Bimodule),
    theta: &Matrix,
    coeff: &Matrix,
    max_n: usize,
    limits: &Limits,
) -> Result<Vec<ComparisonMap>> {
    limits.check_degree(max_n)?;
    let (ap, y) = src;
    let (a, x) = tgt;
    if theta.rows() != ap.dim() || theta.cols() != a.dim() || coeff.rows() != x.dim() || coeff.cols() != y.dim() {
        return Err(Error::Dimension("pullback maps do not match the algebras and modules".into()));
    }
    if !a.is_homomorphism_to(ap, theta) {
        return Err(Error::Precondition("θ is not multiplicative".into()));
    }
    y.validate(ap)?;
    x.validate(a)?;
    let c_src = hochschild_complex(ap, y, None, max_n + 1, limits)?;
    let c_tgt = hochschild_complex(a, x, None, max_n + 1, limits)?;
    let maps: Vec<LinearMap> = (0..=max_n + 1).map(|n| cochain_pullback(theta, coeff, n)).collect();
    chain_map_degrees(&c_src, &c_tgt, &maps, max_n)
}

/// `𝓛ₙ : Hⁿ(A/I,M) → Hⁿ(A,M)` for an `A/I`-bimodule `M`, `n = 0..=max_n`.
pub fn quotient_comparison_range(
    a: &Algebra,
    ideal: &IdealSpec,
    m: &Bimodule,
    max_n: usize,
    limits: &Limits,
) -> Result<Vec<ComparisonMap>> {
    let q = crate::algebra::quotient(a, ideal)?;
    let inflated = inflate(m, &q.projection)?;
    let id = Matrix::identity(m.dim());
    pullback_comparison_range((&q.algebra, m), (a, &inflated), &q.projection, &id, max_n, limits)
}

/// `𝓛ₙ` in the single degree `n`.
pub fn quotient_comparison(
    a: &Algebra,
    ideal: &IdealSpec,
    m: &Bimodule,
    n: usize,
    limits: &Limits,
) -> Result<ComparisonMap> {
    Ok(quotient_comparison_range(a, ideal, m, n, limits)?.pop().expect("nonempty range"))
}

/// `𝓙ₙ` and `𝓖ₙ` between `C_Bⁿ(A,M)` (in its RREF coordinates) and
/// `⊕ᵢ Cⁿ(Aᵢ, eᵢMeᵢ)` (concatenated cochain coordinates), `B` being the
/// span of the component identities.
#[derive(Clone, Debug)]
pub struct DirectSumMaps {
    pub degree: usize,
    pub j: Matrix,
    pub g: Matrix,
    pub relative_dim: usize,
    pub part_dims: Vec<usize>,
}

impl DirectSumMaps {
    pub fn j_after_g_is_identity(&self) -> bool {
        self.j.mul(&self.g).is_identity()
    }

    pub fn g_after_j_is_identity(&self) -> bool {
        self.g.mul(&self.j).is_identity()
    }
}

pub fn direct_sum_maps(ds: &DirectSum, m: &Bimodule, n: usize, limits: &Limits) -> Result<DirectSumMaps> {
    let a = &ds.algebra;
    m.validate(a)?;
    limits.check_size(format!("C^{n}(A,M)"), tuple_count(a.dim(), n).saturating_mul(m.dim() as u128))?;
    let b = ds.idempotent_subalgebra()?;
    let rel = relative_cochains(a, m, &b, n)?;
    let corners = (0..ds.parts.len()).map(|i| corner(m, ds, i)).collect::<Result<Vec<_>>>()?;
    let full = CochainIndex::new(n, a.dim(), m.dim());
    let part_idx: Vec<CochainIndex> =
        ds.parts.iter().zip(&corners).map(|(p, c)| CochainIndex::new(n, p.dim(), c.module.dim())).collect();
    let mut part_offsets = Vec::new();
    let mut total = 0;
    for pi in &part_idx {
        part_offsets.push(total);
        total += pi.dim();
    }
    // 𝓙 on ambient coordinates: keep tuples inside block i, project the value to eᵢMeᵢ.
    let block_of = |w: usize| ds.offsets.iter().rposition(|&o| o <= w).expect("offsets start at 0");
    let j_amb = |v: &SparseVec| -> SparseVec {
        let mut pairs = Vec::new();
        for (idx, c) in v.iter() {
            let (tuple, k) = full.decode(*idx);
            let parts: Vec<usize> = match tuple.first() {
                None => (0..ds.parts.len()).collect(),
                Some(&w0) => {
                    let i = block_of(w0);
                    if tuple.iter().all(|&w| block_of(w) == i) {
                        vec![i]
                    } else {
                        vec![]
                    }
                }
            };
            for i in parts {
                let local: Vec<usize> = tuple.iter().map(|w| w - ds.offsets[i]).collect();
                for (r, x) in corners[i].projection.column_sparse(k).iter() {
                    pairs.push((part_offsets[i] + part_idx[i].index(&local, *r), c * x));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    };
    let j_cols: Vec<SparseVec> = rel.basis().iter().map(j_amb).collect();
    let j = Matrix::from_sparse_columns(total, &j_cols);
    // 𝓖: embed each block back, tuples shifted by the block offset.
    let mut g_cols = Vec::with_capacity(total);
    for (i, pi) in part_idx.iter().enumerate() {
        for idx in 0..pi.dim() {
            let (tuple, k) = pi.decode(idx);
            let global: Vec<usize> = tuple.iter().map(|w| w + ds.offsets[i]).collect();
            let v: SparseVec = corners[i]
                .embedding
                .column_sparse(k)
                .iter()
                .map(|(r, x)| (full.index(&global, *r), x.clone()))
                .collect();
            let coords = rel
                .coordinates_sparse(&v)
                .ok_or_else(|| Error::Containment("𝓖 leaves the relative cochains".into()))?;
            g_cols.push(coords);
        }
    }
    let g = Matrix::from_sparse_columns(rel.dim(), &g_cols);
    Ok(DirectSumMaps {
        degree: n,
        j,
        g,
        relative_dim: rel.dim(),
        part_dims: part_idx.iter().map(CochainIndex::dim).collect(),
    })
}

/// Dimensions `Σᵢ dim Hⁿ(Aᵢ, eᵢMeᵢ)` for `n = 0..=max_n`, per part.
pub fn corner_cohomology_dims(ds: &DirectSum, m: &Bimodule, max_n: usize, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    (0..ds.parts.len())
        .map(|i| {
            let c = corner(m, ds, i)?;
            Ok(cohomology_range(&ds.parts[i], &c.module, None, max_n, limits)?
                .iter()
                .map(CohomologyResult::dim_cohomology)
                .collect())
        })
        .collect()
}
