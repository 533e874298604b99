//! Cyclic cohomology through multilinear functionals.
//!
//! The ambient space in degree `n` holds `(n+1)`-linear functionals on
//! `A`, indexed by tuples `(a₀,…,aₙ)` in lexicographic order, so it has
//! dimension `(dim A)ⁿ⁺¹`. The functional `f` corresponds to the
//! Hochschild cochain `ρ(a₁,…,aₙ)(a₀) = f(a₀,…,aₙ)` with values in `A*`.

mod morphism;
mod sequence;
mod theorems;

pub use morphism::{
    ct_morphism, ct_morphism_hom, functional_pullback, CtMorphismReport, CtMorphismSummary, MapSummary, Propagation, Square,
};
pub use sequence::{connes_tsygan, CtMaps, CtReport, CtSequence};
pub use theorems::{cyclic_theorem_suite, CyclicCase};

use serde::Serialize;

use crate::algebra::{Algebra, SubalgebraSpec};
use crate::error::{Error, Result};
use crate::exactlin::{
    kernel_of_images, combine, ComplexSes, LinearMap, SparseVec, SubComplex, Subspace,
};
use crate::hochschild::{product_preimages, tuple_count, CohomologyResult, Limits};
use crate::scalar::Scalar;

/// Dimension of the degree-`n` ambient space.
pub fn functional_dim(d: usize, n: usize) -> usize {
    d.pow(n as u32 + 1)
}

fn sign(i: usize) -> Scalar {
    if i % 2 == 0 {
        Scalar::ONE
    } else {
        -Scalar::ONE
    }
}

/// `tₙf(a₀,…,aₙ) = (−1)ⁿ f(a₁,…,aₙ,a₀)`.
pub fn cyclic_t(a: &Algebra, n: usize) -> LinearMap {
    let d = a.dim();
    let size = functional_dim(d, n);
    let tail = size / d.max(1);
    let s = sign(n);
    // e_w ↦ ±e_{(wₙ, w₀, …, wₙ₋₁)}
    let columns = (0..size).map(|w| SparseVec::from_pairs(vec![((w % d) * tail + w / d, s.clone())])).collect();
    LinearMap::from_columns(size, columns)
}

/// `Mₙ = id − tₙ⁻¹ = id − tₙⁿ`. With `tₙ` as above this is the variant that
/// commutes with the differentials, `δr∘Mₙ = Mₙ₊₁∘δ`; its kernel and image
/// agree with those of `id − tₙ`.
pub fn operator_m(a: &Algebra, n: usize) -> LinearMap {
    let size = functional_dim(a.dim(), n);
    let t = cyclic_t(a, n);
    let mut inverse = LinearMap::identity(size);
    for _ in 0..n {
        inverse = t.compose(&inverse);
    }
    LinearMap::identity(size).axpy(&-Scalar::ONE, &inverse)
}

/// `Nₙ = id + tₙ + … + tₙⁿ`.
pub fn operator_n(a: &Algebra, n: usize) -> LinearMap {
    let size = functional_dim(a.dim(), n);
    let t = cyclic_t(a, n);
    let mut power = LinearMap::identity(size);
    let mut sum = power.clone();
    for _ in 0..n {
        power = t.compose(&power);
        sum = sum.add(&power);
    }
    sum
}

fn delta_impl(a: &Algebra, n: usize, wrap: bool) -> LinearMap {
    let d = a.dim();
    let pre = product_preimages(a);
    let src = functional_dim(d, n);
    let tgt = functional_dim(d, n + 1);
    let mut columns = Vec::with_capacity(src);
    for w in 0..src {
        let mut pairs = Vec::new();
        for i in 0..=n {
            let tail = d.pow((n - i) as u32);
            let prefix = w / (tail * d);
            let wi = (w / tail) % d;
            let suffix = w % tail;
            let s = sign(i);
            for (p, q, c) in &pre[wi] {
                pairs.push((((prefix * d + p) * d + q) * tail + suffix, &s * c));
            }
        }
        if wrap {
            // f(aₙ₊₁a₀, a₁, …, aₙ): the tuple is (q, w₁…wₙ, p) when c[p][q][w₀] ≠ 0
            let tail = d.pow(n as u32);
            let w0 = w / tail;
            let rest = w % tail;
            let s = sign(n + 1);
            for (p, q, c) in &pre[w0] {
                pairs.push(((q * tail + rest) * d + p, &s * c));
            }
        }
        columns.push(SparseVec::from_pairs(pairs));
    }
    LinearMap::from_columns(tgt, columns)
}

/// The Hochschild differential on functionals, with the wrap-around term.
pub fn cyclic_delta(a: &Algebra, n: usize) -> LinearMap {
    delta_impl(a, n, true)
}

/// The bar differential `δr`, without the wrap-around term.
pub fn bar_delta(a: &Algebra, n: usize) -> LinearMap {
    delta_impl(a, n, false)
}

/// `S`-relative functionals in degree `n`:
/// `f(s a₀, …, aₙ) = f(a₀, …, aₙ s)` and
/// `f(…, aⱼ s, aⱼ₊₁, …) = f(…, aⱼ, s aⱼ₊₁, …)`.
pub fn relative_functionals(a: &Algebra, s: &SubalgebraSpec, n: usize) -> Result<Subspace> {
    if s.parent_dim() != a.dim() {
        return Err(Error::Subalgebra("subalgebra lives over a different algebra".into()));
    }
    let d = a.dim();
    let size = functional_dim(d, n);
    let elements: Vec<SparseVec> = s.elements().into_iter().map(|(_, el)| el).filter(|el| !el.is_zero()).collect();
    if elements.is_empty() {
        return Ok(Subspace::full(size));
    }
    let place = |tuple: &[usize], pos: usize, j: usize| {
        tuple.iter().enumerate().fold(0, |acc, (k, &w)| acc * d + if k == pos { j } else { w })
    };
    let mut rows = Vec::new();
    for el in &elements {
        let el_b: Vec<SparseVec> = (0..d).map(|b| a.mul(el, &SparseVec::unit(b))).collect();
        let b_el: Vec<SparseVec> = (0..d).map(|b| a.mul(&SparseVec::unit(b), el)).collect();
        for w in 0..size {
            let tuple = decode(w, d, n + 1);
            let mut pairs = Vec::new();
            for (j, c) in el_b[tuple[0]].iter() {
                pairs.push((place(&tuple, 0, *j), c.clone()));
            }
            for (j, c) in b_el[tuple[n]].iter() {
                pairs.push((place(&tuple, n, *j), -c));
            }
            rows.push(SparseVec::from_pairs(pairs));
            for pos in 0..n {
                let mut pairs = Vec::new();
                for (j, c) in b_el[tuple[pos]].iter() {
                    pairs.push((place(&tuple, pos, *j), c.clone()));
                }
                for (j, c) in el_b[tuple[pos + 1]].iter() {
                    pairs.push((place(&tuple, pos + 1, *j), -c));
                }
                rows.push(SparseVec::from_pairs(pairs));
            }
        }
    }
    Ok(crate::exactlin::nullspace_of_rows(size, rows))
}

pub(crate) fn decode(mut w: usize, d: usize, len: usize) -> Vec<usize> {
    let mut tuple = vec![0; len];
    for slot in tuple.iter_mut().rev() {
        *slot = w % d;
        w /= d;
    }
    tuple
}

/// `C_Sⁿ(A)` and its cyclic part `CC_Sⁿ(A)`.
#[derive(Clone, Debug)]
pub struct CyclicCochainSpace {
    pub degree: usize,
    pub relative: Subspace,
    pub cyclic: Subspace,
}

fn span_of_images(ambient: usize, map: &LinearMap, space: &Subspace) -> Subspace {
    Subspace::span(ambient, &space.basis().iter().map(|b| map.apply(b)).collect::<Vec<_>>())
}

fn kernel_on(map: &LinearMap, space: &Subspace) -> Subspace {
    let images: Vec<SparseVec> = space.basis().iter().map(|b| map.apply(b)).collect();
    let rel = kernel_of_images(map.rows(), &images);
    let vecs: Vec<SparseVec> = rel.iter().map(|c| combine(c.iter().map(|(j, x)| (x, &space.basis()[*j])))).collect();
    Subspace::span(space.ambient_dim(), &vecs)
}

/// Relative and cyclic cochain spaces in degree `n`; `s = None` means `S = K·e₊`.
pub fn cyclic_spaces(a: &Algebra, s: Option<&SubalgebraSpec>, n: usize) -> Result<CyclicCochainSpace> {
    let relative = match s {
        Some(s) => relative_functionals(a, s, n)?,
        None => Subspace::full(functional_dim(a.dim(), n)),
    };
    let cyclic = kernel_on(&operator_m(a, n), &relative);
    Ok(CyclicCochainSpace { degree: n, relative, cyclic })
}

/// The four complexes `C̃_S`, `C̃C_S`, `C̃S_S = im M̄`, `C̃R_S` in degrees
/// `0..=top`, arranged as the two short exact sequences
/// `0 → C̃C → C̃ → C̃S → 0` (maps `ī`, `M̄`) and
/// `0 → C̃S → C̃R → C̃C → 0` (maps `j̄`, `N̄`).
#[derive(Clone, Debug)]
pub struct CyclicComplexes {
    pub algebra_dim: usize,
    pub top: usize,
    pub t: Vec<LinearMap>,
    pub m: Vec<LinearMap>,
    pub n: Vec<LinearMap>,
    pub ses_m: ComplexSes,
    pub ses_n: ComplexSes,
}

impl CyclicComplexes {
    pub fn build(a: &Algebra, s: Option<&SubalgebraSpec>, top: usize, limits: &Limits) -> Result<Self> {
        limits.check_size(format!("degree-{top} functionals"), tuple_count(a.dim(), top + 1))?;
        let d = a.dim();
        let mut rel = Vec::new();
        let mut cc = Vec::new();
        let mut cs = Vec::new();
        let mut ts = Vec::new();
        let mut ms = Vec::new();
        let mut ns = Vec::new();
        for k in 0..=top {
            let space = cyclic_spaces(a, s, k)?;
            let m = operator_m(a, k);
            cs.push(span_of_images(functional_dim(d, k), &m, &space.relative));
            rel.push(space.relative);
            cc.push(space.cyclic);
            ts.push(cyclic_t(a, k));
            ms.push(m);
            ns.push(operator_n(a, k));
        }
        let delta: Vec<LinearMap> = (0..top).map(|k| cyclic_delta(a, k)).collect();
        let bar: Vec<LinearMap> = (0..top).map(|k| bar_delta(a, k)).collect();
        let ids: Vec<LinearMap> = (0..=top).map(|k| LinearMap::identity(functional_dim(d, k))).collect();
        let c_tilde = SubComplex::new(rel.clone(), delta.clone())?;
        let c_cyc = SubComplex::new(cc, delta)?;
        let c_img = SubComplex::new(cs, bar.clone())?;
        let c_bar = SubComplex::new(rel, bar)?;
        let ses_m = ComplexSes {
            sub: c_cyc.clone(),
            mid: c_tilde,
            quo: c_img.clone(),
            inj: ids.clone(),
            proj: ms.clone(),
        };
        let ses_n = ComplexSes { sub: c_img, mid: c_bar, quo: c_cyc, inj: ids, proj: ns.clone() };
        Ok(CyclicComplexes { algebra_dim: d, top, t: ts, m: ms, n: ns, ses_m, ses_n })
    }

    /// `C̃_S` with the Hochschild differential.
    pub fn hochschild(&self) -> &SubComplex {
        &self.ses_m.mid
    }

    /// `C̃C_S`.
    pub fn cyclic(&self) -> &SubComplex {
        &self.ses_m.sub
    }

    /// `C̃S_S = im M̄`.
    pub fn image(&self) -> &SubComplex {
        &self.ses_m.quo
    }

    /// `C̃R_S` with the bar differential.
    pub fn bar(&self) -> &SubComplex {
        &self.ses_n.mid
    }
}

/// `C̃_S(A)` with the Hochschild differential in degrees `0..=top`.
pub fn functional_complex(a: &Algebra, s: Option<&SubalgebraSpec>, top: usize, limits: &Limits) -> Result<SubComplex> {
    limits.check_size(format!("degree-{top} functionals"), tuple_count(a.dim(), top + 1))?;
    let spaces = (0..=top).map(|k| Ok(cyclic_spaces(a, s, k)?.relative)).collect::<Result<Vec<_>>>()?;
    SubComplex::new(spaces, (0..top).map(|k| cyclic_delta(a, k)).collect())
}

/// `C̃C_S(A)` in degrees `0..=top`.
pub fn cyclic_complex(a: &Algebra, s: Option<&SubalgebraSpec>, top: usize, limits: &Limits) -> Result<SubComplex> {
    limits.check_size(format!("degree-{top} functionals"), tuple_count(a.dim(), top + 1))?;
    let spaces = (0..=top).map(|k| Ok(cyclic_spaces(a, s, k)?.cyclic)).collect::<Result<Vec<_>>>()?;
    SubComplex::new(spaces, (0..top).map(|k| cyclic_delta(a, k)).collect())
}

fn range_of(complex: &SubComplex, max_n: usize, relative: bool) -> Result<Vec<CohomologyResult>> {
    (0..=max_n).map(|n| Ok(CohomologyResult { degree: n, relative, cohomology: complex.cohomology(n)? })).collect()
}

/// `Hⁿ_S(A)` of the functional complex for `n = 0..=max_n`.
pub fn hochschild_functional_range(
    a: &Algebra,
    s: Option<&SubalgebraSpec>,
    max_n: usize,
    limits: &Limits,
) -> Result<Vec<CohomologyResult>> {
    limits.check_degree(max_n)?;
    range_of(&functional_complex(a, s, max_n + 1, limits)?, max_n, s.is_some())
}

/// `HCⁿ_S(A)` for `n = 0..=max_n`.
pub fn cyclic_cohomology_range(
    a: &Algebra,
    s: Option<&SubalgebraSpec>,
    max_n: usize,
    limits: &Limits,
) -> Result<Vec<CohomologyResult>> {
    limits.check_degree(max_n)?;
    range_of(&cyclic_complex(a, s, max_n + 1, limits)?, max_n, s.is_some())
}

/// `HRⁿ_S(A)`, the cohomology of the bar complex.
pub fn hr_cohomology(a: &Algebra, s: Option<&SubalgebraSpec>, n: usize, limits: &Limits) -> Result<CohomologyResult> {
    limits.check_degree(n)?;
    let cx = CyclicComplexes::build(a, s, n + 1, limits)?;
    Ok(CohomologyResult { degree: n, relative: s.is_some(), cohomology: cx.bar().cohomology(n)? })
}

/// Exactness data of `0 → CC → C →M̄ CR →N̄ CC → 0` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SbiDegree {
    pub degree: usize,
    pub dim_relative: usize,
    pub dim_cyclic: usize,
    pub dim_image: usize,
    /// `CC ⊆ C_S` and `ī` injective.
    pub i_injective: bool,
    /// Defect of `im ī = ker M̄`.
    pub defect_at_c: usize,
    /// Defect of `im M̄ = ker N̄`.
    pub defect_at_cr: usize,
    /// `dim CC − dim N̄(C_S)`.
    pub defect_at_cc: usize,
    /// `tₙ`, `Mₙ` and `δ` keep the relative and cyclic spaces.
    pub stable: bool,
    /// `δr M = M δ` and `N δr = δ N` on the relative space.
    pub chain_maps: bool,
}

impl SbiDegree {
    pub fn defects(&self) -> [usize; 4] {
        [usize::from(!self.i_injective), self.defect_at_c, self.defect_at_cr, self.defect_at_cc]
    }

    pub fn is_exact(&self) -> bool {
        self.defects() == [0; 4] && self.stable && self.chain_maps
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SbiReport {
    pub degrees: Vec<SbiDegree>,
}

impl SbiReport {
    pub fn is_exact(&self) -> bool {
        self.degrees.iter().all(SbiDegree::is_exact)
    }
}

fn subspace_defect(u: &Subspace, v: &Subspace) -> Result<usize> {
    let both = u.intersection(v)?;
    Ok(u.dim() + v.dim() - 2 * both.dim())
}

/// Checks the SBI scaffolding degree by degree for `n = 0..=max_n`.
pub fn sbi_exactness(a: &Algebra, s: Option<&SubalgebraSpec>, max_n: usize, limits: &Limits) -> Result<SbiReport> {
    limits.check_degree(max_n)?;
    let cx = CyclicComplexes::build(a, s, max_n + 1, limits)?;
    let mut degrees = Vec::new();
    for k in 0..=max_n {
        let rel = cx.hochschild().space(k);
        let cc = cx.cyclic().space(k);
        let cs = cx.image().space(k);
        let i_injective = rel.contains_subspace(cc);
        let ker_m = kernel_on(&cx.m[k], rel);
        let ker_n = kernel_on(&cx.n[k], rel);
        let n_image = span_of_images(rel.ambient_dim(), &cx.n[k], rel);
        let keeps = |map: &LinearMap, from: &Subspace, into: &Subspace| from.basis().iter().all(|b| into.contains(&map.apply(b)));
        let mut stable = keeps(&cx.t[k], rel, rel) && keeps(&cx.m[k], rel, rel) && cc.contains_subspace(&n_image);
        let mut chain_maps = true;
        if k < cx.top {
            let delta = cx.hochschild().differential(k);
            let bar = cx.bar().differential(k);
            let (rel_next, cc_next) = (cx.hochschild().space(k + 1), cx.cyclic().space(k + 1));
            stable &= keeps(delta, rel, rel_next) && keeps(bar, rel, rel_next) && keeps(delta, cc, cc_next);
            chain_maps = rel.basis().iter().all(|b| {
                bar.apply(&cx.m[k].apply(b)) == cx.m[k + 1].apply(&delta.apply(b))
                    && cx.n[k + 1].apply(&bar.apply(b)) == delta.apply(&cx.n[k].apply(b))
            });
        }
        degrees.push(SbiDegree {
            degree: k,
            dim_relative: rel.dim(),
            dim_cyclic: cc.dim(),
            dim_image: cs.dim(),
            i_injective,
            defect_at_c: subspace_defect(cc, &ker_m)?,
            defect_at_cr: subspace_defect(cs, &ker_n)?,
            defect_at_cc: cc.dim() - cc.intersection(&n_image)?.dim(),
            stable,
            chain_maps,
        });
    }
    Ok(SbiReport { degrees })
}
