use crate::algebra::{direct_sum, quotient, triangular, Algebra, IdealSpec, SubalgebraSpec};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::exactlin::{Cohomology, LinearMap, Matrix};
use crate::hochschild::{ComparisonMap, Limits};
use crate::theoremlab::{Hypothesis, Verdict};

use super::morphism::{functional_pullback, induced_range, Propagation};
use super::{cyclic_complex, functional_complex, functional_dim};

/// Instances for the cyclic statements.
#[derive(Clone, Debug)]
pub enum CyclicCase {
    /// `HCⁿ(A) = HCⁿ_B(A)` for separable `B`.
    Relative { algebra: Algebra, subalgebra: SubalgebraSpec, max_degree: usize },
    /// `𝓖ₙ : HCⁿ(A/I) → HCⁿ(A)` for separable `I`.
    Quotient { algebra: Algebra, ideal: IdealSpec, max_degree: usize },
    /// `κ : A → D` with `κ` a `dim D × dim A` matrix.
    Morphism { algebra: Algebra, target: Algebra, kappa: Matrix, max_degree: usize },
    /// `HCⁿ(⊕Aᵢ) = ⊕HCⁿ(Aᵢ)`.
    DirectSum { parts: Vec<Algebra>, max_degree: usize },
    /// `HCⁿ(𝓤) = HCⁿ(A₁) ⊕ HCⁿ(A₂)`.
    Triangular { a1: Algebra, a2: Algebra, y: Bimodule, max_degree: usize },
}

impl CyclicCase {
    pub fn theorem_id(&self) -> &'static str {
        match self {
            CyclicCase::Relative { .. } => "4.1",
            CyclicCase::Quotient { .. } => "4.2",
            CyclicCase::Morphism { .. } => "4.3",
            CyclicCase::DirectSum { .. } => "4.4",
            CyclicCase::Triangular { .. } => "4.7",
        }
    }

    pub fn max_degree(&self) -> usize {
        match self {
            CyclicCase::Relative { max_degree, .. }
            | CyclicCase::Quotient { max_degree, .. }
            | CyclicCase::Morphism { max_degree, .. }
            | CyclicCase::DirectSum { max_degree, .. }
            | CyclicCase::Triangular { max_degree, .. } => *max_degree,
        }
    }
}

fn cohomologies(complex: &crate::exactlin::SubComplex, max_n: usize) -> Result<Vec<Cohomology>> {
    (0..=max_n).map(|n| complex.cohomology(n)).collect()
}

fn hc(a: &Algebra, s: Option<&SubalgebraSpec>, max_n: usize, limits: &Limits) -> Result<Vec<Cohomology>> {
    cohomologies(&cyclic_complex(a, s, max_n + 1, limits)?, max_n)
}

fn dims(c: &[Cohomology]) -> Vec<usize> {
    c.iter().map(Cohomology::dim).collect()
}

/// `⊕ᵢ HCⁿ(Aᵢ) → HCⁿ(A)` from the pullbacks along `πᵢ : A → Aᵢ`.
fn summed_pullbacks(
    target: &Algebra,
    parts: &[(&Algebra, Matrix)],
    max_n: usize,
    limits: &Limits,
) -> Result<(Vec<Vec<usize>>, Vec<usize>, Vec<ComparisonMap>)> {
    let tgt = hc(target, None, max_n, limits)?;
    let mut blocks: Vec<Vec<Matrix>> = vec![Vec::new(); max_n + 1];
    let mut part_dims = Vec::new();
    for (part, pi) in parts {
        let src = hc(part, None, max_n, limits)?;
        for (n, m) in induced_range(&src, &tgt, |n| functional_pullback(pi, n))?.into_iter().enumerate() {
            blocks[n].push(m.matrix);
        }
        part_dims.push(dims(&src));
    }
    let maps = blocks.iter().enumerate().map(|(n, b)| ComparisonMap::new(n, Matrix::hstack(tgt[n].dim(), b))).collect();
    Ok((part_dims, dims(&tgt), maps))
}

fn summed(part_dims: &[Vec<usize>], len: usize) -> Vec<usize> {
    (0..len).map(|n| part_dims.iter().map(|d| d[n]).sum()).collect()
}

fn separable(a: Result<Algebra>) -> bool {
    a.map(|a| a.is_separable()).unwrap_or(false)
}

/// Computes both sides of a cyclic statement degree by degree.
pub fn cyclic_theorem_suite(case: &CyclicCase, skip_certification: bool, limits: &Limits) -> Result<Verdict> {
    let max = case.max_degree();
    limits.check_degree(max)?;
    let id = case.theorem_id();
    let all: Vec<usize> = (0..=max).collect();
    match case {
        CyclicCase::Relative { algebra, subalgebra, .. } => {
            let rel = hc(algebra, Some(subalgebra), max, limits)?;
            let abs = hc(algebra, None, max, limits)?;
            let d = algebra.dim();
            let maps = induced_range(&rel, &abs, |n| LinearMap::identity(functional_dim(d, n)))?;
            let hyps = vec![
                Hypothesis::required("A unital", algebra.is_unital()),
                Hypothesis::required("B separable", separable(subalgebra.to_algebra(algebra))),
            ];
            let checks = maps.iter().map(ComparisonMap::is_iso).collect();
            Ok(Verdict::assemble(id, all, checks, hyps, dims(&rel), dims(&abs), skip_certification))
        }
        CyclicCase::Quotient { algebra, ideal, .. } => {
            let q = quotient(algebra, ideal)?;
            let src = hc(&q.algebra, None, max, limits)?;
            let tgt = hc(algebra, None, max, limits)?;
            let maps = induced_range(&src, &tgt, |n| functional_pullback(&q.projection, n))?;
            let i_alg = ideal.to_algebra(algebra);
            let trace_free = i_alg.as_ref().map(|i| i.trace_space().dim() == 0).unwrap_or(false);
            let hyps = vec![
                Hypothesis::required("A unital", algebra.is_unital()),
                Hypothesis::required("I separable", separable(i_alg)),
                Hypothesis::condition("(ii) I^tr = 0", trace_free),
            ];
            let checks = maps
                .iter()
                .map(|m| {
                    let half = if m.degree % 2 == 0 { m.is_injective() } else { m.is_surjective() };
                    half && (!trace_free || m.is_iso())
                })
                .collect();
            Ok(Verdict::assemble(id, all, checks, hyps, dims(&src), dims(&tgt), skip_certification))
        }
        CyclicCase::Morphism { algebra, target, kappa, .. } => {
            if kappa.rows() != target.dim() || kappa.cols() != algebra.dim() {
                return Err(Error::Dimension("κ does not match the algebras".into()));
            }
            if !algebra.is_homomorphism_to(target, kappa) {
                return Err(Error::Precondition("κ is not multiplicative".into()));
            }
            let phi = |n| functional_pullback(kappa, n);
            let h_src = cohomologies(&functional_complex(target, None, max + 1, limits)?, max)?;
            let h_tgt = cohomologies(&functional_complex(algebra, None, max + 1, limits)?, max)?;
            let hc_src = hc(target, None, max, limits)?;
            let hc_tgt = hc(algebra, None, max, limits)?;
            let h_iso: Vec<bool> = induced_range(&h_src, &h_tgt, phi)?.iter().map(ComparisonMap::is_iso).collect();
            let hc_iso: Vec<bool> = induced_range(&hc_src, &hc_tgt, phi)?.iter().map(ComparisonMap::is_iso).collect();
            let p = Propagation::new(h_iso.clone(), hc_iso.clone());
            let degrees: Vec<usize> = (0..max.max(1)).collect();
            let checks = degrees
                .iter()
                .map(|&n| (!p.h_premise || hc_iso[n]) && (!p.hc_premise || h_iso[n]))
                .collect();
            let hyps = vec![
                Hypothesis::required("A unital", algebra.is_unital()),
                Hypothesis::required("D unital", target.is_unital()),
                Hypothesis::condition("H maps invertible", p.h_premise),
                Hypothesis::condition("HC maps invertible", p.hc_premise),
            ];
            let lhs = degrees.iter().map(|&n| hc_src[n].dim()).collect();
            let rhs = degrees.iter().map(|&n| hc_tgt[n].dim()).collect();
            Ok(Verdict::assemble(id, degrees, checks, hyps, lhs, rhs, skip_certification))
        }
        CyclicCase::DirectSum { parts, .. } => {
            let unital = parts.iter().all(Algebra::is_unital);
            if !unital {
                return Err(Error::Precondition("direct sum parts must be unital".into()));
            }
            let ds = direct_sum(parts)?;
            let projections: Vec<(&Algebra, Matrix)> =
                ds.parts.iter().enumerate().map(|(i, p)| (p, ds.projection(i))).collect();
            let (part_dims, total, maps) = summed_pullbacks(&ds.algebra, &projections, max, limits)?;
            let hyps = vec![Hypothesis::required("parts unital", unital)];
            let checks = maps.iter().map(ComparisonMap::is_iso).collect();
            Ok(Verdict::assemble(id, all, checks, hyps, total, summed(&part_dims, max + 1), skip_certification))
        }
        CyclicCase::Triangular { a1, a2, y, .. } => {
            let tri = triangular(a1, a2, y)?;
            let projections = vec![(&tri.a1, tri.projection1()), (&tri.a2, tri.projection2())];
            let (part_dims, total, maps) = summed_pullbacks(&tri.algebra, &projections, max, limits)?;
            let hyps = vec![
                Hypothesis::required("A1 unital", a1.is_unital()),
                Hypothesis::required("A2 unital", a2.is_unital()),
                Hypothesis::required("Y unital", y.is_unital_over(a1, a2)),
            ];
            let checks = maps.iter().map(ComparisonMap::is_iso).collect();
            Ok(Verdict::assemble(id, all, checks, hyps, total, summed(&part_dims, max + 1), skip_certification))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::SparseVec;
    use crate::scalar::Field;
    use crate::theoremlab::Status;

    const Q: Field = Field::Rationals;

    #[test]
    fn direct_sum_of_scalars() {
        let case = CyclicCase::DirectSum { parts: vec![Algebra::scalars(Q), Algebra::scalars(Q)], max_degree: 3 };
        let v = cyclic_theorem_suite(&case, false, &Limits::default()).unwrap();
        assert_eq!(v.lhs_dims, vec![2, 0, 2, 0]);
        assert_eq!(v.overall(), Status::Pass);
    }

    #[test]
    fn triangular_two_by_two() {
        let k = Algebra::scalars(Q);
        let y = Bimodule::regular(&k);
        let case = CyclicCase::Triangular { a1: k.clone(), a2: k, y, max_degree: 3 };
        let v = cyclic_theorem_suite(&case, false, &Limits::default()).unwrap();
        assert_eq!(v.lhs_dims, vec![2, 0, 2, 0]);
        assert_eq!(v.overall(), Status::Pass);
    }

    #[test]
    fn diagonal_of_triangular() {
        let a = Algebra::upper_triangular(2, Q);
        let s = SubalgebraSpec::new(&a, false, vec![SparseVec::unit(0), SparseVec::unit(2)]).unwrap();
        let case = CyclicCase::Relative { algebra: a, subalgebra: s, max_degree: 2 };
        assert_eq!(cyclic_theorem_suite(&case, false, &Limits::default()).unwrap().overall(), Status::Pass);
    }

    #[test]
    fn non_separable_subalgebra_is_not_certified() {
        let a = Algebra::dual_numbers(Q);
        let case = CyclicCase::Relative { algebra: a.clone(), subalgebra: SubalgebraSpec::whole(&a), max_degree: 1 };
        let v = cyclic_theorem_suite(&case, false, &Limits::default()).unwrap();
        assert!(v.status.iter().all(|s| *s != Status::Pass));
    }
}
