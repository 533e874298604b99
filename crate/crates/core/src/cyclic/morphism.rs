use serde::Serialize;

use crate::algebra::{Algebra, SubalgebraSpec};
use crate::error::{Error, Result};
use crate::exactlin::{induced_map, Cohomology, LinearMap, Matrix};
use crate::hochschild::{cochain_pullback, ComparisonMap, Limits};

use super::{connes_tsygan, functional_dim, CtSequence};

/// `f ↦ f ∘ κ^{⊗(n+1)}` on degree-`n` functionals, for `κ` given as a
/// `dim D × dim A` matrix.
pub fn functional_pullback(kappa: &Matrix, n: usize) -> LinearMap {
    cochain_pullback(kappa, &Matrix::identity(1), n + 1)
}

pub(crate) fn induced_range(
    src: &[Cohomology],
    tgt: &[Cohomology],
    phi: impl Fn(usize) -> LinearMap,
) -> Result<Vec<ComparisonMap>> {
    src.iter()
        .zip(tgt)
        .enumerate()
        .map(|(n, (s, t))| Ok(ComparisonMap::new(n, induced_map(&phi(n), s, t)?)))
        .collect()
}

/// One square of the ladder between two Connes–Tsygan sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Square {
    pub degree: usize,
    pub map: &'static str,
    pub commutes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapSummary {
    pub degree: usize,
    pub src_dim: usize,
    pub tgt_dim: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl From<&ComparisonMap> for MapSummary {
    fn from(m: &ComparisonMap) -> Self {
        MapSummary {
            degree: m.degree,
            src_dim: m.src_dim,
            tgt_dim: m.tgt_dim,
            injective: m.is_injective(),
            surjective: m.is_surjective(),
        }
    }
}

/// Both directions of the five-lemma propagation between `H` and `HC`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Propagation {
    pub h_iso: Vec<bool>,
    pub hc_iso: Vec<bool>,
    /// Every `Hⁿ` map is invertible for `n ≤ max`.
    pub h_premise: bool,
    /// Then every `HCⁿ` map is invertible for `n ≤ max − 1`.
    pub hc_conclusion: bool,
    /// Every `HCⁿ` map is invertible for `n ≤ max`.
    pub hc_premise: bool,
    /// Then every `Hⁿ` map is invertible for `n ≤ max − 1`.
    pub h_conclusion: bool,
}

impl Propagation {
    pub fn new(h_iso: Vec<bool>, hc_iso: Vec<bool>) -> Self {
        let max = h_iso.len().min(hc_iso.len()).saturating_sub(1);
        let h_premise = h_iso[..=max].iter().all(|&b| b);
        let hc_premise = hc_iso[..=max].iter().all(|&b| b);
        Propagation {
            hc_conclusion: hc_iso[..max].iter().all(|&b| b),
            h_conclusion: h_iso[..max].iter().all(|&b| b),
            h_iso,
            hc_iso,
            h_premise,
            hc_premise,
        }
    }

    /// Neither implication is contradicted.
    pub fn holds(&self) -> bool {
        (!self.h_premise || self.hc_conclusion) && (!self.hc_premise || self.h_conclusion)
    }
}

/// Vertical maps and squares of a morphism of Connes–Tsygan sequences.
#[derive(Clone, Debug)]
pub struct CtMorphismReport {
    pub max_degree: usize,
    pub source: CtSequence,
    pub target: CtSequence,
    /// `Hⁿ`, `n = 0..=max`.
    pub h_maps: Vec<ComparisonMap>,
    /// `HCⁿ`, `n = 0..=max+1`.
    pub hc_maps: Vec<ComparisonMap>,
    pub squares: Vec<Square>,
    pub propagation: Option<Propagation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CtMorphismSummary {
    pub max_degree: usize,
    pub h_maps: Vec<MapSummary>,
    pub hc_maps: Vec<MapSummary>,
    pub squares: Vec<Square>,
    pub propagation: Option<Propagation>,
}

impl CtMorphismReport {
    pub fn all_commute(&self) -> bool {
        self.squares.iter().all(|s| s.commutes)
    }

    pub fn summary(&self) -> CtMorphismSummary {
        CtMorphismSummary {
            max_degree: self.max_degree,
            h_maps: self.h_maps.iter().map(MapSummary::from).collect(),
            hc_maps: self.hc_maps.iter().map(MapSummary::from).collect(),
            squares: self.squares.clone(),
            propagation: self.propagation.clone(),
        }
    }
}

fn ladder(source: CtSequence, target: CtSequence, phi: impl Fn(usize) -> LinearMap) -> Result<CtMorphismReport> {
    let max = source.max_degree;
    let h_maps = induced_range(&source.h, &target.h, &phi)?;
    let hc_maps = induced_range(&source.hc, &target.hc, &phi)?;
    let mut squares = Vec::new();
    for n in 0..=max {
        let (vh, vc) = (&h_maps[n].matrix, &hc_maps[n].matrix);
        squares.push(Square { degree: n, map: "I", commutes: vh.mul(&source.i_maps[n]) == target.i_maps[n].mul(vc) });
        if n > 0 {
            let (below, above) = (&hc_maps[n - 1].matrix, &hc_maps[n + 1].matrix);
            squares.push(Square {
                degree: n,
                map: "B",
                commutes: below.mul(&source.b_maps[n]) == target.b_maps[n].mul(vh),
            });
            squares.push(Square {
                degree: n,
                map: "S",
                commutes: above.mul(&source.s_maps[n]) == target.s_maps[n].mul(below),
            });
        }
    }
    Ok(CtMorphismReport { max_degree: max, source, target, h_maps, hc_maps, squares, propagation: None })
}

/// The ladder from the `S`-relative sequence to the absolute one,
/// with verticals induced by inclusion of cochains.
pub fn ct_morphism(a: &Algebra, s: &SubalgebraSpec, max_n: usize, limits: &Limits) -> Result<CtMorphismReport> {
    let rel = connes_tsygan(a, Some(s), max_n, limits)?;
    let abs = connes_tsygan(a, None, max_n, limits)?;
    let d = a.dim();
    ladder(rel, abs, |n| LinearMap::identity(functional_dim(d, n)))
}

/// The ladder from the sequence of `D` to that of `A` induced by a
/// homomorphism `κ : A → D` (a `dim D × dim A` matrix), with the
/// propagation verdict between the `H` and `HC` verticals.
pub fn ct_morphism_hom(
    a: &Algebra,
    d: &Algebra,
    kappa: &Matrix,
    max_n: usize,
    limits: &Limits,
) -> Result<CtMorphismReport> {
    if kappa.rows() != d.dim() || kappa.cols() != a.dim() {
        return Err(Error::Dimension(format!(
            "κ must be {}×{}, got {}×{}",
            d.dim(),
            a.dim(),
            kappa.rows(),
            kappa.cols()
        )));
    }
    if !a.is_homomorphism_to(d, kappa) {
        return Err(Error::Precondition("κ is not multiplicative".into()));
    }
    let src = connes_tsygan(d, None, max_n, limits)?;
    let tgt = connes_tsygan(a, None, max_n, limits)?;
    let mut report = ladder(src, tgt, |n| functional_pullback(kappa, n))?;
    let h_iso = report.h_maps.iter().map(ComparisonMap::is_iso).collect();
    let hc_iso = report.hc_maps[..=max_n].iter().map(ComparisonMap::is_iso).collect();
    report.propagation = Some(Propagation::new(h_iso, hc_iso));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_sum;
    use crate::exactlin::SparseVec;
    use crate::scalar::Field;

    const Q: Field = Field::Rationals;

    #[test]
    fn unit_scalars_give_identity_verticals() {
        let a = Algebra::dual_numbers(Q);
        let r = ct_morphism(&a, &SubalgebraSpec::unit_scalars(&a), 2, &Limits::default()).unwrap();
        assert!(r.all_commute());
        assert!(r.h_maps.iter().chain(&r.hc_maps).all(|m| m.matrix.is_identity()));
    }

    #[test]
    fn triangular_with_diagonal() {
        let a = Algebra::upper_triangular(2, Q);
        let s = SubalgebraSpec::new(&a, false, vec![SparseVec::unit(0), SparseVec::unit(2)]).unwrap();
        let r = ct_morphism(&a, &s, 3, &Limits::default()).unwrap();
        assert!(r.all_commute());
        assert!(r.hc_maps.iter().all(ComparisonMap::is_iso));
    }

    #[test]
    fn projection_onto_scalars() {
        let ds = direct_sum(&[Algebra::matrix(2, Q), Algebra::scalars(Q)]).unwrap();
        let r = ct_morphism_hom(&ds.algebra, &ds.parts[1], &ds.projection(1), 2, &Limits::default()).unwrap();
        assert!(r.all_commute());
        let hc0 = &r.hc_maps[0];
        assert_eq!((hc0.src_dim, hc0.tgt_dim), (1, 2));
        assert!(hc0.is_injective() && !hc0.is_surjective());
        assert!(r.propagation.unwrap().holds());
    }

    #[test]
    fn non_multiplicative_kappa_is_refused() {
        let a = Algebra::scalars(Q);
        let kappa = Matrix::from_ints(&[&[2]]);
        assert!(matches!(ct_morphism_hom(&a, &a, &kappa, 1, &Limits::default()), Err(Error::Precondition(_))));
    }
}
