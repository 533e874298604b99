//! Cochain complexes realised inside coordinate spaces, their cohomology,
//! induced maps, and the long exact sequence of a short exact sequence.

use crate::error::{Error, Result};

use super::echelon::{kernel_of_images, Echelon, Insert, Solver};
use super::sparse::{combine, LinearMap, SparseVec};
use super::subspace::Subspace;
use super::Matrix;

/// A cochain complex whose degree-`n` space is a subspace of `K^{dₙ}`
/// and whose differential is the restriction of an ambient map.
///
/// `spaces` runs over degrees `0..=top`; `differentials[n]` maps degree
/// `n` to degree `n + 1`, so there are `top` of them and cohomology is
/// available in degrees `0..top`.
#[derive(Clone, Debug)]
pub struct SubComplex {
    spaces: Vec<Subspace>,
    differentials: Vec<LinearMap>,
}

impl SubComplex {
    pub fn new(spaces: Vec<Subspace>, differentials: Vec<LinearMap>) -> Result<Self> {
        if spaces.len() != differentials.len() + 1 {
            return Err(Error::Dimension(format!(
                "{} spaces need {} differentials, got {}",
                spaces.len(),
                spaces.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.cols() != spaces[n].ambient_dim() || d.rows() != spaces[n + 1].ambient_dim() {
                return Err(Error::Dimension(format!(
                    "differential {n} is {}x{}, ambient spaces are {} -> {}",
                    d.rows(),
                    d.cols(),
                    spaces[n].ambient_dim(),
                    spaces[n + 1].ambient_dim()
                )));
            }
        }
        Ok(SubComplex { spaces, differentials })
    }

    /// Highest degree whose cohomology can be computed.
    pub fn max_cohomology_degree(&self) -> Option<usize> {
        self.differentials.len().checked_sub(1)
    }

    pub fn top(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, n: usize) -> &Subspace {
        &self.spaces[n]
    }

    pub fn differential(&self, n: usize) -> &LinearMap {
        &self.differentials[n]
    }

    /// Checks `d(Vₙ) ⊆ Vₙ₊₁` and `dₙ₊₁∘dₙ = 0` on `Vₙ`.
    pub fn check(&self, n: usize) -> Result<()> {
        let d = &self.differentials[n];
        for b in self.spaces[n].basis() {
            let img = d.apply(b);
            if !self.spaces[n + 1].contains(&img) {
                return Err(Error::Containment(format!("differential {n} leaves the subcomplex")));
            }
            if let Some(d2) = self.differentials.get(n + 1) {
                if !d2.apply(&img).is_zero() {
                    return Err(Error::ChainMap(format!("d{} ∘ d{n} ≠ 0", n + 1)));
                }
            }
        }
        Ok(())
    }

    /// Cohomology in degree `n`.
    pub fn cohomology(&self, n: usize) -> Result<Cohomology> {
        if n >= self.differentials.len() {
            return Err(Error::Dimension(format!(
                "cohomology in degree {n} needs the differential out of degree {n}"
            )));
        }
        let space = &self.spaces[n];
        let d = &self.differentials[n];
        let images: Vec<SparseVec> = space.basis().iter().map(|b| d.apply(b)).collect();
        let relations = kernel_of_images(d.rows(), &images);
        let cocycle_vecs: Vec<SparseVec> = relations
            .iter()
            .map(|c| combine(c.iter().map(|(j, x)| (x, &space.basis()[*j]))))
            .collect();
        let cocycles = Subspace::span(space.ambient_dim(), &cocycle_vecs);
        let coboundaries = if n == 0 {
            Subspace::zero(space.ambient_dim())
        } else {
            let prev = &self.spaces[n - 1];
            let dp = &self.differentials[n - 1];
            let imgs: Vec<SparseVec> = prev.basis().iter().map(|b| dp.apply(b)).collect();
            Subspace::span(space.ambient_dim(), &imgs)
        };
        Cohomology::new(n, cocycles, coboundaries)
    }
}

/// `Hⁿ = Zⁿ / Nⁿ` with canonical representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: usize,
    cocycles: Subspace,
    coboundaries: Subspace,
    representatives: Vec<SparseVec>,
    classifier: Echelon,
}

impl Cohomology {
    /// Representatives are the RREF cocycle basis vectors that stay
    /// independent modulo the coboundaries, taken in pivot order.
    pub fn new(degree: usize, cocycles: Subspace, coboundaries: Subspace) -> Result<Self> {
        if !cocycles.contains_subspace(&coboundaries) {
            return Err(Error::Containment(format!(
                "coboundaries are not cocycles in degree {degree}"
            )));
        }
        let mut classifier = Echelon::with_free_pivots(cocycles.ambient_dim());
        for b in coboundaries.basis() {
            classifier.insert(b);
        }
        let mut representatives = Vec::new();
        for z in cocycles.basis() {
            let tag = SparseVec::unit(representatives.len());
            if let Insert::New { .. } = classifier.insert_tagged(z, &tag) {
                representatives.push(z.clone());
            }
        }
        Ok(Cohomology { degree, cocycles, coboundaries, representatives, classifier })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn dim_cocycles(&self) -> usize {
        self.cocycles.dim()
    }

    pub fn dim_coboundaries(&self) -> usize {
        self.coboundaries.dim()
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    /// Coordinates of the class of the cocycle `z` in the representative basis.
    pub fn class_of(&self, z: &SparseVec) -> Result<SparseVec> {
        let (res, tag) = self.classifier.reduce_tagged(z, &SparseVec::zero());
        if !res.is_zero() {
            return Err(Error::ChainMap(format!("vector is not a cocycle in degree {}", self.degree)));
        }
        Ok(tag.neg())
    }

    pub fn is_coboundary(&self, z: &SparseVec) -> Result<bool> {
        Ok(self.class_of(z)?.is_zero())
    }

    /// Cocycle `Σ cᵢ·repᵢ`.
    pub fn cocycle(&self, class: &SparseVec) -> SparseVec {
        combine(class.iter().map(|(i, c)| (c, &self.representatives[*i])))
    }
}

/// Matrix of the map induced by `phi` from `src` to `tgt` (columns are
/// images of the source representatives).
pub fn induced_map(phi: &LinearMap, src: &Cohomology, tgt: &Cohomology) -> Result<Matrix> {
    let cols = src
        .representatives()
        .iter()
        .map(|r| tgt.class_of(&phi.apply(r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_sparse_columns(tgt.dim(), &cols))
}

/// Checks that `phi_n`, `phi_{n+1}` form a chain map between the two
/// complexes in degree `n`: `phiₙ(Vₙ) ⊆ Wₙ` and `φ∘d = d'∘φ` on `Vₙ`.
pub fn check_chain_map(
    src: &SubComplex,
    tgt: &SubComplex,
    phi_n: &LinearMap,
    phi_next: &LinearMap,
    n: usize,
) -> Result<()> {
    for b in src.space(n).basis() {
        let image = phi_n.apply(b);
        if !tgt.space(n).contains(&image) {
            return Err(Error::ChainMap(format!("degree {n}: image leaves the target complex")));
        }
        let left = phi_next.apply(&src.differential(n).apply(b));
        let right = tgt.differential(n).apply(&image);
        if left != right {
            return Err(Error::ChainMap(format!("degree {n}: square does not commute")));
        }
    }
    Ok(())
}

/// Checks the chain-map property in degree `n` and returns the induced map on `Hⁿ`.
pub fn induced_map_on_cohomology(
    chain_map: &[LinearMap],
    src: &SubComplex,
    tgt: &SubComplex,
    n: usize,
) -> Result<Matrix> {
    check_chain_map(src, tgt, &chain_map[n], &chain_map[n + 1], n)?;
    if n > 0 {
        check_chain_map(src, tgt, &chain_map[n - 1], &chain_map[n], n - 1)?;
    }
    induced_map(&chain_map[n], &src.cohomology(n)?, &tgt.cohomology(n)?)
}

/// A degreewise short exact sequence of complexes `0 → C′ → C → C″ → 0`.
#[derive(Clone, Debug)]
pub struct ComplexSes {
    pub sub: SubComplex,
    pub mid: SubComplex,
    pub quo: SubComplex,
    /// `iₙ : C′ⁿ → Cⁿ` in ambient coordinates.
    pub inj: Vec<LinearMap>,
    /// `pₙ : Cⁿ → C″ⁿ` in ambient coordinates.
    pub proj: Vec<LinearMap>,
}

impl ComplexSes {
    /// Checks injectivity, surjectivity, `im i = ker p` and both commuting squares in degree `n`.
    pub fn verify(&self, n: usize) -> Result<()> {
        let (sub, mid, quo) = (self.sub.space(n), self.mid.space(n), self.quo.space(n));
        let i_imgs: Vec<SparseVec> = sub.basis().iter().map(|b| self.inj[n].apply(b)).collect();
        let image_i = Subspace::span(mid.ambient_dim(), &i_imgs);
        if image_i.dim() != sub.dim() {
            return Err(Error::Exactness(format!("degree {n}: i is not injective")));
        }
        if !mid.contains_subspace(&image_i) {
            return Err(Error::Exactness(format!("degree {n}: i leaves the middle complex")));
        }
        let p_imgs: Vec<SparseVec> = mid.basis().iter().map(|b| self.proj[n].apply(b)).collect();
        let image_p = Subspace::span(quo.ambient_dim(), &p_imgs);
        if image_p != *quo {
            return Err(Error::Exactness(format!("degree {n}: p is not onto the quotient complex")));
        }
        let ker = kernel_of_images(quo.ambient_dim(), &p_imgs);
        let ker_vecs: Vec<SparseVec> =
            ker.iter().map(|c| combine(c.iter().map(|(j, x)| (x, &mid.basis()[*j])))).collect();
        let kernel_p = Subspace::span(mid.ambient_dim(), &ker_vecs);
        if kernel_p != image_i {
            return Err(Error::Exactness(format!("degree {n}: im i ≠ ker p")));
        }
        if n < self.sub.differentials.len() && n + 1 < self.inj.len() {
            check_chain_map(&self.sub, &self.mid, &self.inj[n], &self.inj[n + 1], n)?;
        }
        if n < self.mid.differentials.len() && n + 1 < self.proj.len() {
            check_chain_map(&self.mid, &self.quo, &self.proj[n], &self.proj[n + 1], n)?;
        }
        Ok(())
    }

    /// Snake-lemma map `Hⁿ(C″) → Hⁿ⁺¹(C′)` using precomputed cohomology.
    pub fn connecting_map_with(&self, n: usize, h_quo: &Cohomology, h_sub_next: &Cohomology) -> Result<Matrix> {
        let lifter = Lifter::new(self, n);
        let cols = h_quo
            .representatives()
            .iter()
            .map(|z| {
                let y = lifter.lift(z)?;
                let x = lifter.pull_back(&self.mid.differential(n).apply(&y))?;
                h_sub_next.class_of(&x)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_sparse_columns(h_sub_next.dim(), &cols))
    }

    pub fn connecting_map(&self, n: usize) -> Result<Matrix> {
        let h_quo = self.quo.cohomology(n)?;
        let h_sub = self.sub.cohomology(n + 1)?;
        self.connecting_map_with(n, &h_quo, &h_sub)
    }

    /// The long exact sequence `H⁰(C′) → H⁰(C) → H⁰(C″) → H¹(C′) → …`
    /// through `Hᵐᵃˣ(C″)`.
    pub fn long_exact_sequence(&self, max_n: usize) -> Result<LongExactSequence> {
        let mut seq = LongExactSequence::default();
        let mut h_sub = self.sub.cohomology(0)?;
        for n in 0..=max_n {
            let h_mid = self.mid.cohomology(n)?;
            let h_quo = self.quo.cohomology(n)?;
            let f = induced_map(&self.inj[n], &h_sub, &h_mid)?;
            let g = induced_map(&self.proj[n], &h_mid, &h_quo)?;
            seq.push_node(format!("H{n}(sub)"), h_sub.dim());
            seq.push_map(f);
            seq.push_node(format!("H{n}(mid)"), h_mid.dim());
            seq.push_map(g);
            seq.push_node(format!("H{n}(quo)"), h_quo.dim());
            if n < max_n {
                let h_next = self.sub.cohomology(n + 1)?;
                seq.push_map(self.connecting_map_with(n, &h_quo, &h_next)?);
                h_sub = h_next;
            }
        }
        Ok(seq)
    }
}

/// Lifting through `pₙ` and pulling back through `iₙ₊₁`.
struct Lifter<'a> {
    ses: &'a ComplexSes,
    n: usize,
    lift: Solver,
    pull: Solver,
}

impl<'a> Lifter<'a> {
    fn new(ses: &'a ComplexSes, n: usize) -> Self {
        let mid = ses.mid.space(n);
        let p_imgs: Vec<SparseVec> = mid.basis().iter().map(|b| ses.proj[n].apply(b)).collect();
        let sub = ses.sub.space(n + 1);
        let i_imgs: Vec<SparseVec> = sub.basis().iter().map(|b| ses.inj[n + 1].apply(b)).collect();
        Lifter {
            ses,
            n,
            lift: Solver::new(ses.quo.space(n).ambient_dim(), &p_imgs),
            pull: Solver::new(ses.mid.space(n + 1).ambient_dim(), &i_imgs),
        }
    }

    fn lift(&self, z: &SparseVec) -> Result<SparseVec> {
        let c = self
            .lift
            .solve(z)
            .ok_or_else(|| Error::Exactness(format!("degree {}: cannot lift through p", self.n)))?;
        Ok(self.ses.mid.space(self.n).vector(&c))
    }

    fn pull_back(&self, y: &SparseVec) -> Result<SparseVec> {
        let c = self
            .pull
            .solve(y)
            .ok_or_else(|| Error::Exactness(format!("degree {}: δ(lift) is not in the image of i", self.n + 1)))?;
        Ok(self.ses.sub.space(self.n + 1).vector(&c))
    }
}

/// A finite stretch of a long sequence: nodes joined by matrices.
#[derive(Clone, Debug, Default)]
pub struct LongExactSequence {
    labels: Vec<String>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl LongExactSequence {
    pub fn push_node(&mut self, label: impl Into<String>, dim: usize) {
        self.labels.push(label.into());
        self.dims.push(dim);
    }

    /// Map from the last pushed node to the next one.
    pub fn push_map(&mut self, m: Matrix) {
        self.maps.push(m);
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Exactness defect at every node that has an outgoing map. The first
    /// node's incoming map is taken to be zero.
    pub fn defects(&self) -> Vec<usize> {
        (0..self.maps.len())
            .map(|k| {
                let incoming = if k == 0 { Matrix::zeros(self.dims[0], 0) } else { self.maps[k - 1].clone() };
                exactness_defect(&incoming, &self.maps[k])
            })
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        self.defects().iter().all(|&d| d == 0)
    }
}

/// `dim(ker g) + dim(im f) − 2·dim(ker g ∩ im f)` for `U →f V →g W`;
/// zero exactly when `im f = ker g`.
pub fn exactness_defect(f: &Matrix, g: &Matrix) -> usize {
    let v = g.cols();
    assert_eq!(f.rows(), v, "maps do not compose");
    let image = Subspace::span(v, &(0..f.cols()).map(|j| f.column_sparse(j)).collect::<Vec<_>>());
    let kernel = g.nullspace();
    let both = image.intersection(&kernel).expect("same ambient");
    kernel.dim() + image.dim() - 2 * both.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|x| Scalar::from_int(*x)).collect::<Vec<_>>())
    }

    /// 0 → K →(1) K → 0 in degrees 0, 1 (acyclic), padded with a zero degree 2.
    fn interval() -> SubComplex {
        let spaces = vec![Subspace::full(1), Subspace::full(1), Subspace::full(1)];
        let d0 = LinearMap::from_columns(1, vec![v(&[1])]);
        let d1 = LinearMap::zero(1, 1);
        SubComplex::new(spaces, vec![d0, d1]).unwrap()
    }

    #[test]
    fn acyclic_interval() {
        let c = interval();
        assert_eq!(c.cohomology(0).unwrap().dim(), 0);
        let h1 = c.cohomology(1).unwrap();
        assert_eq!((h1.dim_cocycles(), h1.dim_coboundaries(), h1.dim()), (1, 1, 0));
    }

    #[test]
    fn identity_and_zero_induce_identity_and_zero() {
        let spaces = vec![Subspace::full(2), Subspace::full(1)];
        let c = SubComplex::new(spaces, vec![LinearMap::zero(1, 2)]).unwrap();
        let h = c.cohomology(0).unwrap();
        assert!(induced_map(&LinearMap::identity(2), &h, &h).unwrap().is_identity());
        assert!(induced_map(&LinearMap::zero(2, 2), &h, &h).unwrap().is_zero());
    }

    #[test]
    fn exactness_defect_counts() {
        let f = Matrix::from_ints(&[&[1], &[0]]);
        let g = Matrix::from_ints(&[&[0, 1]]);
        assert_eq!(exactness_defect(&f, &g), 0);
        let g2 = Matrix::from_ints(&[&[0, 0]]);
        assert_eq!(exactness_defect(&f, &g2), 1);
    }
}
