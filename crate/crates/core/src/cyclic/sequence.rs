use serde::Serialize;

use crate::algebra::{Algebra, SubalgebraSpec};
use crate::error::{Error, Result};
use crate::exactlin::{induced_map, Cohomology, LongExactSequence, Matrix};
use crate::hochschild::Limits;

use super::CyclicComplexes;

/// The assembled Connes–Tsygan sequence
/// `HCⁿ →Iⁿ Hⁿ →Bⁿ HCⁿ⁻¹ →Sⁿ HCⁿ⁺¹ →Iⁿ⁺¹ …` for `n = 0..=max`.
#[derive(Clone, Debug)]
pub struct CtSequence {
    pub max_degree: usize,
    /// `Hⁿ_S(A)`, `n = 0..=max`.
    pub h: Vec<Cohomology>,
    /// `HCⁿ_S(A)`, `n = 0..=max+1`.
    pub hc: Vec<Cohomology>,
    /// `Iⁿ : HCⁿ → Hⁿ`.
    pub i_maps: Vec<Matrix>,
    /// `Bⁿ : Hⁿ → HCⁿ⁻¹` (zero target for `n = 0`).
    pub b_maps: Vec<Matrix>,
    /// `Sⁿ : HCⁿ⁻¹ → HCⁿ⁺¹` (zero source for `n = 0`).
    pub s_maps: Vec<Matrix>,
    /// `ηⁿ : HCⁿ → HSⁿ⁺¹`.
    pub eta: Vec<Matrix>,
    pub sequence: LongExactSequence,
}

/// Report JSON of a Connes–Tsygan computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CtReport {
    #[serde(rename = "HC")]
    pub hc: Vec<usize>,
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    pub exactness_defects: Vec<usize>,
    pub eta_invertible: Vec<bool>,
    pub maps: CtMaps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CtMaps {
    #[serde(rename = "I")]
    pub i: Vec<Vec<Vec<String>>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Vec<String>>>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<Vec<String>>>,
}

impl CtSequence {
    pub fn hc_dims(&self) -> Vec<usize> {
        self.hc.iter().take(self.max_degree + 1).map(Cohomology::dim).collect()
    }

    pub fn h_dims(&self) -> Vec<usize> {
        self.h.iter().map(Cohomology::dim).collect()
    }

    pub fn defects(&self) -> Vec<usize> {
        self.sequence.defects()
    }

    pub fn is_exact(&self) -> bool {
        self.sequence.is_exact()
    }

    pub fn eta_invertible(&self) -> Vec<bool> {
        self.eta.iter().map(Matrix::is_invertible).collect()
    }

    pub fn report(&self) -> CtReport {
        let strings = |ms: &[Matrix]| ms.iter().map(Matrix::to_strings).collect();
        CtReport {
            hc: self.hc_dims(),
            h: self.h_dims(),
            exactness_defects: self.defects(),
            eta_invertible: self.eta_invertible(),
            maps: CtMaps { i: strings(&self.i_maps), b: strings(&self.b_maps), s: strings(&self.s_maps) },
        }
    }
}

/// Builds both short exact sequences of complexes, extracts `ζⁿ` and
/// `ηⁿ` as connecting maps, and assembles `Iⁿ`, `Bⁿ = (ηⁿ⁻¹)⁻¹∘Hⁿ(M̄)`
/// and `Sⁿ = ζⁿ∘ηⁿ⁻¹` for `n = 0..=max_n`.
pub fn connes_tsygan(a: &Algebra, s: Option<&SubalgebraSpec>, max_n: usize, limits: &Limits) -> Result<CtSequence> {
    if !a.is_unital() {
        return Err(Error::Precondition("the Connes-Tsygan sequence is only certified for unital algebras".into()));
    }
    limits.check_degree(max_n)?;
    let cx = CyclicComplexes::build(a, s, max_n + 2, limits)?;
    for k in 0..=max_n + 1 {
        cx.ses_m.verify(k)?;
        cx.ses_n.verify(k)?;
    }
    let h = (0..=max_n).map(|k| cx.hochschild().cohomology(k)).collect::<Result<Vec<_>>>()?;
    let hc = (0..=max_n + 1).map(|k| cx.cyclic().cohomology(k)).collect::<Result<Vec<_>>>()?;
    let hs = (0..=max_n + 1).map(|k| cx.image().cohomology(k)).collect::<Result<Vec<_>>>()?;
    if hs[0].dim() != 0 {
        return Err(Error::Assembly("HS⁰ ≠ 0, so η⁻¹ : HC⁻¹ → HS⁰ is not invertible".into()));
    }
    let zeta = (0..=max_n)
        .map(|k| cx.ses_m.connecting_map_with(k, &hs[k], &hc[k + 1]))
        .collect::<Result<Vec<_>>>()?;
    let eta = (0..=max_n)
        .map(|k| cx.ses_n.connecting_map_with(k, &hc[k], &hs[k + 1]))
        .collect::<Result<Vec<_>>>()?;
    let eta_inv = eta
        .iter()
        .enumerate()
        .map(|(k, e)| e.inverse().ok_or_else(|| Error::Assembly(format!("η^{k} is not invertible"))))
        .collect::<Result<Vec<_>>>()?;

    let mut i_maps = Vec::new();
    let mut b_maps = Vec::new();
    let mut s_maps = Vec::new();
    let mut seq = LongExactSequence::default();
    for k in 0..=max_n {
        let i = induced_map(&cx.ses_m.inj[k], &hc[k], &h[k])?;
        let m_bar = induced_map(&cx.m[k], &h[k], &hs[k])?;
        let (b, s_map, prev_dim) = if k == 0 {
            (Matrix::zeros(0, h[0].dim()), Matrix::zeros(hc[1].dim(), 0), 0)
        } else {
            (eta_inv[k - 1].mul(&m_bar), zeta[k].mul(&eta[k - 1]), hc[k - 1].dim())
        };
        seq.push_node(format!("HC^{k}"), hc[k].dim());
        seq.push_map(i.clone());
        seq.push_node(format!("H^{k}"), h[k].dim());
        seq.push_map(b.clone());
        seq.push_node(format!("HC^{}", k as isize - 1), prev_dim);
        seq.push_map(s_map.clone());
        i_maps.push(i);
        b_maps.push(b);
        s_maps.push(s_map);
    }
    seq.push_node(format!("HC^{}", max_n + 1), hc[max_n + 1].dim());
    Ok(CtSequence { max_degree: max_n, h, hc, i_maps, b_maps, s_maps, eta, sequence: seq })
}
