//! Incremental row echelon form with optional provenance tracking.
//!
//! Every stored row has coefficient 1 at its own pivot column and 0 at the
//! pivot columns of the rows stored before it. Rows are only forward-reduced
//! while inserting; [`Echelon::rref_rows`] performs the back-substitution on
//! demand.
//!
//! By default the pivot of a new row is its leading column, which makes
//! [`Echelon::rref_rows`] the canonical reduced row echelon form. With
//! [`Echelon::with_free_pivots`] the pivot is the entry of smallest height
//! instead, which keeps coefficients small on dense input; use it when only
//! spans, kernels or solutions matter, not the canonical basis.
//!
//! When tags are supplied, each row remembers the linear combination of
//! inserted tags that produced it. Reducing a vector then also reports
//! which combination of inserted vectors was subtracted, which is how
//! kernels, lifts and quotient coordinates are computed.

use crate::scalar::Scalar;

use super::sparse::SparseVec;

const NO_ROW: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot_row: Vec<u32>,
    pivot_col: Vec<usize>,
    free: bool,
}

/// Outcome of [`Echelon::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent and now leads row `row` with pivot `pivot`.
    New { row: usize, pivot: usize },
    /// The vector was dependent; the tag combination sums to zero.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), tags: Vec::new(), pivot_row: vec![NO_ROW; dim], pivot_col: Vec::new(), free: false }
    }

    pub fn with_free_pivots(dim: usize) -> Self {
        Echelon { free: true, ..Echelon::new(dim) }
    }

    pub fn has_free_pivots(&self) -> bool {
        self.free
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_of(&self, row: usize) -> usize {
        self.pivot_col[row]
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_ROW
    }

    /// Reduces `v` against the stored rows. Returns the residual and
    /// `tag − Σ cᵣ·tagᵣ` where `v − Σ cᵣ·rowᵣ` is the residual.
    pub fn reduce_tagged(&self, v: &SparseVec, tag: &SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        let mut tag = tag.clone();
        // Subtracting row r only creates entries at pivots of later rows,
        // so eliminating the earliest row first terminates.
        loop {
            let hit = res
                .iter()
                .filter(|(c, _)| self.pivot_row[*c] != NO_ROW)
                .min_by_key(|(c, _)| self.pivot_row[*c])
                .map(|(c, x)| (self.pivot_row[*c] as usize, x.clone()));
            let Some((r, coef)) = hit else { break };
            let neg = -&coef;
            res = res.axpy(&neg, &self.rows[r]);
            if !self.tags[r].is_zero() {
                tag = tag.axpy(&neg, &self.tags[r]);
            }
        }
        (res, tag)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tagged(v, &SparseVec::zero()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v` (tagged by `tag`).
    pub fn insert_tagged(&mut self, v: &SparseVec, tag: &SparseVec) -> Insert {
        debug_assert!(v.support_end() <= self.dim, "vector exceeds ambient dimension");
        let (res, tag) = self.reduce_tagged(v, tag);
        let choice = if self.free {
            res.iter().min_by_key(|(c, x)| (x.height(), *c)).map(|(c, x)| (*c, x))
        } else {
            res.leading()
        };
        match choice {
            None => Insert::Dependent(tag),
            Some((pivot, lead)) => {
                let inv = lead.inv();
                let row = res.scale(&inv);
                let tag = tag.scale(&inv);
                let idx = self.rows.len();
                self.pivot_row[pivot] = idx as u32;
                self.pivot_col.push(pivot);
                self.rows.push(row);
                self.tags.push(tag);
                Insert::New { row: idx, pivot }
            }
        }
    }

    pub fn insert(&mut self, v: &SparseVec) -> bool {
        matches!(self.insert_tagged(v, &SparseVec::zero()), Insert::New { .. })
    }

    /// Fully reduced rows (zero at every other pivot), sorted by pivot column.
    /// Without free pivots this is the reduced row echelon form.
    pub fn rref_rows(&self) -> Vec<SparseVec> {
        let mut reduced: Vec<Option<SparseVec>> = vec![None; self.rows.len()];
        for r in (0..self.rows.len()).rev() {
            let p = self.pivot_col[r];
            let row = &self.rows[r];
            let mut out = row.clone();
            for (c, x) in row.iter() {
                if *c == p {
                    continue;
                }
                let q = self.pivot_row[*c];
                if q != NO_ROW {
                    let other = reduced[q as usize].as_ref().expect("later rows reduced first");
                    out = out.axpy(&-x, other);
                }
            }
            reduced[r] = Some(out);
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivot_col[r]);
        order.into_iter().map(|r| reduced[r].take().expect("every row reduced")).collect()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivot_col.clone();
        p.sort_unstable();
        p
    }
}

/// Kernel of the map `eⱼ ↦ images[j]`, as vectors over the source coordinates.
pub fn kernel_of_images(target_dim: usize, images: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::with_free_pivots(target_dim);
    let mut kernel = Vec::new();
    for (j, w) in images.iter().enumerate() {
        if let Insert::Dependent(rel) = ech.insert_tagged(w, &SparseVec::unit(j)) {
            kernel.push(rel);
        }
    }
    kernel
}

/// Rank of a family of vectors.
pub fn rank_of(dim: usize, vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::with_free_pivots(dim);
    vectors.iter().filter(|v| ech.insert(v)).count()
}

/// A solver for `Σ xⱼ·images[j] = target`, reusable across many targets.
#[derive(Clone, Debug)]
pub struct Solver {
    ech: Echelon,
    n_unknowns: usize,
}

impl Solver {
    pub fn new(target_dim: usize, images: &[SparseVec]) -> Self {
        let mut ech = Echelon::with_free_pivots(target_dim);
        for (j, w) in images.iter().enumerate() {
            ech.insert_tagged(w, &SparseVec::unit(j));
        }
        Solver { ech, n_unknowns: images.len() }
    }

    pub fn unknowns(&self) -> usize {
        self.n_unknowns
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// One solution, if any. The solution is the canonical one produced by
    /// greedy insertion order: later dependent images get coefficient 0.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let (res, tag) = self.ech.reduce_tagged(target, &SparseVec::zero());
        if !res.is_zero() {
            return None;
        }
        // target − Σ c·row = 0 and tag = −Σ c·tagᵣ, so target = −tag·images.
        Some(tag.neg())
    }
}

/// One solution of the affine system `rows·x = rhs` over `unknowns`
/// variables (free variables set to zero), or `None` if inconsistent.
pub fn solve_affine(unknowns: usize, rows: &[SparseVec], rhs: &[Scalar]) -> Option<SparseVec> {
    assert_eq!(rows.len(), rhs.len());
    let mut ech = Echelon::new(unknowns + 1);
    for (r, b) in rows.iter().zip(rhs) {
        let mut pairs: Vec<(usize, Scalar)> = r.iter().cloned().collect();
        pairs.push((unknowns, b.clone()));
        ech.insert(&SparseVec::from_pairs(pairs));
    }
    if ech.is_pivot(unknowns) {
        return None;
    }
    let pairs = ech
        .rref_rows()
        .into_iter()
        .map(|row| (row.leading().expect("nonzero").0, row.get(unknowns)))
        .collect();
    Some(SparseVec::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|x| Scalar::from_int(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_of_rank_one() {
        let mut e = Echelon::new(2);
        e.insert(&v(&[2, 4]));
        e.insert(&v(&[1, 2]));
        assert_eq!(e.rank(), 1);
        assert_eq!(e.rref_rows(), vec![v(&[1, 2])]);
    }

    #[test]
    fn rref_back_substitutes() {
        let mut e = Echelon::new(3);
        e.insert(&v(&[1, 1, 1]));
        e.insert(&v(&[0, 1, 2]));
        let rows = e.rref_rows();
        assert_eq!(rows, vec![v(&[1, 0, -1]), v(&[0, 1, 2])]);
    }

    #[test]
    fn free_pivots_prefer_small_entries() {
        let mut e = Echelon::with_free_pivots(3);
        e.insert(&v(&[7, 1, 5]));
        assert_eq!(e.pivots(), vec![1]);
        e.insert(&v(&[3, 2, 1]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[10, 3, 6])));
        assert!(!e.contains(&v(&[0, 0, 1])));
        let rows = e.rref_rows();
        let pivots = e.pivots();
        for (row, p) in rows.iter().zip(&pivots) {
            assert!(row.get(*p).is_one());
            assert!(pivots.iter().filter(|q| *q != p).all(|q| row.get(*q).is_zero()));
        }
    }

    #[test]
    fn kernel_relations() {
        let images = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let ker = kernel_of_images(2, &images);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], v(&[-1, -1, 1]));
    }

    #[test]
    fn solver_finds_preimage() {
        let images = vec![v(&[1, 0, 0]), v(&[1, 1, 0])];
        let s = Solver::new(3, &images);
        let x = s.solve(&v(&[3, 2, 0])).unwrap();
        assert_eq!(x, v(&[1, 2]));
        assert!(s.solve(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn affine_systems() {
        // x + y = 3, x - y = 1
        let rows = vec![v(&[1, 1]), v(&[1, -1])];
        let x = solve_affine(2, &rows, &[Scalar::from_int(3), Scalar::from_int(1)]).unwrap();
        assert_eq!(x, v(&[2, 1]));
        // x + y = 1, 2x + 2y = 3
        let rows = vec![v(&[1, 1]), v(&[2, 2])];
        assert!(solve_affine(2, &rows, &[Scalar::from_int(1), Scalar::from_int(3)]).is_none());
    }
}
