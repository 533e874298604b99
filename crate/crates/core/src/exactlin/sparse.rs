//! Sparse vectors and column-stored linear maps.

use std::fmt;

use crate::scalar::Scalar;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Scalar::ONE)] }
    }

    /// Builds from `(index, value)` pairs in any order; duplicates are summed.
    pub fn from_pairs(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &v,
                _ => {
                    if let Some((_, acc)) = entries.last() {
                        if acc.is_zero() {
                            entries.pop();
                        }
                    }
                    entries.push((i, v));
                }
            }
        }
        if matches!(entries.last(), Some((_, v)) if v.is_zero()) {
            entries.pop();
        }
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::ZERO; len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    /// Largest stored index plus one (0 for the zero vector).
    pub fn support_end(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Scalar::ZERO,
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Scalar::ONE, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Scalar::from_int(-1), other)
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let mut acc = Scalar::ZERO;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            match i.cmp(j) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(x * y);
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    /// Moves every index `i` to `f(i)`; `f` must be injective.
    pub fn reindex(&self, mut f: impl FnMut(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect())
    }

    /// Shifts all indices by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    /// Entries with index in `start..end`, re-based to start at 0.
    pub fn window(&self, start: usize, end: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= start && *i < end)
                .map(|(i, v)| (i - start, v.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        SparseVec::from_pairs(iter.into_iter().collect())
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {v}")?;
        }
        write!(f, "}}")
    }
}

/// Linear combination `Σ cᵢ·vᵢ` of sparse vectors.
pub fn combine<'a>(terms: impl IntoIterator<Item = (&'a Scalar, &'a SparseVec)>) -> SparseVec {
    let mut pairs = Vec::new();
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        pairs.extend(v.iter().map(|(i, x)| (*i, c * x)));
    }
    SparseVec::from_pairs(pairs)
}

/// A linear map `K^cols → K^rows` stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl LinearMap {
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.support_end() <= rows));
        LinearMap { rows, columns }
    }

    /// Builds a map from its rows (each a sparse vector over the source).
    pub fn from_rows(cols: usize, rows: &[SparseVec]) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter() {
                buckets[*c].push((r, v.clone()));
            }
        }
        let columns = buckets.into_iter().map(|entries| SparseVec { entries }).collect();
        LinearMap { rows: rows.len(), columns }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { rows: n, columns: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap { rows, columns: vec![SparseVec::zero(); cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        combine(v.iter().map(|(j, c)| (c, &self.columns[*j])))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.cols(), other.rows(), "compose: inner dimensions differ");
        LinearMap { rows: self.rows, columns: other.columns.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        self.axpy(&Scalar::ONE, other)
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Scalar, other: &LinearMap) -> LinearMap {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        LinearMap {
            rows: self.rows,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.axpy(c, b)).collect(),
        }
    }

    pub fn transpose(&self) -> LinearMap {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.iter() {
                buckets[*i].push((j, v.clone()));
            }
        }
        LinearMap {
            rows: self.cols(),
            columns: buckets.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|(i, x)| (*i, Scalar::from_int(*x))).collect())
    }

    #[test]
    fn from_pairs_merges_and_drops_zeros() {
        let a = v(&[(3, 1), (1, 2), (3, -1), (0, 0)]);
        assert_eq!(a, v(&[(1, 2)]));
        assert_eq!(a.nnz(), 1);
        let b = v(&[(2, 1), (2, -1)]);
        assert!(b.is_zero());
    }

    #[test]
    fn axpy_cancels() {
        let a = v(&[(0, 1), (2, 3)]);
        let b = v(&[(2, 1), (5, 1)]);
        assert_eq!(a.axpy(&Scalar::from_int(-3), &b), v(&[(0, 1), (5, -3)]));
        assert_eq!(a.dot(&b), Scalar::from_int(3));
    }

    #[test]
    fn map_compose_and_transpose() {
        // [[1,2],[0,1]]
        let m = LinearMap::from_rows(2, &[v(&[(0, 1), (1, 2)]), v(&[(1, 1)])]);
        assert_eq!(m.apply(&v(&[(1, 1)])), v(&[(0, 2), (1, 1)]));
        let mm = m.compose(&m);
        assert_eq!(mm.apply(&v(&[(1, 1)])), v(&[(0, 4), (1, 1)]));
        assert_eq!(m.transpose().transpose(), m);
    }
}
