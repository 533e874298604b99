use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

use super::echelon::Echelon;
use super::sparse::{LinearMap, SparseVec};
use super::subspace::Subspace;

/// A dense matrix over `Q(i)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::ONE;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|x| Scalar::from_int(*x)).collect()).collect())
    }

    pub fn from_sparse_rows(cols: usize, rows: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter() {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }

    pub fn from_sparse_columns(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter() {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_linear_map(map: &LinearMap) -> Self {
        Self::from_sparse_columns(map.rows(), map.columns())
    }

    pub fn to_linear_map(&self) -> LinearMap {
        LinearMap::from_columns(self.rows, (0..self.cols).map(|j| self.column_sparse(j)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sparse(&self, i: usize) -> SparseVec {
        SparseVec::from_dense(self.row(i))
    }

    pub fn column_sparse(&self, j: usize) -> SparseVec {
        (0..self.rows).map(|i| (i, self[(i, j)].clone())).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product: inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert(&self.row_sparse(i));
        }
        ech
    }

    /// Reduced row echelon form (same shape; zero rows last) and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let rows = self.echelon().rref_rows();
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().expect("nonzero").0).collect();
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter() {
                out[(i, *j)] = x.clone();
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// `{v : self·v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        nullspace_of_rows(self.cols, (0..self.rows).map(|i| self.row_sparse(i)))
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut ech = Echelon::new(2 * n);
        for i in 0..n {
            let mut pairs: Vec<(usize, Scalar)> = self.row_sparse(i).iter().cloned().collect();
            pairs.push((n + i, Scalar::ONE));
            ech.insert(&SparseVec::from_pairs(pairs));
        }
        let rows = ech.rref_rows();
        if rows.len() < n || rows.iter().take(n).enumerate().any(|(i, r)| r.leading().map(|l| l.0) != Some(i)) {
            return None;
        }
        Some(Matrix::from_sparse_rows(n, &rows.iter().map(|r| r.window(n, 2 * n)).collect::<Vec<_>>()))
    }

    /// Side-by-side concatenation; all blocks must have `rows` rows.
    pub fn hstack(rows: usize, blocks: &[Matrix]) -> Matrix {
        assert!(blocks.iter().all(|b| b.rows == rows), "blocks differ in row count");
        let cols: Vec<SparseVec> = blocks.iter().flat_map(|b| (0..b.cols).map(|j| b.column_sparse(j))).collect();
        Self::from_sparse_columns(rows, &cols)
    }

    /// Entries as strings, one inner list per row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Nullspace of the matrix whose rows are given, over `cols` unknowns.
pub fn nullspace_of_rows(cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Subspace {
    let mut ech = Echelon::new(cols);
    for r in rows {
        ech.insert(&r);
    }
    let rref = ech.rref_rows();
    let mut is_pivot = vec![false; cols];
    for r in &rref {
        is_pivot[r.leading().expect("nonzero").0] = true;
    }
    // Free column f: xf = 1, x_p = −R[p][f] for each pivot row.
    let mut by_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
    for r in &rref {
        let p = r.leading().expect("nonzero").0;
        for (c, x) in r.iter() {
            if *c != p {
                by_col[*c].push((p, -x));
            }
        }
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut pairs = std::mem::take(&mut by_col[f]);
        pairs.push((f, Scalar::ONE));
        basis.push(SparseVec::from_pairs(pairs));
    }
    Subspace::span(cols, &basis)
}
