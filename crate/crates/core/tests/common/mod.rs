//! Brute-force reference computations used as test oracles.
//!
//! Nothing here goes through the library's linear algebra: coboundaries are
//! evaluated pointwise from the structure constants and ranks come from a
//! plain dense Gaussian elimination over `BigRational`.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use relcoh_core::algebra::Algebra;

/// Structure constants `c[i][j][k]` of a rational algebra.
pub struct Table {
    pub d: usize,
    c: Vec<Vec<Vec<BigRational>>>,
}

impl Table {
    pub fn new(a: &Algebra) -> Self {
        let d = a.dim();
        let c = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d)
                            .map(|k| {
                                let s = a.struct_const(i, j, k);
                                assert!(s.is_real(), "oracle works over Q");
                                s.to_string().parse::<BigRational>().expect("rational entry")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Table { d, c }
    }

    fn c(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.c[i][j][k]
    }
}

fn words(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..d).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn index(d: usize, w: &[usize]) -> usize {
    w.iter().fold(0, |acc, &x| acc * d + x)
}

/// Rank by dense elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        let pivot: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Matrix of δⁿ on Cⁿ(A, A*), one row per coordinate of Cⁿ⁺¹.
///
/// A cochain is stored as F(a₀; a₁…aₙ) = f(a₁,…,aₙ)(a₀).
fn dual_coboundary_rows(t: &Table, n: usize) -> Vec<Vec<BigRational>> {
    let d = t.d;
    let cols = d.pow(n as u32 + 1);
    words(d, n + 2)
        .into_iter()
        .map(|w| {
            let (a0, a) = (w[0], &w[1..]);
            let mut row = vec![BigRational::zero(); cols];
            for k in 0..d {
                // (a₁·f(a₂…))(a₀) = f(a₂…)(a₀a₁)
                let mut v = vec![k];
                v.extend_from_slice(&a[1..]);
                row[index(d, &v)] += t.c(a0, a[0], k);
                // (f(a₁…aₙ)·aₙ₊₁)(a₀) = f(a₁…aₙ)(aₙ₊₁a₀)
                let mut v = vec![k];
                v.extend_from_slice(&a[..n]);
                let sign = if (n + 1) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                row[index(d, &v)] += sign * t.c(a[n], a0, k);
                for i in 0..n {
                    let mut v = vec![a0];
                    v.extend_from_slice(&a[..i]);
                    v.push(k);
                    v.extend_from_slice(&a[i + 2..]);
                    let sign = if (i + 1) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                    row[index(d, &v)] += sign * t.c(a[i], a[i + 1], k);
                }
            }
            row
        })
        .collect()
}

/// dim Hⁿ(A, A*) for n = 0..=max.
pub fn dual_hochschild_dims(a: &Algebra, max: usize) -> Vec<usize> {
    let t = Table::new(a);
    let ranks: Vec<usize> = (0..=max).map(|n| rank(dual_coboundary_rows(&t, n))).collect();
    (0..=max)
        .map(|n| {
            let cochains = t.d.pow(n as u32 + 1);
            cochains - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] }
        })
        .collect()
}

/// Basis of cyclic functionals of degree n: one vector per admissible
/// rotation orbit of (a₀,…,aₙ), with φ(a₁,…,aₙ,a₀) = (−1)ⁿφ(a₀,…,aₙ).
fn cyclic_basis(d: usize, n: usize) -> Vec<Vec<BigRational>> {
    let len = n + 1;
    let size = d.pow(len as u32);
    let mut seen = vec![false; size];
    let mut basis = Vec::new();
    for w in words(d, len) {
        if seen[index(d, &w)] {
            continue;
        }
        let mut v = vec![BigRational::zero(); size];
        let mut cur = w.clone();
        let mut sign = BigRational::one();
        let consistent = loop {
            let i = index(d, &cur);
            if seen[i] {
                break v[i] == sign;
            }
            seen[i] = true;
            v[i] = sign.clone();
            cur.rotate_left(1);
            if n % 2 == 1 {
                sign = -sign;
            }
        };
        if consistent {
            basis.push(v);
        }
    }
    basis
}

/// (bφ)(a₀,…,aₙ₊₁) evaluated at every word.
fn cyclic_coboundary(t: &Table, n: usize, phi: &[BigRational]) -> Vec<BigRational> {
    let d = t.d;
    words(d, n + 2)
        .into_iter()
        .map(|w| {
            let mut acc = BigRational::zero();
            for k in 0..d {
                for i in 0..=n {
                    let c = t.c(w[i], w[i + 1], k);
                    if c.is_zero() {
                        continue;
                    }
                    let mut v = w[..i].to_vec();
                    v.push(k);
                    v.extend_from_slice(&w[i + 2..]);
                    let term = c * &phi[index(d, &v)];
                    if i % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                let c = t.c(w[n + 1], w[0], k);
                if !c.is_zero() {
                    let mut v = vec![k];
                    v.extend_from_slice(&w[1..=n]);
                    let term = c * &phi[index(d, &v)];
                    if (n + 1) % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
            }
            acc
        })
        .collect()
}

/// dim HCⁿ(A) for n = 0..=max.
pub fn cyclic_dims(a: &Algebra, max: usize) -> Vec<usize> {
    let t = Table::new(a);
    let mut dims = Vec::new();
    let mut prev_rank = 0;
    for n in 0..=max {
        let basis = cyclic_basis(t.d, n);
        let images: Vec<Vec<BigRational>> = basis.iter().map(|phi| cyclic_coboundary(&t, n, phi)).collect();
        let r = if images.is_empty() { 0 } else { rank(images) };
        dims.push(basis.len() - r - prev_rank);
        prev_rank = r;
    }
    dims
}
