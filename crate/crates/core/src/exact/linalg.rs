//! Exact linear algebra over `Q`.

use num_traits::{One, Zero};

use super::poly::{Poly, Var};
use super::rational::Rational;

const MODULAR_THRESHOLD: usize = 256;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn new(ncols: usize) -> Self {
        Matrix { ncols, rows: Vec::new() }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { ncols, rows: vec![vec![Rational::zero(); ncols]; nrows] }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<Rational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix { ncols, rows }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|r| r.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)).collect()
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns. Zero rows are dropped. Pivots are chosen column by column
    /// from left to right, taking the first usable row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = Rational::one() / &self.rows[r][c];
            for x in self.rows[r].iter_mut().skip(c) {
                *x *= &inv;
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column in increasing
    /// column order; each has a 1 at its free column and zeros at the other
    /// free columns.
    ///
    /// Larger matrices go through the multimodular path, whose output is
    /// verified exactly; small ones, and any case the prime budget cannot
    /// settle, use [`Matrix::nullspace_exact`].
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        if self.rows.len() * self.ncols >= MODULAR_THRESHOLD {
            if let Some(basis) = super::modular::nullspace(&self.rows, self.ncols) {
                return basis;
            }
        }
        self.nullspace_exact()
    }

    /// [`Matrix::nullspace`] by Gauss-Jordan elimination over `Q`.
    pub fn nullspace_exact(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[free] = Rational::one();
                for (row, &p) in m.rows.iter().zip(&pivots) {
                    v[p] = -row[free].clone();
                }
                v
            })
            .collect()
    }
}

/// Right nullspace of `m` in pivot order.
pub fn solve_nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    m.nullspace()
}

/// Reduced echelon basis of `span(vs)` inside `k[t] / t^n k[t]`.
///
/// Columns are ordered by increasing degree, so each basis vector is
/// normalized at its lowest-degree term and no other basis vector has a
/// term in that degree.
pub fn span_reduce(vs: &[Poly], n: usize) -> Vec<Poly> {
    let mut m = Matrix::new(n);
    for v in vs {
        let row = (0..n).map(|i| v.coeff(i)).collect();
        m.push_row(row);
    }
    m.rref();
    m.rows.into_iter().map(|r| Poly::from_coeffs(Var::T, r)).collect()
}
