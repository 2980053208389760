//! Small dense matrices over a [`Field`] with exact Gaussian elimination.

use crate::field::Field;
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        Self::from_fn(n, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> Vec<F> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut out[(i, j)], F::zero());
                    out[(i, j)] = cur + &(a.clone() * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matvec");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if a.is_zero() || x.is_zero() {
                        continue;
                    }
                    acc = acc + &(a.clone() * x);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        self.zip(rhs, |a, b| a.clone() + b)
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        self.zip(rhs, |a, b| a.clone() - b)
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        self.map(|a| a.clone() * s)
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn zip(&self, rhs: &Matrix<F>, f: impl Fn(&F, &F) -> F) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    /// Sum of squared entries.
    pub fn norm_sq(&self) -> F {
        self.data.iter().fold(F::zero(), |acc, x| acc + &x.square())
    }

    /// Largest |entry| as a double; a convenient residual for reports.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.near_zero(tol))
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone() * &inv;
                for c in col..n {
                    let v = m[(col, c)].clone() * &f;
                    let cur = std::mem::replace(&mut m[(r, c)], F::zero());
                    m[(r, c)] = cur - &v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    ///
    /// Pivots are chosen as the entry of largest magnitude in floating
    /// point and the first nonzero entry in exact mode; entries with
    /// `near_zero(tol)` count as zero.
    pub fn rref(&mut self, tol: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let candidate = (row..self.rows)
                .filter(|&r| !self[(r, col)].near_zero(tol))
                .max_by(|&a, &b| {
                    self[(a, col)]
                        .to_f64()
                        .abs()
                        .total_cmp(&self[(b, col)].to_f64().abs())
                        .then(b.cmp(&a))
                });
            let Some(p) = candidate else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = self[(row, col)].inv().expect("nonzero pivot");
            for c in 0..self.cols {
                let v = std::mem::replace(&mut self[(row, c)], F::zero());
                self[(row, c)] = v * &inv;
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let f = self[(r, col)].clone();
                for c in 0..self.cols {
                    if self[(row, c)].is_zero() {
                        continue;
                    }
                    let v = self[(row, c)].clone() * &f;
                    let cur = std::mem::replace(&mut self[(r, c)], F::zero());
                    self[(r, c)] = cur - &v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.clone().rref(tol).len()
    }

    /// A basis of the right null space.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = b`, returning one solution if the system is consistent.
    pub fn solve(&self, b: &[F], tol: f64) -> Option<Vec<F>> {
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let pivots = aug.rref(tol);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self, tol: f64) -> Option<Matrix<F>> {
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.rref(tol);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Field::to_f64).collect(),
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}
