use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols])).finish()
    }
}

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Self { rows: n, cols, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows_iter().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<T>], rows: usize) -> Result<Self> {
        Ok(Self::from_rows(cols.to_vec(), rows)?.transpose())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Self { rows: idx.len(), cols: self.cols, data }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Mul for &Matrix<T>
where
    T: Clone + Zero + One + Mul<Output = T>,
{
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "incompatible matrix product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + p;
                }
            }
        }
        out
    }
}

/// Matrix-vector product.
pub fn mat_vec<T>(m: &Matrix<T>, v: &[T]) -> Vec<T>
where
    T: Clone + Zero + Mul<Output = T>,
{
    assert_eq!(m.ncols(), v.len(), "incompatible matrix-vector product");
    m.rows_iter().map(|r| dot(r, v)).collect()
}

pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Clone + Zero + Mul<Output = T>,
{
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.ncols() {
        if r == m.nrows() {
            break;
        }
        let Some(p) = (r..m.nrows()).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = F::one() / m[(r, c)].clone();
        for x in m.row_mut(r) {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m.row(r).to_vec();
        for i in 0..m.nrows() {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for (x, p) in m.row_mut(i).iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of<F: Field>(vectors: &[Vec<F>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), dim).map(|m| rank(&m)).unwrap_or(0)
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let n = m.ncols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); n];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -w[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Exact determinant by Gaussian elimination over the field.
pub fn det<F: Field>(m: &Matrix<F>) -> Result<F> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let n = m.nrows();
    let mut w = m.clone();
    let mut acc = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[(i, c)].is_zero()) else {
            return Ok(F::zero());
        };
        if p != c {
            w.swap_rows(p, c);
            acc = -acc;
        }
        let piv = w[(c, c)].clone();
        acc = acc * piv.clone();
        for i in c + 1..n {
            if w[(i, c)].is_zero() {
                continue;
            }
            let f = w[(i, c)].clone() / piv.clone();
            for j in c..n {
                let v = w[(c, j)].clone();
                w[(i, j)] = w[(i, j)].clone() - f.clone() * v;
            }
        }
    }
    Ok(acc)
}

/// Unique solution of `m x = b` for square nonsingular `m`.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Result<Vec<F>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    if b.len() != m.nrows() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), found: b.len() });
    }
    let n = m.nrows();
    let mut aug = Matrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::SingularMatrix);
    }
    Ok((0..n).map(|i| aug[(i, n)].clone()).collect())
}

/// Lifts an integer matrix into a field.
pub fn to_field<F: Field>(m: &Matrix<num_bigint::BigInt>) -> Matrix<F> {
    m.map(F::from_bigint)
}
