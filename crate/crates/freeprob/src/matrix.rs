//! Dense matrices over a [`Scalar`], plus fraction-free integer elimination.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = if i == j { T::one() } else { T::zero() };
                    if T::is_exact() {
                        self[(i, j)] == e
                    } else {
                        (self[(i, j)].as_f64() - e.as_f64()).abs() < 1e-9
                    }
                })
            })
    }

    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        if T::is_exact() {
            (from..self.rows).find(|&r| !self[(r, col)].is_zero())
        } else {
            (from..self.rows)
                .max_by(|&a, &b| self[(a, col)].magnitude().total_cmp(&self[(b, col)].magnitude()))
                .filter(|&r| self[(r, col)].magnitude() > 0.0)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch { left: self.rows, right: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = a.pivot_row(c, c) else {
                return Ok(T::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det = det * piv.clone();
            for r in c + 1..n {
                let f = a[(r, c)].clone() / piv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a[(r, j)].clone() - f.clone() * a[(c, j)].clone();
                    a[(r, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch { left: self.rows, right: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = a.pivot_row(c, c).ok_or(Error::Singular)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] = a[(c, j)].clone() / piv.clone();
                inv[(c, j)] = inv[(c, j)].clone() / piv.clone();
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let v = a[(r, j)].clone() - f.clone() * a[(c, j)].clone();
                    a[(r, j)] = v;
                    let w = inv[(r, j)].clone() - f.clone() * inv[(c, j)].clone();
                    inv[(r, j)] = w;
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self · x = b`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let inv = self.inverse()?;
        Ok((0..self.rows).map(|i| (0..self.cols).fold(T::zero(), |acc, j| acc + inv[(i, j)].clone() * b[j].clone())).collect())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant of an integer matrix by Bareiss elimination.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Fraction-free Gauss–Jordan on `[A | I]`: returns `(det A, adj A)` with
/// `A · adj A = det A · I`.
pub fn bareiss_adjugate(m: &[Vec<BigInt>]) -> Result<(BigInt, Vec<Vec<BigInt>>)> {
    let n = m.len();
    let w = 2 * n;
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        let pivot = a[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let v = (&pivot * &a[i][j] - &f * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    // every diagonal entry now equals the signed determinant
    let d = a[0][0].clone();
    let det = &sign * &d;
    let adj = a
        .into_iter()
        .map(|row| row[n..].iter().map(|x| &sign * x).collect())
        .collect();
    Ok((det, adj))
}

/// Exact inverse of an integer matrix.
pub fn exact_inverse(m: &[Vec<BigInt>]) -> Result<Matrix<Rational>> {
    let n = m.len();
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let (det, adj) = bareiss_adjugate(m)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let rows = adj
        .into_iter()
        .map(|row| row.into_iter().map(|x| Rational::new(x, det.clone())).collect())
        .collect();
    Matrix::from_rows(rows)
}

pub fn to_rational(m: &[Vec<BigInt>]) -> Matrix<Rational> {
    Matrix::from_fn(m.len(), m.first().map_or(0, |r| r.len()), |i, j| Rational::from_integer(m[i][j].clone()))
}

/// Largest absolute entry, used for float sanity checks.
pub fn max_abs(m: &[Vec<BigInt>]) -> BigInt {
    m.iter().flatten().map(|x| x.abs()).max().unwrap_or_default()
}
