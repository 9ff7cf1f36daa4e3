//! Small dense matrices over any [`Scalar`].

use std::ops::{Index, IndexMut};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Row-major dense matrix. Dimensions here never exceed 6, so storage is a
/// plain `Vec` and no attempt is made at blocking.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn from_diag(d: &[S]) -> Self {
        Self::from_fn(
            d.len(),
            d.len(),
            |i, j| if i == j { d[i] } else { S::zero() },
        )
    }

    /// Column matrix built from column vectors.
    pub fn from_cols(cols: &[Vec<S>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| cols[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn re(&self) -> Mat<f64> {
        self.map(|x| x.re())
    }

    pub fn matmul(&self, other: &Mat<S>) -> Result<Mat<S>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, j)];
            }
            acc
        }))
    }

    pub fn matvec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "matvec dimension");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc += self[(i, k)] * v[k];
                }
                acc
            })
            .collect()
    }

    /// Bilinear form `uᵀ M v`.
    pub fn form(&self, u: &[S], v: &[S]) -> S {
        let mv = self.matvec(v);
        dot(u, &mv)
    }

    pub fn add(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn scale(&self, s: S) -> Mat<S> {
        self.map(|x| x * s)
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self[(i, i)];
        }
        t
    }

    /// Largest absolute plain value among the entries.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.re().abs()))
    }

    /// Gauss–Jordan inverse with partial pivoting on the plain values.
    pub fn inverse(&self) -> Result<Mat<S>> {
        let n = self.square_dim()?;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| a[(i, c)].re().abs().total_cmp(&a[(j, c)].re().abs()))
                .unwrap_or(c);
            let pivot = a[(p, c)].re();
            if pivot.abs() <= 1e-14 * scale {
                return Err(Error::Singular { pivot });
            }
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let d = a[(c, c)].recip();
            for j in 0..n {
                a[(c, j)] *= d;
                inv[(c, j)] *= d;
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a[(i, c)];
                for j in 0..n {
                    let (acj, icj) = (a[(c, j)], inv[(c, j)]);
                    a[(i, j)] -= f * acj;
                    inv[(i, j)] -= f * icj;
                }
            }
        }
        Ok(inv)
    }

    /// Determinant via elimination with partial pivoting.
    pub fn det(&self) -> Result<S> {
        let n = self.square_dim()?;
        let mut a = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| a[(i, c)].re().abs().total_cmp(&a[(j, c)].re().abs()))
                .unwrap_or(c);
            if a[(p, c)].re() == 0.0 {
                return Ok(S::zero());
            }
            if p != c {
                a.swap_rows(c, p);
                det = -det;
            }
            let d = a[(c, c)];
            det *= d;
            let inv = d.recip();
            for i in c + 1..n {
                let f = a[(i, c)] * inv;
                for j in c..n {
                    let acj = a[(c, j)];
                    a[(i, j)] -= f * acj;
                }
            }
        }
        Ok(det)
    }

    pub fn solve(&self, b: &[S]) -> Result<Vec<S>> {
        Ok(self.inverse()?.matvec(b))
    }

    fn square_dim(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "expected square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Mat<f64> {
    /// Maximum of `|M - Mᵀ|` over entries.
    pub fn asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                m = m.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Mat<f64>) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    assert_eq!(a.len(), b.len(), "dot dimension");
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc += *x * *y;
    }
    acc
}

pub fn axpy<S: Scalar>(alpha: S, x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| alpha * *a + *b).collect()
}

pub fn scale_vec<S: Scalar>(alpha: S, x: &[S]) -> Vec<S> {
    x.iter().map(|a| alpha * *a).collect()
}

pub fn sub_vec<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| *a - *b).collect()
}

pub fn norm_inf(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = Mat::from_rows(&[
            vec![0.0, 2.0, 1.0],
            vec![1.0, 0.0, 3.0],
            vec![4.0, -1.0, 0.5],
        ]);
        let inv = a.inverse().unwrap();
        let id = a.matmul(&inv).unwrap();
        assert!(id.max_abs_diff(&Mat::identity(3)) < 1e-14);
    }

    #[test]
    fn determinant_with_row_swap() {
        let a = Mat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(a.det().unwrap(), -1.0);
        let b = Mat::from_rows(&[vec![2.0, 1.0], vec![4.0, 2.0]]);
        assert_eq!(b.det().unwrap(), 0.0);
        assert!(matches!(b.inverse(), Err(Error::Singular { .. })));
    }
}
