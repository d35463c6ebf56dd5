//! Small dense matrices over the rationals.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: alloc::vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| if i == j { BigRational::one() } else { BigRational::zero() })
    }

    /// Entries from `f(i, j)` with zero-based indices.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<BigRational>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            bail!(PreconditionViolated, "ragged matrix rows");
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Matrix> {
        let rows: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        Matrix::from_rows(&rows)
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

    /// Zero-based entry.
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            bail!(PreconditionViolated, "shape mismatch {}x{} · {}x{}", self.rows, self.cols, o.rows, o.cols);
        }
        Ok(Matrix::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(BigRational::zero(), |acc, k| acc + self.get(i, k) * o.get(k, j))
        }))
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Result<Vec<BigRational>> {
        if self.cols != x.len() {
            bail!(PreconditionViolated, "vector length {} for {} columns", x.len(), self.cols);
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    /// Drops zero-based row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Matrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(BigRational::is_integer)
    }

    pub fn max_abs(&self) -> BigRational {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_else(BigRational::zero)
    }

    /// Exact determinant. Integer matrices go through fraction-free
    /// elimination (in `i128` while it does not overflow); others through
    /// rational Gaussian elimination.
    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            bail!(PreconditionViolated, "determinant of a {}x{} matrix", self.rows, self.cols);
        }
        if self.rows == 0 {
            return Ok(BigRational::one());
        }
        if self.is_integer() {
            let small: Option<Vec<i128>> = self.data.iter().map(|v| v.to_integer().to_i128()).collect();
            if let Some(d) = small.and_then(|m| bareiss_i128(m, self.rows)) {
                return Ok(BigRational::from_integer(d.into()));
            }
            let m: Vec<BigInt> = self.data.iter().map(|v| v.to_integer()).collect();
            return Ok(BigRational::from_integer(bareiss_big(m, self.rows)));
        }
        Ok(self.det_gauss())
    }

    fn det_gauss(&self) -> BigRational {
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigRational::zero();
            };
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det *= &pivot;
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let f = &a[i * n + k] / &pivot;
                for j in k..n {
                    let t = &f * &a[k * n + j];
                    a[i * n + j] -= t;
                }
            }
        }
        det
    }

    /// Inverse of a lower-triangular matrix with non-zero diagonal, by
    /// forward substitution column by column.
    pub fn lower_triangular_inverse(&self) -> Result<Matrix> {
        if !self.is_square() || !self.is_lower_triangular() {
            bail!(PreconditionViolated, "forward substitution needs a square lower-triangular matrix");
        }
        let n = self.rows;
        if (0..n).any(|i| self.get(i, i).is_zero()) {
            bail!(PreconditionViolated, "singular triangular matrix");
        }
        let mut w = Matrix::zeros(n, n);
        for c in 0..n {
            for i in c..n {
                let mut s = if i == c { BigRational::one() } else { BigRational::zero() };
                for k in c..i {
                    s -= self.get(i, k) * w.get(k, c);
                }
                w.set(i, c, s / self.get(i, i));
            }
        }
        Ok(w)
    }
}

/// Fraction-free elimination with checked `i128`; `None` on overflow.
fn bareiss_i128(mut a: Vec<i128>, n: usize) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k * n + k] == 0 {
            let p = (k + 1..n).find(|&i| a[i * n + k] != 0)?;
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i * n + j].checked_mul(a[k * n + k])?;
                let y = a[i * n + k].checked_mul(a[k * n + j])?;
                a[i * n + j] = x.checked_sub(y)? / prev;
            }
        }
        prev = a[k * n + k];
    }
    sign.checked_mul(a[n * n - 1])
}

fn bareiss_big(mut a: Vec<BigInt>, n: usize) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[n * n - 1]
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
