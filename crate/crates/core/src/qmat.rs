//! Dense row-major quaternion and complex matrices.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::scalar::Real;

/// Dense `rows × cols` matrix over the quaternions, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion<T>>,
}

impl<T: Real> QMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::shape(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Quaternion<T>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion<T>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Quaternion::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Quaternion::one() } else { Quaternion::zero() })
    }

    /// Square matrix with `diag` on the diagonal.
    pub fn diag(diag: &[Quaternion<T>]) -> Self {
        Self::from_fn(diag.len(), diag.len(), |i, j| if i == j { diag[i] } else { Quaternion::zero() })
    }

    /// 1×1 matrix holding `q`.
    pub fn scalar(q: Quaternion<T>) -> Self {
        Self { rows: 1, cols: 1, data: vec![q] }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn as_slice(&self) -> &[Quaternion<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Quaternion<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Quaternion<T>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Product `self · rhs` with Hamilton entry products taken left to right.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self[(i, t)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(t, j)];
                }
            }
        }
        Ok(out)
    }

    /// `Aᴴ`: transpose with every entry conjugated.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| q.scale(s)).collect() }
    }

    /// Max column sum of entry moduli.
    pub fn norm_one(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// Max row sum of entry moduli.
    pub fn norm_inf(&self) -> T {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|q| q.abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    pub fn norm_frobenius(&self) -> T {
        self.data.iter().map(|q| q.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|q| q.abs()).fold(T::zero(), T::max)
    }

    /// Complex adjoint `χ(A) = [[A₁, A₂], [−conj(A₂), conj(A₁)]]` for
    /// `A = A₁ + A₂·j`, where an entry `w + x·i + y·j + z·k` contributes
    /// `w + x·i` to `A₁` and `y + z·i` to `A₂`.
    pub fn complex_adjoint(&self) -> CMatrix<T> {
        let (m, n) = (self.rows, self.cols);
        let mut out = CMatrix::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                let (a1, a2) = self[(i, j)].split();
                out[(i, j)] = a1;
                out[(i, j + n)] = a2;
                out[(i + m, j)] = -a2.conj();
                out[(i + m, j + n)] = a1.conj();
            }
        }
        out
    }

    /// Copies out the `rows × cols` block whose top-left corner is `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(Error::shape(format!(
                "block {rows}x{cols} at ({r0},{c0}) does not fit in {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)]))
    }

    /// Overwrites the block at `(r0, c0)` with `block`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) -> Result<()> {
        if r0 + block.rows > self.rows || c0 + block.cols > self.cols {
            return Err(Error::shape("block does not fit"));
        }
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
        Ok(())
    }

    /// Same-shape matrix from applying `f` to every entry.
    pub fn map(&self, f: impl Fn(Quaternion<T>) -> Quaternion<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&q| f(q)).collect() }
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.shape(), other.shape());
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).abs()).fold(T::zero(), T::max)
    }

    pub fn cast<U: Real>(&self) -> QMatrix<U> {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| q.cast()).collect() }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Quaternion<T>, Quaternion<T>) -> Quaternion<T>) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for QMatrix<T> {
    type Output = Quaternion<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for QMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &QMatrix<T> {
    type Output = QMatrix<T>;
    fn add(self, rhs: Self) -> QMatrix<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Real> Sub for &QMatrix<T> {
    type Output = QMatrix<T>;
    fn sub(self, rhs: Self) -> QMatrix<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Real> Neg for &QMatrix<T> {
    type Output = QMatrix<T>;
    fn neg(self) -> QMatrix<T> {
        self.map(|q| -q)
    }
}

/// Panics on a shape mismatch; use [`QMatrix::matmul`] for the fallible form.
impl<T: Real> Mul for &QMatrix<T> {
    type Output = QMatrix<T>;
    fn mul(self, rhs: Self) -> QMatrix<T> {
        self.matmul(rhs).expect("conformable operands")
    }
}

/// Nested `[[[w,x,y,z], ...], ...]` form.
impl<T: Real + Serialize> Serialize for QMatrix<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for QMatrix<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Quaternion<T>>>::deserialize(d)?;
        QMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Dense row-major complex matrix, the target of [`QMatrix::complex_adjoint`].
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn diag(diag: &[Complex<T>]) -> Self {
        Self::from_fn(diag.len(), diag.len(), |i, j| if i == j { diag[i] } else { Complex::zero() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self[(i, t)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(t, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (a, x)| acc + *a * *x)
            })
            .collect()
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn norm_frobenius(&self) -> T {
        self.data.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).norm()).fold(T::zero(), T::max)
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}
