//! Dense complex square matrices tagged with their dimension.
//!
//! The norm used for convergence statements is the scaled trace norm
//! `‖A‖ = sqrt((2/n) tr(A†A))`; exact identities are measured in the
//! max-entry norm.

use crate::error::{CoreError, Result};
use crate::scalar::Real;
use ndarray::Array2;
use num_complex::Complex;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense n x n complex matrix, n >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyMatrix<T> {
    data: Array2<Complex<T>>,
}

impl<T: Real> FuzzyMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            data: Array2::from_elem((n, n), Complex::new(T::zero(), T::zero())),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        Self {
            data: Array2::from_shape_fn((n, n), |(i, j)| f(i, j)),
        }
    }

    pub fn from_array(data: Array2<Complex<T>>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(CoreError::DimensionMismatch(format!(
                "expected square array, got {} x {}",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(Self { data })
    }

    pub fn from_diag(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.data[(i, i)] = *d;
        }
        m
    }

    pub fn from_real_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.data[(i, i)] = Complex::new(*d, T::zero());
        }
        m
    }

    /// Matrix of all ones.
    pub fn ones(n: usize) -> Self {
        Self {
            data: Array2::from_elem((n, n), Complex::new(T::one(), T::zero())),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.data[(i, j)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[(i, j)] = v;
    }

    pub fn data(&self) -> &Array2<Complex<T>> {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim();
        Self::from_fn(n, |i, j| self.data[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            data: self.data.dot(&other.data),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &self.matmul(other) + &other.matmul(self)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            data: self.data.mapv(|v| v * s),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn trace(&self) -> Complex<T> {
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.dim() {
            t = t + self.data[(i, i)];
        }
        t
    }

    /// `A^m` by repeated multiplication; `m = 0` gives the identity.
    pub fn pow(&self, m: u32) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..m {
            acc = acc.matmul(self);
        }
        acc
    }

    /// Scaled trace norm `sqrt((2/n) tr(A†A))`.
    pub fn fuzzy_norm(&self) -> T {
        let n = T::from_usize_c(self.dim());
        let two = T::from_f64_c(2.0);
        let mut s = T::zero();
        for v in self.data.iter() {
            s += v.norm_sqr();
        }
        (two / n * s).sqrt()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> T {
        let mut m = T::zero();
        for v in self.data.iter() {
            let a = v.norm();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Max-entry distance to the conjugate transpose.
    pub fn hermiticity_residual(&self) -> T {
        (self - &self.dagger()).max_norm()
    }

    /// Largest off-diagonal entry modulus.
    pub fn off_diagonal_norm(&self) -> T {
        let mut m = T::zero();
        for ((i, j), v) in self.data.indexed_iter() {
            if i != j {
                let a = v.norm();
                if a > m {
                    m = a;
                }
            }
        }
        m
    }

    pub fn is_diagonal(&self, tol: T) -> bool {
        self.off_diagonal_norm() <= tol
    }

    /// Entry-wise square root of a diagonal matrix with non-negative
    /// diagonal (tiny negative rounding is clamped to zero).
    pub fn diagonal_sqrt(&self, tol: T) -> Result<Self> {
        if !self.is_diagonal(tol) {
            return Err(CoreError::Precondition(
                "diagonal_sqrt requires a diagonal matrix".into(),
            ));
        }
        let n = self.dim();
        let mut out = Self::zeros(n);
        for i in 0..n {
            let d = self.data[(i, i)];
            if d.im.abs() > tol || d.re < -tol {
                return Err(CoreError::Precondition(format!(
                    "diagonal_sqrt requires non-negative real diagonal, entry {i} = {}+{}i",
                    d.re.as_f64(),
                    d.im.as_f64()
                )));
            }
            let r = if d.re < T::zero() { T::zero() } else { d.re };
            out.data[(i, i)] = Complex::new(r.sqrt(), T::zero());
        }
        Ok(out)
    }
}

impl<T: Real> Add for &FuzzyMatrix<T> {
    type Output = FuzzyMatrix<T>;
    fn add(self, rhs: Self) -> FuzzyMatrix<T> {
        FuzzyMatrix {
            data: &self.data + &rhs.data,
        }
    }
}

impl<T: Real> Sub for &FuzzyMatrix<T> {
    type Output = FuzzyMatrix<T>;
    fn sub(self, rhs: Self) -> FuzzyMatrix<T> {
        FuzzyMatrix {
            data: &self.data - &rhs.data,
        }
    }
}

impl<T: Real> Neg for &FuzzyMatrix<T> {
    type Output = FuzzyMatrix<T>;
    fn neg(self) -> FuzzyMatrix<T> {
        self.scale_real(-T::one())
    }
}

impl<T: Real> Mul for &FuzzyMatrix<T> {
    type Output = FuzzyMatrix<T>;
    fn mul(self, rhs: Self) -> FuzzyMatrix<T> {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dagger_reverses_products() {
        let a = FuzzyMatrix::from_fn(3, |i, j| c((i + 2 * j) as f64, (i as f64) - 1.0));
        let b = FuzzyMatrix::from_fn(3, |i, j| c(1.0 / (1.0 + i as f64 + j as f64), 0.5));
        let lhs = a.matmul(&b).dagger();
        let rhs = b.dagger().matmul(&a.dagger());
        assert!((&lhs - &rhs).max_norm() < 1e-14);
    }

    #[test]
    fn fuzzy_norm_of_identity() {
        // sqrt((2/n) * n) = sqrt(2)
        let id = FuzzyMatrix::<f64>::identity(7);
        assert!((id.fuzzy_norm() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn trace_of_commutator_vanishes() {
        let a = FuzzyMatrix::from_fn(4, |i, j| c(i as f64 * 0.3 - j as f64, 0.1 * j as f64));
        let b = FuzzyMatrix::from_fn(4, |i, j| c((i * j) as f64 * 0.2, -0.7));
        assert!(a.commutator(&b).trace().norm() < 1e-13);
    }

    #[test]
    fn diagonal_sqrt_squares_back() {
        let d = FuzzyMatrix::from_real_diag(&[4.0, 0.25, 0.0, 9.0]);
        let r = d.diagonal_sqrt(0.0).unwrap();
        assert!((&r.matmul(&r) - &d).max_norm() < 1e-15);
    }
}
