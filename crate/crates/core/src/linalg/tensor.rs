//! Operators on the tensor square of the n x n matrix algebra.
//!
//! An element `sum A_{kl,mn} E_kl (x) E_mn` is stored as the dense
//! n^2 x n^2 matrix acting on C^n (x) C^n, with the row index `(a, b)`
//! flattened as `a * n + b`. In that layout `kron(A, B)` has entries
//! `A_ac B_bd` at `((a b), (c d))`, the usual Kronecker convention.

use crate::error::{CoreError, Result};
use crate::linalg::FuzzyMatrix;
use crate::scalar::Real;
use ndarray::Array2;
use num_complex::Complex;
use std::ops::{Add, Sub};

/// Default guard for the n^4 dense storage.
pub const TENSOR_DIM_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct TensorOperator<T> {
    n: usize,
    data: Array2<Complex<T>>,
}

impl<T: Real> TensorOperator<T> {
    /// Checks the dense-storage guard before any n^4 allocation.
    pub fn check_dim(n: usize) -> Result<()> {
        if n > TENSOR_DIM_LIMIT {
            return Err(CoreError::ResourceLimit {
                n,
                max: TENSOR_DIM_LIMIT,
            });
        }
        Ok(())
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::check_dim(n)?;
        Ok(Self {
            n,
            data: Array2::from_elem((n * n, n * n), Complex::new(T::zero(), T::zero())),
        })
    }

    pub fn kron(a: &FuzzyMatrix<T>, b: &FuzzyMatrix<T>) -> Result<Self> {
        let n = a.dim();
        if b.dim() != n {
            return Err(CoreError::DimensionMismatch(format!(
                "kron factors must share a dimension, got {} and {}",
                n,
                b.dim()
            )));
        }
        let mut t = Self::zeros(n)?;
        for a_row in 0..n {
            for a_col in 0..n {
                let av = a.entry(a_row, a_col);
                if av.re == T::zero() && av.im == T::zero() {
                    continue;
                }
                for b_row in 0..n {
                    for b_col in 0..n {
                        t.data[(a_row * n + b_row, a_col * n + b_col)] = av * b.entry(b_row, b_col);
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coefficient of `E_kl (x) E_mn`.
    pub fn coeff(&self, k: usize, l: usize, m: usize, nn: usize) -> Complex<T> {
        self.data[(k * self.n + m, l * self.n + nn)]
    }

    pub fn add_term(&mut self, k: usize, l: usize, m: usize, nn: usize, v: Complex<T>) {
        let idx = (k * self.n + m, l * self.n + nn);
        self.data[idx] = self.data[idx] + v;
    }

    /// Exchanges the two tensor slots; an involution on entries.
    pub fn swap_slots(&self) -> Self {
        let n = self.n;
        let mut out = Self {
            n,
            data: Array2::from_elem((n * n, n * n), Complex::new(T::zero(), T::zero())),
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        out.data[(b * n + a, d * n + c)] = self.data[(a * n + b, c * n + d)];
                    }
                }
            }
        }
        out
    }

    /// Partial trace over the second slot: `(a, c) -> sum_b ((a b), (c b))`.
    pub fn partial_trace_second(&self) -> FuzzyMatrix<T> {
        let n = self.n;
        FuzzyMatrix::from_fn(n, |a, c| {
            let mut s = Complex::new(T::zero(), T::zero());
            for b in 0..n {
                s = s + self.data[(a * n + b, c * n + b)];
            }
            s
        })
    }

    /// Right multiplication by `A (x) 1` without forming the Kronecker product.
    pub fn mul_slot1_right(&self, a: &FuzzyMatrix<T>) -> Self {
        let n = self.n;
        let mut out = Self {
            n,
            data: Array2::from_elem((n * n, n * n), Complex::new(T::zero(), T::zero())),
        };
        for row in 0..n * n {
            for d in 0..n {
                for e in 0..n {
                    let v = self.data[(row, e * n + d)];
                    if v.re == T::zero() && v.im == T::zero() {
                        continue;
                    }
                    for c in 0..n {
                        out.data[(row, c * n + d)] = out.data[(row, c * n + d)] + v * a.entry(e, c);
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by `A (x) 1`.
    pub fn mul_slot1_left(&self, a: &FuzzyMatrix<T>) -> Self {
        let n = self.n;
        let mut out = Self {
            n,
            data: Array2::from_elem((n * n, n * n), Complex::new(T::zero(), T::zero())),
        };
        for arow in 0..n {
            for e in 0..n {
                let av = a.entry(arow, e);
                if av.re == T::zero() && av.im == T::zero() {
                    continue;
                }
                for b in 0..n {
                    for col in 0..n * n {
                        out.data[(arow * n + b, col)] =
                            out.data[(arow * n + b, col)] + av * self.data[(e * n + b, col)];
                    }
                }
            }
        }
        out
    }

    /// Right multiplication by `1 (x) A`.
    pub fn mul_slot2_right(&self, a: &FuzzyMatrix<T>) -> Self {
        let n = self.n;
        let mut out = Self {
            n,
            data: Array2::from_elem((n * n, n * n), Complex::new(T::zero(), T::zero())),
        };
        for row in 0..n * n {
            for c in 0..n {
                for e in 0..n {
                    let v = self.data[(row, c * n + e)];
                    if v.re == T::zero() && v.im == T::zero() {
                        continue;
                    }
                    for d in 0..n {
                        out.data[(row, c * n + d)] = out.data[(row, c * n + d)] + v * a.entry(e, d);
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by `1 (x) A`.
    pub fn mul_slot2_left(&self, a: &FuzzyMatrix<T>) -> Self {
        let n = self.n;
        let mut out = Self {
            n,
            data: Array2::from_elem((n * n, n * n), Complex::new(T::zero(), T::zero())),
        };
        for arow in 0..n {
            for e in 0..n {
                let av = a.entry(arow, e);
                if av.re == T::zero() && av.im == T::zero() {
                    continue;
                }
                for a_slot in 0..n {
                    for col in 0..n * n {
                        out.data[(a_slot * n + arow, col)] =
                            out.data[(a_slot * n + arow, col)] + av * self.data[(a_slot * n + e, col)];
                    }
                }
            }
        }
        out
    }

    /// `[self, A (x) 1]`.
    pub fn commutator_slot1(&self, a: &FuzzyMatrix<T>) -> Self {
        &self.mul_slot1_right(a) - &self.mul_slot1_left(a)
    }

    /// `[self, 1 (x) A]`.
    pub fn commutator_slot2(&self, a: &FuzzyMatrix<T>) -> Self {
        &self.mul_slot2_right(a) - &self.mul_slot2_left(a)
    }

    /// Full n^2 x n^2 product; used for anticommutators of tensor operators.
    pub fn matmul(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.dot(&other.data),
        }
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &self.matmul(other) + &other.matmul(self)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            n: self.n,
            data: self.data.mapv(|v| v * s),
        }
    }

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
}

impl<T: Real> Add for &TensorOperator<T> {
    type Output = TensorOperator<T>;
    fn add(self, rhs: Self) -> TensorOperator<T> {
        TensorOperator {
            n: self.n,
            data: &self.data + &rhs.data,
        }
    }
}

impl<T: Real> Sub for &TensorOperator<T> {
    type Output = TensorOperator<T>;
    fn sub(self, rhs: Self) -> TensorOperator<T> {
        TensorOperator {
            n: self.n,
            data: &self.data - &rhs.data,
        }
    }
}
