//! The n-particle Lax matrix and the exact position-commutator identity.

use crate::calogero::phase::PhasePoint;
use crate::error::Result;
use crate::fuzzy::all_ones;
use crate::linalg::FuzzyMatrix;
use crate::scalar::Real;
use num_complex::Complex;

/// `L_ij = p_i delta_ij + (1 - delta_ij) i kappa / (q_i - q_j)`; Hermitian.
pub fn build_lax<T: Real>(pt: &PhasePoint<T>) -> Result<FuzzyMatrix<T>> {
    pt.require_distinct_default()?;
    let n = pt.n();
    let kappa = pt.kappa();
    let (q, p) = (pt.q(), pt.p());
    let mut l = FuzzyMatrix::zeros(n);
    for i in 0..n {
        l.set_entry(i, i, Complex::new(p[i], T::zero()));
        for j in 0..n {
            if i != j {
                l.set_entry(i, j, Complex::new(T::zero(), kappa / (q[i] - q[j])));
            }
        }
    }
    Ok(l)
}

/// Diagonal position matrix `diag(q)`.
pub fn position_matrix<T: Real>(pt: &PhasePoint<T>) -> FuzzyMatrix<T> {
    FuzzyMatrix::from_real_diag(pt.q())
}

/// Diagonal momentum matrix `diag(p)`.
pub fn momentum_matrix<T: Real>(pt: &PhasePoint<T>) -> FuzzyMatrix<T> {
    FuzzyMatrix::from_real_diag(pt.p())
}

/// Partial derivative of the Lax matrix with respect to `q_i`: non-zero
/// only in row and column `i`, with entries `-+ i kappa / (q_. - q_.)^2`.
pub fn lax_position_derivative<T: Real>(pt: &PhasePoint<T>, i: usize) -> FuzzyMatrix<T> {
    let n = pt.n();
    let kappa = pt.kappa();
    let q = pt.q();
    let mut d = FuzzyMatrix::zeros(n);
    for k in 0..n {
        if k == i {
            continue;
        }
        let gap_ik = q[i] - q[k];
        d.set_entry(i, k, Complex::new(T::zero(), -kappa / (gap_ik * gap_ik)));
        let gap_ki = q[k] - q[i];
        d.set_entry(k, i, Complex::new(T::zero(), kappa / (gap_ki * gap_ki)));
    }
    d
}

/// Max-entry residual of the exact identity
/// `[diag(q), L] = i kappa (K - 1)` with `K` the all-ones matrix.
pub fn commutator_identity_residual<T: Real>(pt: &PhasePoint<T>) -> Result<T> {
    let l = build_lax(pt)?;
    let r = position_matrix(pt);
    let n = pt.n();
    let k = all_ones::<T>(n);
    let rhs = (&k - &FuzzyMatrix::identity(n)).scale(Complex::new(T::zero(), pt.kappa()));
    Ok((&r.commutator(&l) - &rhs).max_norm())
}
