//! Eigenvalues of Hermitian matrices via cyclic Jacobi rotations.
//!
//! The matrices in this crate are small (n <= a few hundred), dense and
//! Hermitian to machine precision, which is exactly the regime where the
//! Jacobi iteration is simple, robust and accurate.

use crate::error::{CoreError, Result};
use crate::linalg::FuzzyMatrix;
use crate::scalar::Real;
use num_complex::Complex;

/// Sorted (ascending) real eigenvalues of a Hermitian matrix.
///
/// The input is symmetrized first; a non-Hermitian input beyond `herm_tol`
/// is rejected rather than silently averaged away.
pub fn hermitian_eigenvalues<T: Real>(m: &FuzzyMatrix<T>, herm_tol: T) -> Result<Vec<T>> {
    if m.hermiticity_residual() > herm_tol {
        return Err(CoreError::Precondition(format!(
            "matrix is not Hermitian (residual {:.3e} > {:.3e})",
            m.hermiticity_residual().as_f64(),
            herm_tol.as_f64()
        )));
    }
    let n = m.dim();
    // Work on the Hermitian average to suppress rounding asymmetry.
    let mut a = {
        let h = m.dagger();
        let half = T::from_f64_c(0.5);
        (&(m + &h)).scale_real(half)
    };

    let eps = T::from_f64_c(1e-30);
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        let off = off_diagonal_frobenius(&a);
        let scale = frobenius(&a).max(T::one());
        if off <= scale * T::from_f64_c(1e-15) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.entry(p, q);
                let b = apq.norm();
                if b * b <= eps {
                    continue;
                }
                let app = a.entry(p, p).re;
                let aqq = a.entry(q, q).re;
                // Real Jacobi angle for the modulus, complex phase for arg(apq).
                let tau = (aqq - app) / (T::from_f64_c(2.0) * b);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let cth = T::one() / (T::one() + t * t).sqrt();
                let sth = t * cth;
                let phase = apq / Complex::new(b, T::zero());
                apply_rotation(&mut a, p, q, cth, sth, phase);
            }
        }
    }

    let mut vals: Vec<T> = (0..n).map(|i| a.entry(i, i).re).collect();
    vals.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalue comparison"));
    Ok(vals)
}

fn frobenius<T: Real>(a: &FuzzyMatrix<T>) -> T {
    let n = a.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            s += a.entry(i, j).norm_sqr();
        }
    }
    s.sqrt()
}

fn off_diagonal_frobenius<T: Real>(a: &FuzzyMatrix<T>) -> T {
    let n = a.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.entry(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// A <- G† A G with G the identity outside the (p, q) plane,
/// G_pp = c, G_qq = c, G_pq = s * phase, G_qp = -s * conj(phase).
fn apply_rotation<T: Real>(a: &mut FuzzyMatrix<T>, p: usize, q: usize, c: T, s: T, phase: Complex<T>) {
    let n = a.dim();
    let cc = Complex::new(c, T::zero());
    let sp = phase * Complex::new(s, T::zero());
    // Column update: A <- A G
    for i in 0..n {
        let aip = a.entry(i, p);
        let aiq = a.entry(i, q);
        a.set_entry(i, p, aip * cc - aiq * sp.conj());
        a.set_entry(i, q, aip * sp + aiq * cc);
    }
    // Row update: A <- G† A
    for j in 0..n {
        let apj = a.entry(p, j);
        let aqj = a.entry(q, j);
        a.set_entry(p, j, apj * cc - aqj * sp);
        a.set_entry(q, j, apj * sp.conj() + aqj * cc);
    }
}
