//! Quantitative correspondence between classical functions and their
//! quantizations: product, commutator and trace residuals, plus the exact
//! partial-trace reproduction identities for the quantized delta symbols.

use crate::error::{CoreError, Result};
use crate::fuzzy::function::SphereFunction;
use crate::fuzzy::polynomial::Polynomial;
use crate::fuzzy::quantize::{quantize, quantize_tensor};
use crate::linalg::{FuzzyMatrix, TensorOperator};
use crate::scalar::Real;
use num_complex::Complex;

/// Maximum polynomial degree accepted by the correspondence residuals.
pub const MAX_CORRESPONDENCE_DEGREE: u32 = 4;

/// Residuals of the three correspondence properties for polynomials
/// `f`, `g` at dimension `n`:
///
/// * `product`: `‖Q(f) Q(g) − Q(f g)‖`   (scaled trace norm),
/// * `commutator`: `‖[Q(f), Q(g)] − i (2/n) Q({f, g})‖`,
/// * `trace`: `|(2/n) tr Q(f) − (1/2pi) ∫ omega f|`.
#[derive(Debug, Clone, Copy)]
pub struct CorrespondenceResiduals<T> {
    pub product: T,
    pub commutator: T,
    pub trace: T,
}

pub fn correspondence_residuals<T: Real>(
    f: &Polynomial<T>,
    g: &Polynomial<T>,
    n: usize,
) -> Result<CorrespondenceResiduals<T>> {
    for (name, p) in [("f", f), ("g", g)] {
        if p.degree() > MAX_CORRESPONDENCE_DEGREE {
            return Err(CoreError::Precondition(format!(
                "correspondence residuals accept degree <= {MAX_CORRESPONDENCE_DEGREE}, {name} has degree {}",
                p.degree()
            )));
        }
    }
    let qf = quantize(&SphereFunction::Polynomial(f.clone()), n)?;
    let qg = quantize(&SphereFunction::Polynomial(g.clone()), n)?;
    let qfg = quantize(&SphereFunction::Polynomial(f.mul(g)), n)?;
    let qbr = quantize(&SphereFunction::Polynomial(f.poisson_bracket(g)), n)?;

    let product = (&qf.matmul(&qg) - &qfg).fuzzy_norm();

    let hbar = T::from_f64_c(2.0) / T::from_usize_c(n);
    let commutator = (&qf.commutator(&qg) - &qbr.scale(Complex::new(T::zero(), hbar))).fuzzy_norm();

    let scaled_trace = qf.trace() * Complex::new(hbar, T::zero());
    let trace = (scaled_trace - f.sphere_moment()).norm();

    Ok(CorrespondenceResiduals {
        product,
        commutator,
        trace,
    })
}

/// Exact closed form of the commutator residual for degree <= 2
/// polynomials: the commutator of quantized low-degree functions closes
/// on the quantized bracket with effective Planck constant
/// `2/sqrt(n^2 - 1)` instead of `2/n`, so the residual equals
/// `‖Q({f,g})‖ * (2/sqrt(n^2-1) - 2/n)`.
pub fn commutator_residual_closed_form<T: Real>(
    f: &Polynomial<T>,
    g: &Polynomial<T>,
    n: usize,
) -> Result<T> {
    if f.degree() > 2 || g.degree() > 2 {
        return Err(CoreError::Precondition(
            "closed form only valid for degree <= 2".into(),
        ));
    }
    let qbr = quantize(&SphereFunction::Polynomial(f.poisson_bracket(g)), n)?;
    let nf = T::from_usize_c(n);
    let two = T::from_f64_c(2.0);
    let gap = two / (nf * nf - T::one()).sqrt() - two / nf;
    Ok(qbr.fuzzy_norm() * gap)
}

/// Residuals of the two partial-trace reproduction identities:
///
/// * full delta: `(4pi/n) tr_2(Q(delta_full) (1 (x) Q(f))) = Q(f)` for any f,
/// * diagonal delta: `(2/n) tr_2(Q(delta_diag) (1 (x) Q(f))) = Q(f)` for
///   phi-independent (diagonal) `Q(f)`.
///
/// Both are exact matrix identities; the returned max-entry residuals are
/// pure rounding.
pub fn pairing_identity_check<T: Real>(f: &SphereFunction<T>, n: usize) -> Result<(T, T)> {
    let qf = quantize(f, n)?;
    if !qf.is_diagonal(T::from_f64_c(1e-14)) {
        return Err(CoreError::Precondition(format!(
            "diagonal-delta pairing requires a diagonal quantization; '{}' is not diagonal",
            f.kind()
        )));
    }
    let full = full_pairing_residual_of(&qf, n)?;
    let diag_tensor = quantize_tensor(&SphereFunction::<T>::DeltaSigmaDiag, n)?;
    let reproduced = diag_tensor
        .mul_slot2_right(&qf)
        .partial_trace_second()
        .scale_real(T::from_f64_c(2.0) / T::from_usize_c(n));
    let diag = (&reproduced - &qf).max_norm();
    Ok((full, diag))
}

/// The full-delta reproduction residual alone; valid for any
/// single-sphere function, diagonal or not.
pub fn full_pairing_residual<T: Real>(f: &SphereFunction<T>, n: usize) -> Result<T> {
    let qf = quantize(f, n)?;
    full_pairing_residual_of(&qf, n)
}

fn full_pairing_residual_of<T: Real>(qf: &FuzzyMatrix<T>, n: usize) -> Result<T> {
    let full_tensor: TensorOperator<T> = quantize_tensor(&SphereFunction::<T>::DeltaFull, n)?;
    let four_pi = T::from_f64_c(4.0) * T::PI();
    let reproduced = full_tensor
        .mul_slot2_right(qf)
        .partial_trace_second()
        .scale_real(four_pi / T::from_usize_c(n));
    Ok((&reproduced - qf).max_norm())
}
