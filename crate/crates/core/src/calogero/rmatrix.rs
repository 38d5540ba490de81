//! The classical r-matrix of the n-particle system and the exact tensor
//! identities tying it to the Lax and position matrices.

use crate::calogero::engine::PoissonEngine;
use crate::calogero::lax::{build_lax, lax_position_derivative, position_matrix};
use crate::calogero::phase::PhasePoint;
use crate::error::Result;
use crate::fuzzy::{all_ones, quantize_tensor, SphereFunction};
use crate::linalg::{FuzzyMatrix, TensorOperator};
use crate::scalar::Real;
use num_complex::Complex;

/// `r_12 = sum_{k != l} i/(q_l - q_k) E_kl (x) E_lk
///        + (1/2) sum_{k != l} i/(q_l - q_k) E_kk (x) (E_kl - E_lk)`.
pub fn build_r_matrix<T: Real>(pt: &PhasePoint<T>) -> Result<TensorOperator<T>> {
    pt.require_distinct_default()?;
    let n = pt.n();
    let q = pt.q();
    let mut r = TensorOperator::zeros(n)?;
    let half = T::from_f64_c(0.5);
    for k in 0..n {
        for l in 0..n {
            if k == l {
                continue;
            }
            let a = Complex::new(T::zero(), T::one() / (q[l] - q[k]));
            r.add_term(k, l, l, k, a);
            let ha = a * Complex::new(half, T::zero());
            r.add_term(k, k, k, l, ha);
            r.add_term(k, k, l, k, -ha);
        }
    }
    Ok(r)
}

/// The entrywise Poisson bracket tensor `{L (x) 1, 1 (x) L}` assembled
/// from the analytic partials of the Lax matrix:
/// `sum_i scale * (E_ii (x) dL/dq_i - dL/dq_i (x) E_ii)`.
pub fn lax_bracket_tensor<T: Real>(
    pt: &PhasePoint<T>,
    engine: &PoissonEngine<T>,
) -> Result<TensorOperator<T>> {
    pt.require_distinct_default()?;
    let n = pt.n();
    let mut out = TensorOperator::zeros(n)?;
    let scale = Complex::new(engine.scale(), T::zero());
    for i in 0..n {
        let di = lax_position_derivative(pt, i);
        let mut eii = FuzzyMatrix::zeros(n);
        eii.set_entry(i, i, Complex::new(T::one(), T::zero()));
        let term = &TensorOperator::kron(&eii, &di)? - &TensorOperator::kron(&di, &eii)?;
        out = &out + &term.scale(scale);
    }
    Ok(out)
}

/// Max-entry residual of the compatibility relation
/// `{L_1, L_2} = -(i n/2) [r_12, L_1] + (i n/2) [r_21, L_2]`
/// under the bracket `{p_i, q_j} = (n/2) delta_ij`. Exact; the residual
/// is accumulated rounding only.
pub fn fundamental_relation_residual<T: Real>(pt: &PhasePoint<T>) -> Result<T> {
    let n = pt.n();
    let engine = PoissonEngine::paper_convention(n);
    let lhs = lax_bracket_tensor(pt, &engine)?;
    let l = build_lax(pt)?;
    let r12 = build_r_matrix(pt)?;
    let r21 = r12.swap_slots();
    let i_nu = Complex::new(T::zero(), engine.scale());
    let rhs = &r12.commutator_slot1(&l).scale(-i_nu) + &r21.commutator_slot2(&l).scale(i_nu);
    Ok((&lhs - &rhs).max_norm())
}

/// Right-hand sides of the two position-commutator identities for the
/// r-matrix, in their direct elementary-matrix form:
///
/// * `[R_1, r_12] = -i sum_{k != l} E_kl (x) E_lk`
/// * `[R_2, r_12] = i sum_{k,l} E_kl (x) E_lk
///                  - (i/2) [ sum_m E_mm (x) E_mm, 1 (x) sum_{kl} E_kl ]_+`
pub fn r_commutator_rhs<T: Real>(n: usize) -> Result<(TensorOperator<T>, TensorOperator<T>)> {
    let i1 = Complex::new(T::zero(), T::one());
    let mut rhs1 = TensorOperator::zeros(n)?;
    for k in 0..n {
        for l in 0..n {
            if k != l {
                rhs1.add_term(k, l, l, k, -i1);
            }
        }
    }
    let mut exchange = TensorOperator::zeros(n)?;
    for k in 0..n {
        for l in 0..n {
            exchange.add_term(k, l, l, k, i1);
        }
    }
    let mut diag = TensorOperator::zeros(n)?;
    for m in 0..n {
        diag.add_term(m, m, m, m, Complex::new(T::one(), T::zero()));
    }
    let ones_second = TensorOperator::kron(&FuzzyMatrix::identity(n), &all_ones::<T>(n))?;
    let half_i = Complex::new(T::zero(), T::from_f64_c(0.5));
    let rhs2 = &exchange - &diag.anticommutator(&ones_second).scale(half_i);
    Ok((rhs1, rhs2))
}

/// The same right-hand sides rewritten through the quantized delta
/// symbols:
///
/// * `-(2i/n) (2 pi Q(delta_full) - Q(delta_sigma_diag))`
/// * `(2i/n) 2 pi Q(delta_full) - (i/n) [Q(delta_sigma_diag), 1 (x) 2 pi Q(delta_phi)]_+`
pub fn r_commutator_rhs_via_deltas<T: Real>(
    n: usize,
) -> Result<(TensorOperator<T>, TensorOperator<T>)> {
    let two_pi = T::from_f64_c(2.0) * T::PI();
    let nf = T::from_usize_c(n);
    let q_full = quantize_tensor(&SphereFunction::<T>::DeltaFull, n)?.scale(Complex::new(two_pi, T::zero()));
    let q_diag = quantize_tensor(&SphereFunction::<T>::DeltaSigmaDiag, n)?;
    let minus_2i_over_n = Complex::new(T::zero(), -T::from_f64_c(2.0) / nf);
    let rhs1 = (&q_full - &q_diag).scale(minus_2i_over_n);

    // 1 (x) 2 pi Q(delta_phi) = 1 (x) K
    let ones_second = TensorOperator::kron(&FuzzyMatrix::identity(n), &all_ones::<T>(n))?;
    let two_i_over_n = Complex::new(T::zero(), T::from_f64_c(2.0) / nf);
    let i_over_n = Complex::new(T::zero(), T::one() / nf);
    let rhs2 = &q_full.scale(two_i_over_n) - &q_diag.anticommutator(&ones_second).scale(i_over_n);
    Ok((rhs1, rhs2))
}

/// Max-entry residuals of the two identities `[R_1, r]` and `[R_2, r]`
/// against their direct right-hand sides. Also cross-checks that the
/// delta-symbol rewriting agrees with the direct forms (machine
/// precision); the rewrite mismatch is folded into the returned residuals.
pub fn r_commutator_identities_residual<T: Real>(pt: &PhasePoint<T>) -> Result<(T, T)> {
    let n = pt.n();
    let r12 = build_r_matrix(pt)?;
    let rpos = position_matrix(pt);
    let (rhs1, rhs2) = r_commutator_rhs::<T>(n)?;
    let (alt1, alt2) = r_commutator_rhs_via_deltas::<T>(n)?;
    let res1 = (&r12.commutator_slot1(&rpos).scale(Complex::new(-T::one(), T::zero())) - &rhs1).max_norm();
    let res2 = (&r12.commutator_slot2(&rpos).scale(Complex::new(-T::one(), T::zero())) - &rhs2).max_norm();
    let rewrite1 = (&rhs1 - &alt1).max_norm();
    let rewrite2 = (&rhs2 - &alt2).max_norm();
    Ok((res1.max(rewrite1), res2.max(rewrite2)))
}

/// Max-entry mismatch between the direct and delta-rewritten right-hand
/// sides alone (independent of any phase point).
pub fn delta_rewrite_residual<T: Real>(n: usize) -> Result<(T, T)> {
    let (rhs1, rhs2) = r_commutator_rhs::<T>(n)?;
    let (alt1, alt2) = r_commutator_rhs_via_deltas::<T>(n)?;
    Ok(((&rhs1 - &alt1).max_norm(), (&rhs2 - &alt2).max_norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calogero::phase::random_phase_point;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_body() -> PhasePoint<f64> {
        PhasePoint::new(vec![1.0, -1.0], vec![0.3, -0.9], 1.0).unwrap()
    }

    #[test]
    fn r_matrix_two_body_coefficients() {
        // coefficient of E_12 (x) E_21 is i/(q_2 - q_1) = -i/2
        let r = build_r_matrix(&two_body()).unwrap();
        assert!((r.coeff(0, 1, 1, 0) - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        // slot swap carries it to E_21 (x) E_12
        let r21 = r.swap_slots();
        assert!((r21.coeff(1, 0, 0, 1) - Complex64::new(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn r_matrix_translation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pt = random_phase_point::<f64>(5, 1.0, &mut rng);
        let shifted = PhasePoint::new(
            pt.q().iter().map(|q| q + 17.25).collect(),
            pt.p().to_vec(),
            pt.coupling(),
        )
        .unwrap();
        let a = build_r_matrix(&pt).unwrap();
        let b = build_r_matrix(&shifted).unwrap();
        assert!((&a - &b).max_norm() < 1e-12);
    }

    #[test]
    fn fundamental_relation_two_body() {
        assert!(fundamental_relation_residual(&two_body()).unwrap() <= 1e-14);
    }

    #[test]
    fn fundamental_relation_free_case() {
        // c = 0: the Lax matrix is diagonal in the momenta and both sides vanish
        let pt = PhasePoint::new(vec![0.8, -0.1, -0.9], vec![1.0, 2.0, 3.0], 0.0).unwrap();
        let engine = PoissonEngine::paper_convention(pt.n());
        assert_eq!(lax_bracket_tensor(&pt, &engine).unwrap().max_norm(), 0.0);
        assert!(fundamental_relation_residual(&pt).unwrap() <= 1e-15);
    }

    #[test]
    fn fundamental_relation_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let pt = random_phase_point::<f64>(12, 1.0, &mut rng);
            worst = worst.max(fundamental_relation_residual(&pt).unwrap());
        }
        assert!(worst <= 1e-11, "worst residual {worst:.3e}");
    }

    #[test]
    fn r_commutator_identities_two_body_and_shift() {
        let (r1, r2) = r_commutator_identities_residual(&two_body()).unwrap();
        assert!(r1 <= 1e-14 && r2 <= 1e-14, "({r1:.3e}, {r2:.3e})");

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pt = random_phase_point::<f64>(6, 1.0, &mut rng);
        let shifted = PhasePoint::new(
            pt.q().iter().map(|q| q - 3.5).collect(),
            pt.p().to_vec(),
            pt.coupling(),
        )
        .unwrap();
        let a = r_commutator_identities_residual(&pt).unwrap();
        let b = r_commutator_identities_residual(&shifted).unwrap();
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    }

    #[test]
    fn r_commutator_identities_n16() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let pt = random_phase_point::<f64>(16, 1.0, &mut rng);
        let (r1, r2) = r_commutator_identities_residual(&pt).unwrap();
        assert!(r1 <= 1e-12 && r2 <= 1e-12, "({r1:.3e}, {r2:.3e})");
    }

    #[test]
    fn delta_rewrite_is_exact() {
        for n in [2usize, 3, 5, 8] {
            let (d1, d2) = delta_rewrite_residual::<f64>(n).unwrap();
            assert!(d1 <= 1e-13 && d2 <= 1e-13, "n = {n}: ({d1:.3e}, {d2:.3e})");
        }
    }
}
