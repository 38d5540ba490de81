//! The limiting r-distribution: reduced kernel checks.
//!
//! The full distribution on the product of two spheres is
//! `delta(sigma_1 - sigma_2) * rk(sigma; phi_1, phi_2)` with reduced kernel
//!
//! `rk = -(1/q'(sigma)) (E(phi_1 - phi_2) + E(phi_2))`.
//!
//! Away from the lines `phi_1 = phi_2` and `phi_2 = 0` the kernel is
//! piecewise linear with `d rk/d phi_1 = -1/q'` and `d rk/d phi_2 = 0`;
//! across either line it jumps by `+2 pi / q'`, which reproduces the
//! delta terms of the defining differential relations.

use crate::continuum::field::FieldConfig;
use crate::continuum::sawtooth::sawtooth;
use crate::error::{CoreError, Result};
use crate::numerics::integrate;
use crate::scalar::Real;
use num_complex::Complex;

/// Reduced kernel `rk(sigma; phi_1, phi_2)`.
pub fn reduced_kernel<T: Real>(cfg: &FieldConfig<T>, sigma: T, phi1: T, phi2: T) -> T {
    -(sawtooth(phi1 - phi2) + sawtooth(phi2)) / cfg.slope_at(sigma)
}

#[derive(Debug, Clone)]
pub struct RDistReport<T> {
    /// Max residual of the two pointwise derivative conditions away from
    /// the discontinuity lines.
    pub max_derivative_residual: T,
    /// Max relative deviation of the kernel jumps from `2 pi / q'`.
    pub max_jump_relative_error: T,
    /// Per truncation order: max deviation of the smeared pairing
    /// coefficients from the delta-identity target.
    pub fourier_residuals: Vec<(u32, T)>,
}

/// Runs derivative, jump and smeared-pairing checks of the reduced kernel
/// on a `resolution x resolution` staggered grid.
pub fn r_distribution_checks<T: Real>(
    cfg: &FieldConfig<T>,
    resolution: usize,
) -> Result<RDistReport<T>> {
    if resolution < 8 {
        return Err(CoreError::Config(format!(
            "grid resolution {resolution} too coarse to isolate the discontinuity lines (need >= 8)"
        )));
    }
    let two_pi = T::from_f64_c(2.0) * T::PI();
    let h = T::from_f64_c(1e-6);
    let line_margin = T::from_f64_c(1e-3);

    let sigmas: Vec<T> = (0..resolution)
        .map(|k| T::from_f64_c(-0.85 + 1.7 * (k as f64 + 0.5) / resolution as f64))
        .collect();
    // staggered phi grid never hits phi = 0 exactly
    let phis: Vec<T> = (0..resolution)
        .map(|k| -T::PI() + two_pi * T::from_f64_c((k as f64 + 0.5) / resolution as f64))
        .collect();

    let mut max_deriv = T::zero();
    for &sigma in &sigmas {
        let slope = cfg.slope_at(sigma);
        for &phi1 in &phis {
            for &phi2 in &phis {
                if (phi1 - phi2).abs() < line_margin
                    || phi2.abs() < line_margin
                    || ((phi1 - phi2).abs() - two_pi).abs() < line_margin
                {
                    continue;
                }
                let two_h = T::from_f64_c(2.0) * h;
                let d1 = (reduced_kernel(cfg, sigma, phi1 + h, phi2)
                    - reduced_kernel(cfg, sigma, phi1 - h, phi2))
                    / two_h;
                let d2 = (reduced_kernel(cfg, sigma, phi1, phi2 + h)
                    - reduced_kernel(cfg, sigma, phi1, phi2 - h))
                    / two_h;
                max_deriv = max_deriv.max((d1 + T::one() / slope).abs()).max(d2.abs());
            }
        }
    }

    // jumps: approach the lines from both sides with a tiny offset
    let eps = T::from_f64_c(1e-9);
    let mut max_jump = T::zero();
    for &sigma in &sigmas {
        let expected = two_pi / cfg.slope_at(sigma);
        for &phi in &phis {
            if phi.abs() < line_margin {
                continue;
            }
            // crossing phi_1 = phi_2 in the phi_1 direction at phi_2 = phi
            let jump1 =
                reduced_kernel(cfg, sigma, phi + eps, phi) - reduced_kernel(cfg, sigma, phi - eps, phi);
            // crossing phi_2 = 0 at fixed phi_1 = phi
            let jump2 =
                reduced_kernel(cfg, sigma, phi, eps) - reduced_kernel(cfg, sigma, phi, -eps);
            max_jump = max_jump
                .max(((jump1 - expected) / expected).abs())
                .max(((jump2 - expected) / expected).abs());
        }
    }

    let fourier_residuals = [2u32, 4, 8]
        .iter()
        .map(|&nmax| Ok((nmax, fourier_pairing_residual(cfg, sigmas[0], nmax)?)))
        .collect::<Result<Vec<_>>>()?;

    Ok(RDistReport {
        max_derivative_residual: max_deriv,
        max_jump_relative_error: max_jump,
        fourier_residuals,
    })
}

/// Smeared check of `-q' d(rk)/d(phi_1) = 1 - 2 pi delta(phi_1 - phi_2)`:
/// pairs the left side against `e^{i(n phi_1 + m phi_2)}` by parts (the
/// kernel is bounded and periodic, so no boundary terms) and compares
/// with the Fourier coefficients of the right side,
/// `delta_{n0} delta_{m0} - delta_{n, -m}`, for all `|n|, |m| <= n_max`.
pub fn fourier_pairing_residual<T: Real>(
    cfg: &FieldConfig<T>,
    sigma: T,
    n_max: u32,
) -> Result<T> {
    let slope = cfg.slope_at(sigma);
    let two_pi = T::from_f64_c(2.0) * T::PI();
    let four_pi2 = two_pi * two_pi;

    // sawtooth Fourier integrals \int E(u) e^{iku} du over one period,
    // computed by quadrature on the two smooth pieces
    let hat = |k: i64| -> Result<Complex<T>> {
        if k == 0 {
            // odd function
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        let kf = T::from_f64_c(k as f64);
        let mut re = T::zero();
        let mut im = T::zero();
        for (a, b) in [(-T::PI(), T::zero()), (T::zero(), T::PI())] {
            re += integrate(
                |u: T| sawtooth(u) * (kf * u).cos(),
                a,
                b,
                T::from_f64_c(1e-12),
                T::from_f64_c(1e-14),
            )?;
            im += integrate(
                |u: T| sawtooth(u) * (kf * u).sin(),
                a,
                b,
                T::from_f64_c(1e-12),
                T::from_f64_c(1e-14),
            )?;
        }
        Ok(Complex::new(re, im))
    };

    let range = -(n_max as i64)..=(n_max as i64);
    let mut worst = T::zero();
    for n in range.clone() {
        for m in range.clone() {
            // pairing (1/4pi^2) <-q' d(rk)/d(phi1), e^{i n phi1} e^{i m phi2}>
            //   = (i n q'/4pi^2) \int\int rk e^{i n phi1} e^{i m phi2}
            // and the double integral reduces to sawtooth Fourier data:
            //   \int\int E(phi1-phi2) e = 2 pi delta_{n+m,0} hat(n)
            //   \int\int E(phi2)      e = 2 pi delta_{n,0}   hat(m)
            let mut pairing = Complex::new(T::zero(), T::zero());
            if n != 0 {
                let mut kernel_int = Complex::new(T::zero(), T::zero());
                if n + m == 0 {
                    kernel_int = kernel_int + hat(n)? * Complex::new(two_pi, T::zero());
                }
                // the delta_{n0} branch of the second term is dead here (n != 0)
                kernel_int = kernel_int * Complex::new(-T::one() / slope, T::zero());
                let in_qp = Complex::new(T::zero(), T::from_f64_c(n as f64) * slope);
                pairing = in_qp * kernel_int / Complex::new(four_pi2, T::zero());
            }
            let target = {
                let one = T::one();
                let mut t = T::zero();
                if n == 0 && m == 0 {
                    t += one;
                }
                if n + m == 0 {
                    t -= one;
                }
                Complex::new(t, T::zero())
            };
            let dev = (pairing - target).norm();
            if dev > worst {
                worst = dev;
            }
        }
    }
    Ok(worst)
}
