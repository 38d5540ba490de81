//! Large-n limit experiments: trace-power integrals of the Lax function
//! and the convergence of finite-n traces and off-diagonal bands to them.

use crate::calogero::build_lax;
use crate::continuum::field::FieldConfig;
use crate::error::{CoreError, Result};
use crate::fuzzy::sigma_nodes;
use crate::numerics::{binomial, integrate, log_log_slope};
use crate::scalar::Real;
use num_complex::Complex;

/// `(1/2pi) \int omega L^m` for the Lax function
/// `L = p + c/(2 q') E(phi)`: the phi-average of `E^k` is
/// `pi^k/(k+1)` for even `k` and zero for odd `k`, so
///
/// `integral = \int d sigma  sum_{k even} C(m, k) p^{m-k} (c/2q')^k pi^k/(k+1)`.
pub fn trace_power_integral<T: Real>(cfg: &FieldConfig<T>, m: u32) -> Result<T> {
    if m < 1 {
        return Err(CoreError::Precondition(format!(
            "trace power must be >= 1, got {m}"
        )));
    }
    let two = T::from_f64_c(2.0);
    integrate(
        |s: T| {
            let p = cfg.momentum_at(s);
            let g = cfg.coupling() / (two * cfg.slope_at(s));
            let mut acc = T::zero();
            let mut k = 0u32;
            while k <= m {
                let avg = T::PI().powi(k as i32) / T::from_usize_c(k as usize + 1);
                acc += binomial::<T>(m, k) * p.powi((m - k) as i32) * g.powi(k as i32) * avg;
                k += 2;
            }
            acc
        },
        -T::one(),
        T::one(),
        T::from_f64_c(1e-10),
        T::from_f64_c(1e-13),
    )
}

/// Scaled trace `(2/n) tr L(n)^m` of the sampled finite system.
pub fn sampled_trace_power<T: Real>(cfg: &FieldConfig<T>, n: usize, m: u32) -> Result<T> {
    let pt = crate::continuum::sampled_phase_point(cfg, n)?;
    let l = build_lax(&pt)?;
    let tr = l.pow(m).trace().re;
    Ok(T::from_f64_c(2.0) / T::from_usize_c(n) * tr)
}

/// Residual table `|(2/n) tr L(n)^m - integral|` per size.
pub fn trace_convergence<T: Real>(
    cfg: &FieldConfig<T>,
    m: u32,
    sizes: &[usize],
) -> Result<Vec<(usize, T)>> {
    if !sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(CoreError::Precondition(
            "sizes must be strictly ascending".into(),
        ));
    }
    let target = trace_power_integral(cfg, m)?;
    sizes
        .iter()
        .map(|&n| Ok((n, (sampled_trace_power(cfg, n, m)? - target).abs())))
        .collect()
}

/// Max deviation over interior rows of the k-th superdiagonal of `L(n)`
/// from the Fourier coefficient `i c/(2 q'(sigma_j) k)` of the Lax
/// function. A 10% margin at each end is excluded: the sampling
/// compresses near the poles and would pollute the rate estimate.
pub fn offdiagonal_band_residual<T: Real>(
    cfg: &FieldConfig<T>,
    n: usize,
    band: i64,
) -> Result<T> {
    if band == 0 || band.unsigned_abs() as usize >= n {
        return Err(CoreError::BandOutOfRange { band, n });
    }
    let k = band.unsigned_abs() as usize;
    let pt = crate::continuum::sampled_phase_point(cfg, n)?;
    pt.require_distinct_default()?;
    let nodes = sigma_nodes::<T>(n);
    let kappa = pt.kappa();
    let margin = (0.1 * n as f64).ceil() as usize;
    if n < 2 * margin + k + 1 {
        return Err(CoreError::Precondition(format!(
            "dimension {n} too small for band {k} with a 10% margin"
        )));
    }
    let two = T::from_f64_c(2.0);
    let kf = T::from_usize_c(k);
    let mut worst = T::zero();
    for j in margin..(n - margin - k) {
        let entry = Complex::new(T::zero(), kappa / (pt.q()[j] - pt.q()[j + k]));
        let coeff = Complex::new(T::zero(), cfg.coupling() / (two * cfg.slope_at(nodes[j]) * kf));
        let target = if band > 0 { coeff } else { coeff.conj() };
        let dev = (entry - target).norm();
        if dev > worst {
            worst = dev;
        }
    }
    Ok(worst)
}

/// Residual table for a band across sizes.
pub fn offdiagonal_convergence<T: Real>(
    cfg: &FieldConfig<T>,
    band: i64,
    sizes: &[usize],
) -> Result<Vec<(usize, T)>> {
    sizes
        .iter()
        .map(|&n| Ok((n, offdiagonal_band_residual(cfg, n, band)?)))
        .collect()
}

/// Fitted log-log slope of a residual table.
pub fn fitted_slope<T: Real>(table: &[(usize, T)]) -> Result<T> {
    log_log_slope(table)
}
