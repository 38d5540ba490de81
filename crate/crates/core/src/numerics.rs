//! Small numerical utilities: adaptive quadrature and log-log slope fits.

use crate::error::{CoreError, Result};
use crate::scalar::Real;

/// 15-point Kronrod abscissae on [-1, 1] (non-negative half; symmetric).
const KRONROD_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// 7-point Gauss weights matching the odd Kronrod nodes.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn kronrod_pair<T: Real>(f: &mut impl FnMut(T) -> T, a: T, b: T) -> (T, T) {
    let half = T::from_f64_c(0.5);
    let mid = (a + b) * half;
    let hl = (b - a) * half;
    let mut kronrod = T::zero();
    let mut gauss = T::zero();
    for (i, (&x, &wk)) in KRONROD_NODES.iter().zip(KRONROD_WEIGHTS.iter()).enumerate() {
        let xs = T::from_f64_c(x);
        let fsum = if x == 0.0 {
            f(mid)
        } else {
            f(mid - hl * xs) + f(mid + hl * xs)
        };
        kronrod += T::from_f64_c(wk as f64) * fsum;
        if i % 2 == 1 {
            gauss += T::from_f64_c(GAUSS_WEIGHTS[i / 2]) * fsum;
        }
    }
    (kronrod * hl, (kronrod - gauss).abs() * hl.abs())
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Bisects the worst interval until the summed error estimate drops below
/// `max(abs_tol, rel_tol * |integral|)`. Fails with diagnostics if the
/// interval budget is exhausted.
pub fn integrate<T: Real>(
    mut f: impl FnMut(T) -> T,
    a: T,
    b: T,
    rel_tol: T,
    abs_tol: T,
) -> Result<T> {
    struct Seg<T> {
        a: T,
        b: T,
        val: T,
        err: T,
    }
    let (val, err) = kronrod_pair(&mut f, a, b);
    let mut segs = vec![Seg { a, b, val, err }];
    let max_segments = 4096;

    loop {
        let mut total = T::zero();
        let mut total_err = T::zero();
        let mut worst = 0usize;
        let mut worst_err = T::neg_infinity();
        for (i, s) in segs.iter().enumerate() {
            total += s.val;
            total_err += s.err;
            if s.err > worst_err {
                worst_err = s.err;
                worst = i;
            }
        }
        let target = abs_tol.max(rel_tol * total.abs());
        if total_err <= target {
            return Ok(total);
        }
        if segs.len() >= max_segments {
            return Err(CoreError::Numerical {
                context: format!(
                    "adaptive quadrature did not converge in {max_segments} segments"
                ),
                estimate: total.as_f64(),
                error: total_err.as_f64(),
            });
        }
        let Seg { a, b, .. } = segs.swap_remove(worst);
        let half = T::from_f64_c(0.5);
        let mid = (a + b) * half;
        if !(mid > a && mid < b) {
            return Err(CoreError::Numerical {
                context: "adaptive quadrature interval underflow".into(),
                estimate: total.as_f64(),
                error: total_err.as_f64(),
            });
        }
        let (v1, e1) = kronrod_pair(&mut f, a, mid);
        let (v2, e2) = kronrod_pair(&mut f, mid, b);
        segs.push(Seg {
            a,
            b: mid,
            val: v1,
            err: e1,
        });
        segs.push(Seg {
            a: mid,
            b,
            val: v2,
            err: e2,
        });
    }
}

/// Least-squares slope of `log(residual)` against `log(n)`.
///
/// Needs at least three points and strictly positive residuals.
pub fn log_log_slope<T: Real>(points: &[(usize, T)]) -> Result<T> {
    if points.len() < 3 {
        return Err(CoreError::Precondition(format!(
            "slope fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    for &(n, r) in points {
        if !(r > T::zero()) || !r.is_finite() {
            return Err(CoreError::Numerical {
                context: format!("slope fit requires positive residuals; n = {n} gave {}", r.as_f64()),
                estimate: r.as_f64(),
                error: f64::NAN,
            });
        }
    }
    let m = T::from_usize_c(points.len());
    let mut sx = T::zero();
    let mut sy = T::zero();
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for &(n, r) in points {
        let x = T::from_usize_c(n).ln();
        let y = r.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = m * sxx - sx * sx;
    Ok((m * sxy - sx * sy) / denom)
}

/// Binomial coefficient as a scalar; exact for the small arguments used here.
pub fn binomial<T: Real>(n: u32, k: u32) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut v = 1.0f64;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    T::from_f64_c(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn quadrature_polynomial_and_trig() {
        let v = integrate(|x: f64| 1.0 - x * x, -1.0, 1.0, 1e-12, 1e-14).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-12);
        let v = integrate(|x: f64| (3.0 * x).cos(), 0.0, PI, 1e-12, 1e-14).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn quadrature_endpoint_derivative_singularity() {
        // semicircle area, integrand has infinite slope at the endpoints
        let v = integrate(|x: f64| (1.0 - x * x).sqrt(), -1.0, 1.0, 1e-10, 1e-12).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn quadrature_reports_nonconvergence() {
        // non-integrable singularity
        let r = integrate(|x: f64| 1.0 / x.abs(), -1.0, 1.0, 1e-10, 1e-12);
        assert!(r.is_err());
    }

    #[test]
    fn slope_fit_recovers_planted_exponent() {
        let pts: Vec<(usize, f64)> = [16usize, 32, 64, 128]
            .iter()
            .map(|&n| (n, 3.7 * (n as f64).powf(-1.5)))
            .collect();
        let s = log_log_slope(&pts).unwrap();
        assert!((s + 1.5).abs() < 1e-12);
        assert!(log_log_slope(&pts[..2]).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial::<f64>(4, 2), 6.0);
        assert_eq!(binomial::<f64>(6, 0), 1.0);
        assert_eq!(binomial::<f64>(5, 5), 1.0);
        assert_eq!(binomial::<f64>(3, 7), 0.0);
    }
}
