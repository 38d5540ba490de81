//! The quantization map: sphere functions to n x n matrices.
//!
//! Generator matrices: `Q(x3)` is diagonal with entries
//! `(n + 1 - 2j)/sqrt(n^2 - 1)`, and `Q(x1 + i x2)` carries
//! `2 sqrt((j-1)(n-j+1))/sqrt(n^2 - 1)` on the first superdiagonal.
//! Products of generators quantize polynomials through fully symmetrized
//! (Weyl) ordering; sigma-profiles sample the diagonal at the nodes
//! `sigma_j = (n + 1 - 2j)/sqrt(n^2 - 1)`; the vortex `e^{i phi}` becomes
//! the shift block with ones on the first superdiagonal; `2 pi delta(phi)`
//! becomes the all-ones matrix. The delta symbols on the product of two
//! spheres quantize into the tensor square.

use crate::error::{CoreError, Result};
use crate::fuzzy::function::{Profile, SphereFunction};
use crate::fuzzy::polynomial::Polynomial;
use crate::linalg::{FuzzyMatrix, TensorOperator};
use crate::scalar::Real;
use num_complex::Complex;
use std::collections::HashMap;

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(CoreError::DimensionTooSmall(n));
    }
    Ok(())
}

/// Sampling nodes `sigma_j = (n + 1 - 2j)/sqrt(n^2 - 1)`, `j = 1..n`
/// (strictly decreasing).
pub fn sigma_nodes<T: Real>(n: usize) -> Vec<T> {
    let norm = (T::from_usize_c(n * n) - T::one()).sqrt();
    (1..=n)
        .map(|j| {
            let num = T::from_usize_c(n + 1) - T::from_f64_c(2.0) * T::from_usize_c(j);
            num / norm
        })
        .collect()
}

/// The three generator matrices `(Q(x1), Q(x2), Q(x3))`.
pub fn build_generators<T: Real>(n: usize) -> Result<(FuzzyMatrix<T>, FuzzyMatrix<T>, FuzzyMatrix<T>)> {
    check_dim(n)?;
    let x3 = FuzzyMatrix::from_real_diag(&sigma_nodes::<T>(n));
    let raising = raising_generator::<T>(n);
    let lowering = raising.dagger();
    let half = Complex::new(T::from_f64_c(0.5), T::zero());
    let half_over_i = Complex::new(T::zero(), -T::from_f64_c(0.5));
    let x1 = (&raising + &lowering).scale(half);
    let x2 = (&raising - &lowering).scale(half_over_i);
    Ok((x1, x2, x3))
}

/// `Q(x1 + i x2)`: first superdiagonal `2 sqrt((j-1)(n-j+1))/sqrt(n^2-1)`.
pub fn raising_generator<T: Real>(n: usize) -> FuzzyMatrix<T> {
    let norm = (T::from_usize_c(n * n) - T::one()).sqrt();
    let mut m = FuzzyMatrix::zeros(n);
    for j in 2..=n {
        let v = T::from_f64_c(2.0) * (T::from_usize_c(j - 1) * T::from_usize_c(n - j + 1)).sqrt() / norm;
        m.set_entry(j - 2, j - 1, Complex::new(v, T::zero()));
    }
    m
}

/// Shift block with ones on the first superdiagonal (`Q(e^{i phi})`).
pub fn vortex_block<T: Real>(n: usize) -> FuzzyMatrix<T> {
    let mut m = FuzzyMatrix::zeros(n);
    for j in 0..n - 1 {
        m.set_entry(j, j + 1, Complex::new(T::one(), T::zero()));
    }
    m
}

/// All-ones matrix (`2 pi Q(delta(phi))`).
pub fn all_ones<T: Real>(n: usize) -> FuzzyMatrix<T> {
    FuzzyMatrix::ones(n)
}

/// Quantizes a single-sphere function into an n x n matrix.
///
/// The delta symbols on the product of two spheres are rejected here; use
/// [`quantize_tensor`] for those.
pub fn quantize<T: Real>(f: &SphereFunction<T>, n: usize) -> Result<FuzzyMatrix<T>> {
    check_dim(n)?;
    match f {
        SphereFunction::Polynomial(p) => quantize_polynomial(p, n),
        SphereFunction::SigmaProfile(profile) => quantize_profile(profile, n),
        SphereFunction::VortexPower(k) => {
            let v = vortex_block::<T>(n);
            if *k >= 0 {
                Ok(v.pow(*k as u32))
            } else {
                Ok(v.dagger().pow((-*k) as u32))
            }
        }
        SphereFunction::DeltaPhi => {
            let two_pi = T::from_f64_c(2.0) * T::PI();
            Ok(all_ones::<T>(n).scale_real(T::one() / two_pi))
        }
        SphereFunction::DeltaSigmaDiag => Err(CoreError::TensorSymbol("delta-sigma-diagonal")),
        SphereFunction::DeltaFull => Err(CoreError::TensorSymbol("delta-full")),
    }
}

/// Quantizes a product-sphere delta symbol into the tensor square:
/// `delta(sigma_1 - sigma_2) -> (n/2) sum_k E_kk (x) E_kk` and
/// `delta(sigma_1 - sigma_2) delta(phi_1 - phi_2) -> (n/4pi) sum_kl E_kl (x) E_lk`.
pub fn quantize_tensor<T: Real>(f: &SphereFunction<T>, n: usize) -> Result<TensorOperator<T>> {
    check_dim(n)?;
    match f {
        SphereFunction::DeltaSigmaDiag => {
            let mut t = TensorOperator::zeros(n)?;
            let half_n = T::from_usize_c(n) / T::from_f64_c(2.0);
            for k in 0..n {
                t.add_term(k, k, k, k, Complex::new(half_n, T::zero()));
            }
            Ok(t)
        }
        SphereFunction::DeltaFull => {
            let mut t = TensorOperator::zeros(n)?;
            let w = T::from_usize_c(n) / (T::from_f64_c(4.0) * T::PI());
            for k in 0..n {
                for l in 0..n {
                    t.add_term(k, l, l, k, Complex::new(w, T::zero()));
                }
            }
            Ok(t)
        }
        other => Err(CoreError::MatrixSymbol(other.kind())),
    }
}

fn quantize_profile<T: Real>(profile: &Profile<T>, n: usize) -> Result<FuzzyMatrix<T>> {
    let nodes = sigma_nodes::<T>(n);
    let mut diag = Vec::with_capacity(n);
    for s in nodes {
        let v = profile.value(s);
        if !v.is_finite() {
            return Err(CoreError::ProfileDomain {
                sigma: s.as_f64(),
                detail: format!("profile '{}' returned {}", profile.name(), v.as_f64()),
            });
        }
        diag.push(v);
    }
    Ok(FuzzyMatrix::from_real_diag(&diag))
}

fn quantize_polynomial<T: Real>(p: &Polynomial<T>, n: usize) -> Result<FuzzyMatrix<T>> {
    let (x1, x2, x3) = build_generators::<T>(n)?;
    let gens = [x1, x2, x3];
    let mut memo: HashMap<(u32, u32, u32), FuzzyMatrix<T>> = HashMap::new();
    let mut out = FuzzyMatrix::zeros(n);
    for (m, c) in p.terms() {
        let w = symmetrized_product(&gens, (m.e1, m.e2, m.e3), &mut memo);
        out = &out + &w.scale(*c);
    }
    Ok(out)
}

/// Average of the generator products over all orderings of the multiset
/// `{x1^a, x2^b, x3^c}`, computed by conditioning on the first factor.
fn symmetrized_product<T: Real>(
    gens: &[FuzzyMatrix<T>; 3],
    key: (u32, u32, u32),
    memo: &mut HashMap<(u32, u32, u32), FuzzyMatrix<T>>,
) -> FuzzyMatrix<T> {
    if let Some(m) = memo.get(&key) {
        return m.clone();
    }
    let (a, b, c) = key;
    let total = a + b + c;
    let n = gens[0].dim();
    let result = if total == 0 {
        FuzzyMatrix::identity(n)
    } else {
        let mut acc = FuzzyMatrix::zeros(n);
        if a > 0 {
            let rest = symmetrized_product(gens, (a - 1, b, c), memo);
            acc = &acc + &gens[0].matmul(&rest).scale_real(T::from_usize_c(a as usize));
        }
        if b > 0 {
            let rest = symmetrized_product(gens, (a, b - 1, c), memo);
            acc = &acc + &gens[1].matmul(&rest).scale_real(T::from_usize_c(b as usize));
        }
        if c > 0 {
            let rest = symmetrized_product(gens, (a, b, c - 1), memo);
            acc = &acc + &gens[2].matmul(&rest).scale_real(T::from_usize_c(c as usize));
        }
        acc.scale_real(T::one() / T::from_usize_c(total as usize))
    };
    memo.insert(key, result.clone());
    result
}

/// Rotation phases `diag(e^{i alpha (n + 1 - 2k)/2})`: conjugating by this
/// unitary implements the z-rotation of the sphere on quantized functions.
pub fn z_rotation_unitary<T: Real>(n: usize, alpha: T) -> FuzzyMatrix<T> {
    let half = T::from_f64_c(0.5);
    let diag: Vec<Complex<T>> = (1..=n)
        .map(|k| {
            let spin = (T::from_usize_c(n + 1) - T::from_f64_c(2.0) * T::from_usize_c(k)) * half;
            Complex::from_polar(T::one(), alpha * spin)
        })
        .collect();
    FuzzyMatrix::from_diag(&diag)
}
