//! Sphere points and the function representations the quantization map accepts.

use crate::error::{CoreError, Result};
use crate::fuzzy::polynomial::Polynomial;
use crate::scalar::Real;
use std::fmt;
use std::sync::Arc;

/// Point on the unit sphere in the `(sigma, phi)` chart,
/// `sigma in [-1, 1]`, `phi in [-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint<T> {
    pub sigma: T,
    pub phi: T,
}

impl<T: Real> SpherePoint<T> {
    pub fn new(sigma: T, phi: T) -> Result<Self> {
        if sigma < -T::one() || sigma > T::one() {
            return Err(CoreError::Precondition(format!(
                "sigma = {} outside [-1, 1]",
                sigma.as_f64()
            )));
        }
        if phi < -T::PI() || phi > T::PI() {
            return Err(CoreError::Precondition(format!(
                "phi = {} outside [-pi, pi]",
                phi.as_f64()
            )));
        }
        Ok(Self { sigma, phi })
    }

    /// Embedding coordinates; satisfy `x1^2 + x2^2 + x3^2 = 1`.
    pub fn embedding(&self) -> [T; 3] {
        let r = (T::one() - self.sigma * self.sigma).max(T::zero()).sqrt();
        [r * self.phi.cos(), r * self.phi.sin(), self.sigma]
    }
}

/// A profile of `sigma` together with its derivative.
#[derive(Clone)]
pub struct Profile<T> {
    name: Arc<str>,
    f: Arc<dyn Fn(T) -> T + Send + Sync>,
    df: Arc<dyn Fn(T) -> T + Send + Sync>,
}

impl<T: Real> Profile<T> {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(T) -> T + Send + Sync + 'static,
        df: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: Arc::from(name.into()),
            f: Arc::new(f),
            df: Arc::new(df),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, sigma: T) -> T {
        (self.f)(sigma)
    }

    pub fn deriv(&self, sigma: T) -> T {
        (self.df)(sigma)
    }

    pub fn constant(c: T) -> Self {
        Self::new(format!("const {}", c.as_f64()), move |_| c, |_| T::zero())
    }

    pub fn identity() -> Self {
        Self::new("sigma", |s| s, |_| T::one())
    }
}

impl<T> fmt::Debug for Profile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile({})", self.name)
    }
}

/// A function (or singular symbol) on the sphere, or on the product of two
/// spheres for the delta symbols.
#[derive(Debug, Clone)]
pub enum SphereFunction<T> {
    /// Finite list of monomials in the embedding coordinates.
    Polynomial(Polynomial<T>),
    /// A phi-independent profile of sigma.
    SigmaProfile(Profile<T>),
    /// `e^{i n phi}`.
    VortexPower(i64),
    /// `delta(phi)` on the single sphere.
    DeltaPhi,
    /// `delta(sigma_1 - sigma_2)` on the product of two spheres.
    DeltaSigmaDiag,
    /// `delta(sigma_1 - sigma_2) delta(phi_1 - phi_2)` on the product.
    DeltaFull,
}

impl<T: Real> SphereFunction<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            SphereFunction::Polynomial(_) => "polynomial",
            SphereFunction::SigmaProfile(_) => "sigma-profile",
            SphereFunction::VortexPower(_) => "vortex",
            SphereFunction::DeltaPhi => "delta-phi",
            SphereFunction::DeltaSigmaDiag => "delta-sigma-diagonal",
            SphereFunction::DeltaFull => "delta-full",
        }
    }
}

/// Poisson bracket `{f, g} = (df/dphi)(dg/dsigma) - (df/dsigma)(dg/dphi)`
/// for the pairs that close within the representation set.
///
/// Polynomial pairs close onto polynomials. Two sigma-profiles or two
/// vortex powers bracket to zero (each pair depends on a single chart
/// coordinate). A sigma-profile against a polynomial closes only when the
/// polynomial is phi-independent, in which case the bracket vanishes; any
/// other combination has no closed form here and is rejected.
pub fn sphere_bracket<T: Real>(
    f: &SphereFunction<T>,
    g: &SphereFunction<T>,
) -> Result<SphereFunction<T>> {
    use SphereFunction::*;
    match (f, g) {
        (Polynomial(a), Polynomial(b)) => Ok(Polynomial(a.poisson_bracket(b))),
        (SigmaProfile(_), SigmaProfile(_)) => Ok(Polynomial(crate::fuzzy::Polynomial::zero())),
        (VortexPower(_), VortexPower(_)) => Ok(Polynomial(crate::fuzzy::Polynomial::zero())),
        (SigmaProfile(_), Polynomial(b)) => {
            if b.phi_derivative().is_zero() {
                Ok(Polynomial(crate::fuzzy::Polynomial::zero()))
            } else {
                Err(CoreError::UnsupportedBracket {
                    lhs: f.kind(),
                    rhs: g.kind(),
                })
            }
        }
        (Polynomial(a), SigmaProfile(_)) => {
            if a.phi_derivative().is_zero() {
                Ok(Polynomial(crate::fuzzy::Polynomial::zero()))
            } else {
                Err(CoreError::UnsupportedBracket {
                    lhs: f.kind(),
                    rhs: g.kind(),
                })
            }
        }
        (SigmaProfile(_), VortexPower(0)) | (VortexPower(0), SigmaProfile(_)) => {
            Ok(Polynomial(crate::fuzzy::Polynomial::zero()))
        }
        _ => Err(CoreError::UnsupportedBracket {
            lhs: f.kind(),
            rhs: g.kind(),
        }),
    }
}
