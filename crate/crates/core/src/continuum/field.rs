//! Continuum field configurations: monotone position profiles `q(sigma)`,
//! momentum profiles `p(sigma)`, the limiting Lax function and the energy
//! functional.

use crate::calogero::PhasePoint;
use crate::continuum::sawtooth::sawtooth;
use crate::error::{CoreError, Result};
use crate::fuzzy::{sigma_nodes, Profile, SpherePoint};
use crate::numerics::integrate;
use crate::scalar::Real;

/// Named position profiles used throughout the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfilePreset {
    /// `q = sigma`
    Linear,
    /// `q = sigma + sigma^3/3`
    Cubic,
    /// `q = arcsin(sigma)`; the slope diverges at the ends, which is the
    /// boundary condition that lets the Lax function extend to the poles.
    Arcsin,
}

impl ProfilePreset {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "linear" => Ok(Self::Linear),
            "cubic" => Ok(Self::Cubic),
            "arcsin" => Ok(Self::Arcsin),
            other => Err(CoreError::Config(format!(
                "unknown profile preset '{other}' (expected linear, cubic or arcsin)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Linear => "linear",
            Self::Cubic => "cubic",
            Self::Arcsin => "arcsin",
        }
    }

    pub fn profile<T: Real>(&self) -> Profile<T> {
        match self {
            Self::Linear => Profile::new("linear", |s| s, |_| T::one()),
            Self::Cubic => Profile::new(
                "cubic",
                |s: T| s + s * s * s / T::from_f64_c(3.0),
                |s: T| T::one() + s * s,
            ),
            Self::Arcsin => Profile::new(
                "arcsin",
                |s: T| s.asin(),
                |s: T| T::one() / (T::one() - s * s).sqrt(),
            ),
        }
    }
}

/// Momentum profile that vanishes at the ends: `p = (1 - sigma^2)/2`.
/// Odd trace powers need a non-zero momentum background to produce a
/// signal, and a boundary-flat one keeps the convergence rate clean.
pub fn bump_momentum<T: Real>() -> Profile<T> {
    Profile::new(
        "bump",
        |s: T| (T::one() - s * s) / T::from_f64_c(2.0),
        |s: T| -s,
    )
}

pub fn zero_momentum<T: Real>() -> Profile<T> {
    Profile::new("zero", |_| T::zero(), |_| T::zero())
}

/// A continuum phase-space point: position and momentum profiles plus the
/// coupling constant.
#[derive(Debug, Clone)]
pub struct FieldConfig<T> {
    position: Profile<T>,
    momentum: Profile<T>,
    coupling: T,
}

impl<T: Real> FieldConfig<T> {
    pub fn new(position: Profile<T>, momentum: Profile<T>, coupling: T) -> Result<Self> {
        // monotonicity probe on an interior grid
        let samples = 257;
        for k in 0..samples {
            let s = T::from_f64_c(-1.0 + 2.0 * (k as f64 + 0.5) / samples as f64);
            let d = position.deriv(s);
            if !(d > T::zero()) {
                return Err(CoreError::InvariantViolation(format!(
                    "position profile '{}' must have positive slope on (-1, 1); slope at sigma = {} is {}",
                    position.name(),
                    s.as_f64(),
                    d.as_f64()
                )));
            }
        }
        Ok(Self {
            position,
            momentum,
            coupling,
        })
    }

    pub fn preset(preset: ProfilePreset, coupling: T) -> Self {
        Self::new(preset.profile(), zero_momentum(), coupling).expect("presets are monotone")
    }

    pub fn preset_with_momentum(preset: ProfilePreset, momentum: Profile<T>, coupling: T) -> Self {
        Self::new(preset.profile(), momentum, coupling).expect("presets are monotone")
    }

    pub fn coupling(&self) -> T {
        self.coupling
    }

    pub fn with_coupling(&self, coupling: T) -> Self {
        Self {
            position: self.position.clone(),
            momentum: self.momentum.clone(),
            coupling,
        }
    }

    pub fn position_at(&self, sigma: T) -> T {
        self.position.value(sigma)
    }

    pub fn slope_at(&self, sigma: T) -> T {
        self.position.deriv(sigma)
    }

    pub fn momentum_at(&self, sigma: T) -> T {
        self.momentum.value(sigma)
    }

    pub fn position_name(&self) -> &str {
        self.position.name()
    }

    pub fn momentum_name(&self) -> &str {
        self.momentum.name()
    }
}

/// The limiting Lax function `L(sigma, phi) = p(sigma) + c/(2 q'(sigma)) E(phi)`.
///
/// At the poles `sigma = +-1` the value only exists when the slope
/// diverges there (then the sawtooth term drops out); a finite slope at
/// the boundary is reported as an error.
pub fn lax_function<T: Real>(cfg: &FieldConfig<T>, pt: SpherePoint<T>) -> Result<T> {
    let slope = cfg.slope_at(pt.sigma);
    if pt.sigma.abs() == T::one() {
        if slope.is_infinite() {
            return Ok(cfg.momentum_at(pt.sigma));
        }
        return Err(CoreError::BoundaryEvaluation {
            sigma: pt.sigma.as_f64(),
        });
    }
    if !(slope > T::zero()) || !slope.is_finite() {
        return Err(CoreError::InvariantViolation(format!(
            "position slope at sigma = {} is {}",
            pt.sigma.as_f64(),
            slope.as_f64()
        )));
    }
    let two = T::from_f64_c(2.0);
    Ok(cfg.momentum_at(pt.sigma) + cfg.coupling / (two * slope) * sawtooth(pt.phi))
}

/// Samples the profiles at the quantization nodes
/// `sigma_j = (n + 1 - 2j)/sqrt(n^2 - 1)` into an n-particle phase point.
pub fn sampled_phase_point<T: Real>(cfg: &FieldConfig<T>, n: usize) -> Result<PhasePoint<T>> {
    if n < 2 {
        return Err(CoreError::DimensionTooSmall(n));
    }
    let nodes = sigma_nodes::<T>(n);
    let q: Vec<T> = nodes.iter().map(|&s| cfg.position_at(s)).collect();
    let p: Vec<T> = nodes.iter().map(|&s| cfg.momentum_at(s)).collect();
    for w in q.windows(2) {
        if !(w[0] > w[1]) {
            return Err(CoreError::InvariantViolation(format!(
                "sampled positions are not strictly decreasing ({} then {})",
                w[0].as_f64(),
                w[1].as_f64()
            )));
        }
    }
    PhasePoint::new(q, p, cfg.coupling)
}

/// Energy functional `H = (1/2) \int (p^2 + a^2 / q'^2) d sigma`.
pub fn continuum_energy<T: Real>(cfg: &FieldConfig<T>, strength: T) -> Result<T> {
    let half = T::from_f64_c(0.5);
    let v = integrate(
        |s: T| {
            let p = cfg.momentum_at(s);
            let d = cfg.slope_at(s);
            p * p + strength * strength / (d * d)
        },
        -T::one(),
        T::one(),
        T::from_f64_c(1e-10),
        T::from_f64_c(1e-13),
    )?;
    Ok(half * v)
}

/// Coupling that matches the energy functional with interaction strength
/// `a`: `c = 2 sqrt(3) a / pi`.
pub fn coupling_from_strength<T: Real>(a: T) -> T {
    T::from_f64_c(2.0) * T::from_f64_c(3.0).sqrt() * a / T::PI()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn preset_slopes() {
        let arcsin = ProfilePreset::Arcsin.profile::<f64>();
        assert!(arcsin.deriv(1.0).is_infinite());
        assert!(arcsin.deriv(-1.0).is_infinite());
        let cubic = ProfilePreset::Cubic.profile::<f64>();
        assert!((cubic.deriv(0.5) - 1.25).abs() < 1e-15);
        assert!(ProfilePreset::parse("cubic").is_ok());
        assert!(ProfilePreset::parse("nope").is_err());
    }

    #[test]
    fn non_monotone_profile_rejected() {
        let bad = Profile::new("sin2", |s: f64| (2.0 * s).sin(), |s: f64| 2.0 * (2.0 * s).cos());
        assert!(matches!(
            FieldConfig::new(bad, zero_momentum(), 1.0),
            Err(CoreError::InvariantViolation(_))
        ));
    }

    #[test]
    fn lax_function_examples() {
        let cfg = FieldConfig::<f64>::preset(ProfilePreset::Linear, 1.0);
        // E(pi) = 0 so L = p
        let at_pi = lax_function(&cfg, SpherePoint::new(0.3, PI).unwrap()).unwrap();
        assert!(at_pi.abs() < 1e-15);
        // linear preset, p = 0, c = 1, sigma = 0, phi = pi/2: L = -pi/4
        let v = lax_function(&cfg, SpherePoint::new(0.0, PI / 2.0).unwrap()).unwrap();
        assert!((v + PI / 4.0).abs() < 1e-15);
        // c = 0 leaves only the momentum profile
        let free = FieldConfig::<f64>::preset_with_momentum(ProfilePreset::Cubic, bump_momentum(), 0.0);
        let v = lax_function(&free, SpherePoint::new(0.4, 1.0).unwrap()).unwrap();
        assert!((v - 0.5 * (1.0 - 0.16)).abs() < 1e-15);
    }

    #[test]
    fn boundary_rules() {
        let linear = FieldConfig::<f64>::preset(ProfilePreset::Linear, 1.0);
        assert!(matches!(
            lax_function(&linear, SpherePoint::new(1.0, 0.5).unwrap()),
            Err(CoreError::BoundaryEvaluation { .. })
        ));
        let arcsin = FieldConfig::<f64>::preset_with_momentum(ProfilePreset::Arcsin, bump_momentum(), 1.0);
        let v = lax_function(&arcsin, SpherePoint::new(1.0, 0.5).unwrap()).unwrap();
        assert_eq!(v, 0.0); // bump momentum vanishes at the pole
    }

    #[test]
    fn sampling_examples() {
        let cfg = FieldConfig::<f64>::preset(ProfilePreset::Linear, 1.0);
        // n = 2: sigma = (1/sqrt(3), -1/sqrt(3))
        let pt = sampled_phase_point(&cfg, 2).unwrap();
        let s3 = 3f64.sqrt();
        assert!((pt.q()[0] - 1.0 / s3).abs() < 1e-15);
        assert!((pt.q()[1] + 1.0 / s3).abs() < 1e-15);
        assert!(pt.p().iter().all(|&p| p == 0.0));
        assert_eq!(pt.coupling(), 1.0);
        // linear preset: equidistant nodes
        let pt = sampled_phase_point(&cfg, 9).unwrap();
        let gaps: Vec<f64> = pt.q().windows(2).map(|w| w[0] - w[1]).collect();
        for g in &gaps {
            assert!((g - gaps[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn energy_examples() {
        // p = 0, linear q, a = 1: H = 1
        let cfg = FieldConfig::<f64>::preset(ProfilePreset::Linear, 1.0);
        let h = continuum_energy(&cfg, 1.0).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
        // a = 0: kinetic only
        let cfg = FieldConfig::<f64>::preset_with_momentum(ProfilePreset::Cubic, bump_momentum(), 1.0);
        let h = continuum_energy(&cfg, 0.0).unwrap();
        // (1/2) int ((1-s^2)/2)^2 = (1/8) * 16/15 = 2/15
        assert!((h - 2.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn coupling_conversion() {
        let c = coupling_from_strength(1.0f64);
        assert!((c - 2.0 * 3f64.sqrt() / PI).abs() < 1e-15);
    }
}
