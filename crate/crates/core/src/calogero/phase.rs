//! N-particle phase-space points and seeded sampling.

use crate::error::{CoreError, Result};
use crate::scalar::Real;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Default floor below which two positions count as coincident.
pub const DEFAULT_GAP_EPS: f64 = 1e-8;

/// Positions, momenta and the coupling constant of the n-particle system.
///
/// The per-size interaction strength is `kappa = c / n`. Positions are not
/// required to be distinct at construction (diagonal observables are fine
/// with coincidences); operations that divide by position differences
/// check the gap themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint<T> {
    q: Vec<T>,
    p: Vec<T>,
    coupling: T,
}

impl<T: Real> PhasePoint<T> {
    pub fn new(q: Vec<T>, p: Vec<T>, coupling: T) -> Result<Self> {
        if q.len() < 2 {
            return Err(CoreError::DimensionTooSmall(q.len()));
        }
        if q.len() != p.len() {
            return Err(CoreError::DimensionMismatch(format!(
                "positions ({}) and momenta ({}) differ in length",
                q.len(),
                p.len()
            )));
        }
        for (label, xs) in [("position", &q), ("momentum", &p)] {
            if let Some(v) = xs.iter().find(|v| !v.is_finite()) {
                return Err(CoreError::Precondition(format!(
                    "non-finite {label} entry {}",
                    v.as_f64()
                )));
            }
        }
        if !(coupling >= T::zero()) {
            return Err(CoreError::Precondition(format!(
                "coupling must be non-negative, got {}",
                coupling.as_f64()
            )));
        }
        Ok(Self { q, p, coupling })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[T] {
        &self.q
    }

    pub fn p(&self) -> &[T] {
        &self.p
    }

    pub fn coupling(&self) -> T {
        self.coupling
    }

    /// `kappa = c / n`.
    pub fn kappa(&self) -> T {
        self.coupling / T::from_usize_c(self.n())
    }

    pub fn with_state(&self, q: Vec<T>, p: Vec<T>) -> Result<Self> {
        Self::new(q, p, self.coupling)
    }

    /// Smallest pairwise position gap.
    pub fn min_gap(&self) -> T {
        let mut g = T::infinity();
        for i in 0..self.q.len() {
            for j in (i + 1)..self.q.len() {
                let d = (self.q[i] - self.q[j]).abs();
                if d < g {
                    g = d;
                }
            }
        }
        g
    }

    /// Errors with the offending pair if any gap is at or below `eps`.
    pub fn require_distinct(&self, eps: T) -> Result<()> {
        for i in 0..self.q.len() {
            for j in (i + 1)..self.q.len() {
                let gap = (self.q[i] - self.q[j]).abs();
                if gap <= eps {
                    return Err(CoreError::SingularConfiguration {
                        i,
                        j,
                        qi: self.q[i].as_f64(),
                        qj: self.q[j].as_f64(),
                        gap: gap.as_f64(),
                        eps: eps.as_f64(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn require_distinct_default(&self) -> Result<()> {
        self.require_distinct(T::from_f64_c(DEFAULT_GAP_EPS))
    }
}

/// Draws a phase point with sorted-decreasing positions, uniform on
/// [-1, 1] with an enforced minimum gap of `10 / n^2` (rejection), and
/// standard normal momenta. Deterministic in the rng state.
pub fn random_phase_point<T: Real>(n: usize, coupling: T, rng: &mut ChaCha8Rng) -> PhasePoint<T> {
    assert!(n >= 2, "need at least two particles");
    let min_gap = 10.0 / (n * n) as f64;
    let q = loop {
        let mut q64: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        q64.sort_by(|a, b| b.partial_cmp(a).expect("finite positions"));
        let ok = q64.windows(2).all(|w| w[0] - w[1] > min_gap);
        if ok {
            break q64;
        }
    };
    let p: Vec<T> = (0..n)
        .map(|_| {
            let v: f64 = StandardNormal.sample(rng);
            T::from_f64_c(v)
        })
        .collect();
    let q: Vec<T> = q.into_iter().map(T::from_f64_c).collect();
    PhasePoint::new(q, p, coupling).expect("sampler produces valid points")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn kappa_is_coupling_over_n() {
        let pt = PhasePoint::new(vec![1.0, -1.0], vec![3.0, 5.0], 1.0).unwrap();
        assert_eq!(pt.kappa(), 0.5);
        assert_eq!(pt.n(), 2);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(PhasePoint::new(vec![1.0], vec![0.0], 1.0).is_err());
        assert!(PhasePoint::new(vec![1.0, 2.0], vec![0.0], 1.0).is_err());
        assert!(PhasePoint::new(vec![1.0, f64::NAN], vec![0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn distinctness_reports_offending_pair() {
        let pt = PhasePoint::new(vec![0.5, 0.5 + 1e-12, -0.5], vec![0.0; 3], 1.0).unwrap();
        match pt.require_distinct_default() {
            Err(CoreError::SingularConfiguration { i, j, .. }) => {
                assert_eq!((i, j), (0, 1));
            }
            other => panic!("expected singular configuration, got {other:?}"),
        }
    }

    #[test]
    fn sampler_is_deterministic_and_gapped() {
        for n in [2usize, 8, 32] {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            let a = random_phase_point::<f64>(n, 1.0, &mut rng);
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            let b = random_phase_point::<f64>(n, 1.0, &mut rng);
            assert_eq!(a, b);
            assert!(a.min_gap() > 10.0 / (n * n) as f64);
            assert!(a.q().windows(2).all(|w| w[0] > w[1]));
        }
    }
}
