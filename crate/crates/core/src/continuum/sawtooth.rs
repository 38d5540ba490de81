//! The 2pi-periodic sawtooth `E(phi) = phi - pi sign(phi)` on [-pi, pi].
//!
//! `E` is odd, vanishes at 0 (midpoint convention) and at +-pi, and has
//! Fourier series `sum_{n != 0} (i/n) e^{i n phi}`.

use crate::scalar::Real;

/// `E(phi)`, extended 2pi-periodically; `E(0) = 0`.
pub fn sawtooth<T: Real>(phi: T) -> T {
    let two_pi = T::from_f64_c(2.0) * T::PI();
    // reduce to [0, 2pi); on (0, 2pi) the sawtooth is y - pi
    let mut y = phi % two_pi;
    if y < T::zero() {
        y += two_pi;
    }
    if y == T::zero() {
        T::zero()
    } else {
        y - T::PI()
    }
}

/// Partial Fourier sum `sum_{0 < |n| <= m_max} (i/n) e^{i n phi}
/// = -2 sum_{n=1}^{m_max} sin(n phi)/n`.
pub fn sawtooth_fourier_partial<T: Real>(phi: T, m_max: u32) -> T {
    let mut acc = T::zero();
    for n in 1..=m_max {
        let nf = T::from_usize_c(n as usize);
        acc += (nf * phi).sin() / nf;
    }
    -T::from_f64_c(2.0) * acc
}
