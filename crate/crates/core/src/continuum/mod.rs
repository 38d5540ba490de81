//! The totally classical (large-n) side: field configurations, the
//! limiting Lax function, the sawtooth kernel, the r-distribution, and
//! the convergence experiments connecting them to finite n.

mod field;
mod limits;
mod rdist;
mod sawtooth;

pub use field::{
    bump_momentum, continuum_energy, coupling_from_strength, lax_function, sampled_phase_point,
    zero_momentum, FieldConfig, ProfilePreset,
};
pub use limits::{
    fitted_slope, offdiagonal_band_residual, offdiagonal_convergence, sampled_trace_power,
    trace_convergence, trace_power_integral,
};
pub use rdist::{fourier_pairing_residual, r_distribution_checks, reduced_kernel, RDistReport};
pub use sawtooth::{sawtooth, sawtooth_fourier_partial};
