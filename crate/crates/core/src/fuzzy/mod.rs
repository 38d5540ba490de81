//! Fuzzy-sphere quantization: sphere functions, generator matrices, the
//! quantization map and its correspondence properties.

mod correspond;
mod function;
mod polynomial;
mod quantize;

pub use correspond::{
    commutator_residual_closed_form, correspondence_residuals, full_pairing_residual,
    pairing_identity_check, CorrespondenceResiduals, MAX_CORRESPONDENCE_DEGREE,
};
pub use function::{sphere_bracket, Profile, SpherePoint, SphereFunction};
pub use polynomial::{Monomial, Polynomial};
pub use quantize::{
    all_ones, build_generators, quantize, quantize_tensor, raising_generator, sigma_nodes,
    vortex_block, z_rotation_unitary,
};
