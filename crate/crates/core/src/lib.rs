//! Numerical laboratory for matrix-regularized functions on the sphere
//! and the n-particle system with inverse-square interactions.
//!
//! The crate builds the generator matrices of the fuzzy sphere and the
//! quantization map for polynomials, sigma-profiles, vortex powers and
//! delta symbols; the n-particle Lax matrix, classical r-matrix and a
//! Poisson engine with analytic gradients; the large-n limiting objects
//! (Lax function, sawtooth kernel, r-distribution); and time evolution
//! with conserved-quantity monitoring. Every identity the construction
//! satisfies exactly is verifiable to rounding through the functions in
//! these modules, and the limit statements come with convergence-rate
//! experiments.
//!
//! All kernels are generic over the scalar type through [`scalar::Real`]
//! (`f32` or `f64`); the `*64` aliases below cover the common case.

pub mod calogero;
pub mod continuum;
pub mod dynamics;
pub mod error;
pub mod fuzzy;
pub mod linalg;
pub mod numerics;
pub mod scalar;

pub use error::{CoreError, Result};
pub use scalar::Real;

/// Dense complex matrix at double precision.
pub type FuzzyMatrix64 = linalg::FuzzyMatrix<f64>;
/// Tensor-square operator at double precision.
pub type TensorOperator64 = linalg::TensorOperator<f64>;
/// Sphere polynomial at double precision.
pub type Polynomial64 = fuzzy::Polynomial<f64>;
/// Sphere function at double precision.
pub type SphereFunction64 = fuzzy::SphereFunction<f64>;
/// Sigma profile at double precision.
pub type Profile64 = fuzzy::Profile<f64>;
/// n-particle phase point at double precision.
pub type PhasePoint64 = calogero::PhasePoint<f64>;
/// Poisson engine at double precision.
pub type PoissonEngine64 = calogero::PoissonEngine<f64>;
/// Continuum field configuration at double precision.
pub type FieldConfig64 = continuum::FieldConfig<f64>;
/// Trajectory at double precision.
pub type Trajectory64 = dynamics::Trajectory<f64>;
