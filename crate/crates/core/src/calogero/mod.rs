//! The n-particle system with inverse-square interactions: Lax matrix,
//! classical r-matrix, Poisson engine and the exact identities relating them.

mod engine;
mod lax;
mod phase;
mod rmatrix;

pub use engine::{
    finite_difference_gradient, gradient_fd_residual, involutivity_residual, BracketMagnitude,
    BracketObservable, LaxEntry, Momentum, Observable, PhaseGradient, PhaseHessian, PoissonEngine,
    Position, ProductObservable, ProfileTraceObservable, SmoothObservable, TracePower,
};
pub use lax::{
    build_lax, commutator_identity_residual, lax_position_derivative, momentum_matrix,
    position_matrix,
};
pub use phase::{random_phase_point, PhasePoint, DEFAULT_GAP_EPS};
pub use rmatrix::{
    build_r_matrix, delta_rewrite_residual, fundamental_relation_residual, lax_bracket_tensor,
    r_commutator_identities_residual, r_commutator_rhs, r_commutator_rhs_via_deltas,
};
