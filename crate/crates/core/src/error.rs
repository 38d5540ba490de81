//! Error type shared by all modules.
//!
//! Diagnostic payloads are stored as `f64` so the error enum stays
//! non-generic even when the computation runs at a different precision.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("matrix dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coincident positions: q[{i}] = {qi} and q[{j}] = {qj} (gap {gap:.3e} <= {eps:.3e})")]
    SingularConfiguration {
        i: usize,
        j: usize,
        qi: f64,
        qj: f64,
        gap: f64,
        eps: f64,
    },

    #[error("profile undefined at sigma = {sigma}: {detail}")]
    ProfileDomain { sigma: f64, detail: String },

    #[error("bracket not expressible in closed form for representations {lhs} and {rhs}")]
    UnsupportedBracket { lhs: &'static str, rhs: &'static str },

    #[error("symbol {0} quantizes on the tensor square; use the tensor quantization entry point")]
    TensorSymbol(&'static str),

    #[error("symbol {0} quantizes to a single matrix; use the matrix quantization entry point")]
    MatrixSymbol(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("boundary evaluation at sigma = {sigma}: slope of the position profile stays finite there")]
    BoundaryEvaluation { sigma: f64 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("band {band} out of range for dimension {n}")]
    BandOutOfRange { band: i64, n: usize },

    #[error("tensor operations limited to n <= {max}, requested n = {n}")]
    ResourceLimit { n: usize, max: usize },

    #[error("numerical failure: {context} (best estimate {estimate:.6e}, error bound {error:.3e})")]
    Numerical {
        context: String,
        estimate: f64,
        error: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("adaptive step size underflow at t = {t:.6e} (dt = {dt:.3e}); system too stiff")]
    Stiffness { t: f64, dt: f64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
