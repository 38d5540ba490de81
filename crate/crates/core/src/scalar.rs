//! Scalar abstraction for the numeric kernels.
//!
//! Everything in this crate is written against [`Real`], a bundle of the
//! `num-traits` capabilities the math actually uses (transcendentals,
//! constants, conversions). `f32` and `f64` implement it; the crate root
//! exports `f64` type aliases for the common case.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar usable by all kernels: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssignOps + Sum<Self> + Debug + Display + Send + Sync + 'static
{
    /// Converts from `f64`, panicking only for exotic scalar types that
    /// cannot represent ordinary constants (never for `f32`/`f64`).
    fn from_f64_c(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in this scalar type")
    }

    /// Converts a (small) unsigned count losslessly enough for node formulas.
    fn from_usize_c(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in this scalar type")
    }

    /// Lossy view as `f64`, used only for diagnostics and error payloads.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
