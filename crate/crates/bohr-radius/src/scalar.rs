//! Scalar abstraction for the numerical kernels.
//!
//! Everything numeric in this crate is generic over [`Real`], implemented
//! for `f64` (the working type of the CLI and the crate-root aliases) and
//! `f32`. The only per-type datum beyond what `num_traits` already offers is
//! the rescaling ceiling used by the log-scaled determinant recurrence.

use core::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable by the solvers.
pub trait Real:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Rescaling ceiling for recurrence iterates. The working pair of the
    /// determinant recurrence is renormalized whenever its magnitude leaves
    /// `[1/RESCALE_LIMIT, RESCALE_LIMIT]`, far inside the overflow range.
    const RESCALE_LIMIT: Self;
}

impl Real for f64 {
    const RESCALE_LIMIT: f64 = 1e150;
}

impl Real for f32 {
    const RESCALE_LIMIT: f32 = 1e30;
}

/// Converts an `f64` literal into the working scalar.
///
/// Panics only when the target type cannot represent the value at all;
/// every literal used by this crate converts cleanly into `f32` and `f64`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal not representable in scalar type")
}
