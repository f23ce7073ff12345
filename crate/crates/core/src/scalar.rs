use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar used by the numeric routines: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` constant, panicking only if the type cannot represent
    /// finite `f64` values at all.
    fn c(value: f64) -> Self {
        Self::from_f64(value).expect("finite constant")
    }

    fn from_usize_lossy(value: usize) -> Self {
        Self::from_usize(value).expect("usize fits in a float")
    }

    /// Backward-error threshold the eigensolvers are expected to meet,
    /// relative to the Frobenius norm of the input.
    fn solver_tolerance() -> Self {
        Self::epsilon().powf(Self::c(0.66))
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
}
