//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point type the library is generic over.
///
/// Implemented for `f32` and `f64`. Default tolerances scale with the
/// precision of the type so that the same algorithms stay usable in single
/// precision, although every documented accuracy target assumes `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Absolute tolerance used when a caller does not supply one.
    fn default_tol() -> Self;
    /// Relative tolerance for Luxemburg-norm bisection.
    fn default_norm_tol() -> Self;
}

impl Real for f64 {
    fn default_tol() -> Self {
        1e-9
    }
    fn default_norm_tol() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn default_tol() -> Self {
        1e-4
    }
    fn default_norm_tol() -> Self {
        1e-4
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Converts a `T` back to `f64` for reporting.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `e^{iθ}`.
#[inline]
pub(crate) fn cis<T: Real>(theta: T) -> Complex<T> {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}
