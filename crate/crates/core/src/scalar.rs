//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`) together with the tolerances
/// appropriate for its precision.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Debug + Display + FromStr {
    /// Tolerance for state and density-matrix invariants (normalization,
    /// Hermiticity, trace, positivity).
    fn state_tol() -> Self;
    /// Tolerance for algebraic identities that are exact at small dimension.
    fn exact_tol() -> Self;
    /// Eigenvalues below this are treated as zero before taking square roots.
    fn clip_tol() -> Self;
    /// Eigenvalues closer than this are merged into one measurement outcome.
    fn merge_tol() -> Self;
}

impl Real for f64 {
    fn state_tol() -> Self {
        1e-9
    }
    fn exact_tol() -> Self {
        1e-12
    }
    fn clip_tol() -> Self {
        1e-12
    }
    fn merge_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn state_tol() -> Self {
        1e-4
    }
    fn exact_tol() -> Self {
        1e-5
    }
    fn clip_tol() -> Self {
        1e-6
    }
    fn merge_tol() -> Self {
        1e-4
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Converts `T` to `f64` (lossless for both supported scalars).
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().expect("scalar convertible to f64")
}

#[cfg(test)]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> num_complex::Complex<T> {
    num_complex::Complex::new(re, im)
}
