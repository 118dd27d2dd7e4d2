//! Scalar abstraction shared by the numeric modules.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display, LowerExp};

/// Real floating-point type the numeric kernels are generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal; exact for f64, rounded for f32.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type Cx<T> = Complex<T>;

#[inline]
pub fn c<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub fn cr<T: Real>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

/// `i` as a complex constant.
#[inline]
pub fn ci<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::one())
}

/// Relative distance `|a-b| / max(1, |b|)`.
pub fn rel_err<T: Real>(a: Cx<T>, b: Cx<T>) -> T {
    (a - b).norm() / b.norm().max(T::one())
}

/// Relative distance `|a-b| / |b|`, falling back to absolute when `b == 0`.
pub fn rel_err_strict<T: Real>(a: Cx<T>, b: Cx<T>) -> T {
    let d = (a - b).norm();
    let n = b.norm();
    if n > T::zero() {
        d / n
    } else {
        d
    }
}

/// `base^expo` for a positive real base.
#[inline]
pub fn pow_pos<T: Real>(base: T, expo: Cx<T>) -> Cx<T> {
    (expo * base.ln()).exp()
}

/// `exp(expo * log_base)` with `log_base` supplied by the caller (fixes the branch).
#[inline]
pub fn pow_log<T: Real>(log_base: Cx<T>, expo: Cx<T>) -> Cx<T> {
    (expo * log_base).exp()
}
