//! Scalar abstraction: every pipeline runs either entirely in `f64` or
//! entirely in exact `BigRational` arithmetic.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};

/// Field operations needed by the linear algebra and the cube-index paths.
///
/// Exact mode (`BigRational`) certifies equality cases such as
/// `xi(Q_n; S) = n`; float mode is the default everywhere else.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// Whether `self`, chosen as an elimination pivot from a row whose
    /// largest entry has magnitude `scale`, must be rejected as singular.
    fn negligible_pivot(&self, scale: &Self) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn negligible_pivot(&self, scale: &Self) -> bool {
        // pivot magnitude threshold 1e-12 after row scaling
        f64::abs(*self) < 1e-12 * f64::abs(*scale).max(f64::MIN_POSITIVE)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn negligible_pivot(&self, _scale: &Self) -> bool {
        Zero::is_zero(self)
    }
}

/// Sum of an iterator of scalars.
pub fn sum<T: Scalar>(it: impl IntoIterator<Item = T>) -> T {
    it.into_iter().fold(T::zero(), |acc, v| acc + v)
}

/// Dot product of two equally long slices.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    sum(a.iter().zip(b).map(|(x, y)| x.clone() * y.clone()))
}

/// The larger of two scalars (`PartialOrd`, ties keep the first).
pub fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}
