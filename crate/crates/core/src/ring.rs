//! The minimal commutative-ring interface shared by the matrix routines.

use std::fmt::Debug;

use crate::scalar::Scalar;

/// A commutative integral domain with exact division where it exists.
///
/// `try_div(a, b)` returns `Some(q)` with `q·b = a` when `b` divides `a`, and
/// `None` otherwise (including `b = 0`). Fraction-free elimination only ever
/// asks for divisions that are exact.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn try_div(&self, other: &Self) -> Option<Self>;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self * &inv)
    }
}
