use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// A commutative ring the objective recursions can be evaluated over.
///
/// Plain rationals give values, [`DualNumber`](super::DualNumber)s give
/// directional derivatives, [`UniPoly`](super::UniPoly)s give restrictions
/// to a line, and [`MultiPoly`](super::MultiPoly)s give the expanded form.
pub trait Scalar: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    /// A constant of the same shape as `self` (same variable count, etc.).
    fn constant_like(&self, c: Rational) -> Self;
}

impl Scalar for Rational {
    fn constant_like(&self, c: Rational) -> Self {
        c
    }
}
