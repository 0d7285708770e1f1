use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{Rational, Scalar};

/// Machine-integer arithmetic that degrades to `None` on overflow or on a
/// non-integer constant, used as a fast path for evaluations at lattice
/// points. Callers fall back to [`Rational`] when the result is `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckedInt(pub Option<i128>);

impl CheckedInt {
    pub fn from_rational(r: &Rational) -> Self {
        if !r.denom().is_one() {
            return CheckedInt(None);
        }
        CheckedInt(r.numer().to_i128())
    }

    /// All entries as checked integers, or `None` if any is fractional or
    /// too large.
    pub fn lift(xs: &[Rational]) -> Option<Vec<CheckedInt>> {
        xs.iter()
            .map(|r| {
                let c = CheckedInt::from_rational(r);
                c.0.map(|_| c)
            })
            .collect()
    }

    pub fn to_rational(self) -> Option<Rational> {
        self.0.map(|v| Rational::from_integer(BigInt::from(v)))
    }

    /// Lowers a whole vector, `None` if any entry overflowed.
    pub fn lower(xs: &[CheckedInt]) -> Option<Vec<Rational>> {
        xs.iter().map(|c| c.to_rational()).collect()
    }
}

fn zip(a: CheckedInt, b: CheckedInt, f: impl Fn(i128, i128) -> Option<i128>) -> CheckedInt {
    CheckedInt(a.0.zip(b.0).and_then(|(x, y)| f(x, y)))
}

impl Add for CheckedInt {
    type Output = CheckedInt;
    fn add(self, rhs: Self) -> Self {
        zip(self, rhs, i128::checked_add)
    }
}

impl Sub for CheckedInt {
    type Output = CheckedInt;
    fn sub(self, rhs: Self) -> Self {
        zip(self, rhs, i128::checked_sub)
    }
}

impl Mul for CheckedInt {
    type Output = CheckedInt;
    fn mul(self, rhs: Self) -> Self {
        zip(self, rhs, i128::checked_mul)
    }
}

impl Neg for CheckedInt {
    type Output = CheckedInt;
    fn neg(self) -> Self {
        CheckedInt(self.0.and_then(i128::checked_neg))
    }
}

impl Scalar for CheckedInt {
    fn constant_like(&self, c: Rational) -> Self {
        CheckedInt::from_rational(&c)
    }
}
