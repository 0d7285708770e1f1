use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{Rational, Scalar};

/// First-order forward-mode dual number `value + derivative·ε`, `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNumber {
    pub value: Rational,
    pub derivative: Rational,
}

impl DualNumber {
    pub fn new(value: Rational, derivative: Rational) -> Self {
        DualNumber { value, derivative }
    }

    pub fn constant(value: Rational) -> Self {
        DualNumber {
            value,
            derivative: Rational::zero(),
        }
    }

    /// The seeded input variable: derivative 1 along itself.
    pub fn variable(value: Rational) -> Self {
        DualNumber {
            value,
            derivative: num_traits::One::one(),
        }
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.value, self.derivative)
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, rhs: DualNumber) -> DualNumber {
        DualNumber {
            value: self.value + rhs.value,
            derivative: self.derivative + rhs.derivative,
        }
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, rhs: DualNumber) -> DualNumber {
        DualNumber {
            value: self.value - rhs.value,
            derivative: self.derivative - rhs.derivative,
        }
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, rhs: DualNumber) -> DualNumber {
        let derivative = &self.value * &rhs.derivative + &self.derivative * &rhs.value;
        DualNumber {
            value: self.value * rhs.value,
            derivative,
        }
    }
}

impl Neg for DualNumber {
    type Output = DualNumber;
    fn neg(self) -> DualNumber {
        DualNumber {
            value: -self.value,
            derivative: -self.derivative,
        }
    }
}

impl Scalar for DualNumber {
    fn constant_like(&self, c: Rational) -> Self {
        DualNumber::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn product_rule() {
        // (3 + 2ε)(5 + 7ε) = 15 + (21 + 10)ε
        let a = DualNumber::new(int(3), int(2));
        let b = DualNumber::new(int(5), int(7));
        assert_eq!(a * b, DualNumber::new(int(15), int(31)));
    }

    #[test]
    fn square_of_variable() {
        let x = DualNumber::variable(rat(1, 2));
        let y = x.clone() * x;
        assert_eq!(y, DualNumber::new(rat(1, 4), int(1)));
    }
}
