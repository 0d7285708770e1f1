//! The exact scalar used everywhere, plus its `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn pow2(e: usize) -> Rational {
    BigRational::from_integer(BigInt::one() << e)
}

/// Formats as `p/q` with `q >= 1`, always including the denominator.
pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Lossy decimal rendering, for human skimming only.
pub fn to_approx(r: &Rational) -> String {
    use num_traits::ToPrimitive;
    match r.to_f64() {
        Some(v) => format!("{v:.6}"),
        None => "nan".to_string(),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `p/q` or a bare integer `p`.
pub fn parse_pq(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

pub fn is_zero_or_one(r: &Rational) -> bool {
    r.is_zero() || r.is_one()
}

/// Sign as -1, 0, 1.
pub fn signum(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_always_has_denominator() {
        assert_eq!(to_pq(&int(3)), "3/1");
        assert_eq!(to_pq(&rat(-2, 4)), "-1/2");
        assert_eq!(to_pq(&int(0)), "0/1");
    }

    #[test]
    fn parse_accepts_both_forms() {
        assert_eq!(parse_pq("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_pq(" -7 ").unwrap(), int(-7));
        assert!(parse_pq("1/0").is_err());
        assert!(parse_pq("x").is_err());
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }
}
