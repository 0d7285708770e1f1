//! Dense univariate polynomials over the rationals, with Sturm-sequence root
//! isolation for the exact line search.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Rational, Scalar};

/// Coefficients in ascending powers. Trailing zeros are trimmed, so the zero
/// polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `a + b·μ`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        UniPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `μ^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => UniPoly::new(self.coeffs.iter().map(|c| c / l).collect()),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn square_free(&self) -> UniPoly {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Leading coefficient of the primitive integer polynomial proportional
    /// to `self`. Every rational root has a denominator dividing it.
    fn integer_leading(&self) -> BigInt {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        (ints.last().cloned().unwrap_or_else(BigInt::one) / content).abs()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·μ")?,
                _ => write!(f, "{c}·μ^{i}")?,
            }
        }
        Ok(())
    }
}

fn zip_coeffs(a: &UniPoly, b: &UniPoly, op: impl Fn(Rational, Rational) -> Rational) -> UniPoly {
    let len = a.coeffs.len().max(b.coeffs.len());
    UniPoly::new((0..len).map(|i| op(a.coeff(i), b.coeff(i))).collect())
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        zip_coeffs(&self, &rhs, |x, y| x + y)
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        zip_coeffs(&self, &rhs, |x, y| x - y)
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Scalar for UniPoly {
    fn constant_like(&self, c: Rational) -> Self {
        UniPoly::constant(c)
    }
}

/// The Sturm chain `p, p', -rem(p, p'), ...` of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let mut chain = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            let (_, r) = chain.last().unwrap().div_rem(&next);
            chain.push(next);
            next = -r;
        }
        SturmChain { chain }
    }

    /// Sign changes of the chain at `t`, zeros skipped.
    pub fn variations(&self, t: &Rational) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for p in &self.chain {
            let s = super::signum(&p.eval(t));
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    ///
    /// Holds for any `a < b` when the chain was built from a square-free
    /// polynomial: crossing a root drops exactly one variation and the count
    /// at the root itself already equals the count just past it.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line-search stopping point is irrational, isolated in [{}, {}]", .bracket.0, .bracket.1)]
pub struct NotRepresentable {
    /// Isolating interval `(lo, hi)` of the irrational root.
    pub bracket: Box<(Rational, Rational)>,
}

/// Smallest `μ ∈ [0, t_max]` with `p(μ) <= 0`, `None` if `p > 0` on the whole
/// interval.
///
/// When `p(0) > 0` the answer is the smallest root of `p` in `(0, t_max]`.
/// That root is isolated by bisection on Sturm counts until the bracket is
/// narrower than `1/L²` (`L` the integer leading coefficient of the
/// square-free part). Two distinct rationals with denominators at most `L`
/// are at least `1/L²` apart, so the simplest rational in the bracket is the
/// root whenever the root is rational.
pub fn first_nonpositive(p: &UniPoly, t_max: &Rational) -> Result<Option<Rational>, NotRepresentable> {
    assert!(!t_max.is_negative(), "t_max must be nonnegative");
    let zero = Rational::zero();
    if !p.eval(&zero).is_positive() {
        return Ok(Some(zero));
    }
    if t_max.is_zero() || p.is_constant() {
        return Ok(None);
    }
    if p.degree() == Some(1) {
        // p(0) > 0, so the only root is positive iff the slope is negative
        let slope = p.coeff(1);
        if !slope.is_negative() {
            return Ok(None);
        }
        let root = -p.coeff(0) / slope;
        return Ok((&root <= t_max).then_some(root));
    }
    let sq = p.square_free();
    let sturm = SturmChain::new(&sq);
    if sturm.count_roots(&zero, t_max) == 0 {
        return Ok(None);
    }

    let l = sq.integer_leading();
    let tol = Rational::new(BigInt::one(), &l * &l);
    let two = Rational::from_integer(BigInt::from(2));
    let (mut lo, mut hi) = (zero, t_max.clone());
    loop {
        let count = sturm.count_roots(&lo, &hi);
        debug_assert!(count >= 1);
        if count == 1 && &hi - &lo < tol {
            break;
        }
        let mid = (&lo + &hi) / &two;
        if sq.eval(&mid).is_zero() && sturm.count_roots(&lo, &mid) == 1 {
            return Ok(Some(mid));
        }
        if sturm.count_roots(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if sq.eval(&hi).is_zero() {
        return Ok(Some(hi));
    }
    let candidate = simplest_between(&lo, &hi);
    if sq.eval(&candidate).is_zero() {
        Ok(Some(candidate))
    } else {
        Err(NotRepresentable {
            bracket: Box::new((lo, hi)),
        })
    }
}

/// Rational with the smallest denominator in `[a, b]`, for `0 <= a <= b`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(!a.is_negative() && a <= b);
    let ceil = a.ceil();
    if &ceil <= b {
        return ceil;
    }
    let fl = a.floor();
    // a, b both lie strictly inside (fl, fl + 1)
    let inner = simplest_between(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn poly(cs: &[Rational]) -> UniPoly {
        UniPoly::new(cs.to_vec())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(&[int(0), int(1)]).eval(&rat(1, 2)), rat(1, 2));
        assert_eq!(poly(&[int(1), int(-2)]).eval(&rat(1, 2)), int(0));
        assert_eq!(poly(&[int(0)]).eval(&int(7)), int(0));
        assert!(poly(&[int(0)]).is_zero());
    }

    #[test]
    fn first_nonpositive_examples() {
        assert_eq!(first_nonpositive(&poly(&[int(-1)]), &int(1)), Ok(Some(int(0))));
        assert_eq!(
            first_nonpositive(&poly(&[int(1), int(-2)]), &int(1)),
            Ok(Some(rat(1, 2)))
        );
        assert_eq!(first_nonpositive(&poly(&[int(1)]), &int(1)), Ok(None));
    }

    #[test]
    fn first_nonpositive_zero_polynomial_is_origin() {
        assert_eq!(first_nonpositive(&UniPoly::zero(), &int(3)), Ok(Some(int(0))));
    }

    #[test]
    fn root_at_right_endpoint() {
        // 1 - μ on [0, 1]
        assert_eq!(first_nonpositive(&poly(&[int(1), int(-1)]), &int(1)), Ok(Some(int(1))));
    }

    #[test]
    fn double_root_touching_zero_counts() {
        // (μ - 1/3)² touches zero without changing sign
        let p = poly(&[rat(1, 9), rat(-2, 3), int(1)]);
        assert_eq!(first_nonpositive(&p, &int(1)), Ok(Some(rat(1, 3))));
    }

    #[test]
    fn irrational_root_is_reported() {
        // 1/2 - μ² has root 1/√2
        let p = poly(&[rat(1, 2), int(0), int(-1)]);
        let err = first_nonpositive(&p, &int(1)).unwrap_err();
        let (lo, hi) = &*err.bracket;
        assert!(lo * lo <= rat(1, 2) && hi * hi >= rat(1, 2));
    }

    #[test]
    fn smallest_of_several_roots() {
        // (μ - 1/4)(μ - 3/4) = μ² - μ + 3/16
        let p = poly(&[rat(3, 16), int(-1), int(1)]);
        assert_eq!(first_nonpositive(&p, &int(1)), Ok(Some(rat(1, 4))));
        // roots beyond the window
        assert_eq!(first_nonpositive(&p, &rat(1, 5)), Ok(None));
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        // μ(μ-1)(μ-2) = μ³ - 3μ² + 2μ
        let p = poly(&[int(0), int(2), int(-3), int(1)]);
        let s = SturmChain::new(&p);
        assert_eq!(s.count_roots(&int(-1), &int(3)), 3);
        assert_eq!(s.count_roots(&int(0), &int(2)), 2);
        assert_eq!(s.count_roots(&rat(1, 2), &rat(3, 2)), 1);
    }

    #[test]
    fn division_identity() {
        let a = poly(&[int(1), int(2), int(3), int(4)]);
        let b = poly(&[rat(1, 2), int(-1)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&q * &b + r, a);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_between(&rat(1, 2), &rat(3, 2)), int(1));
        assert_eq!(simplest_between(&int(0), &rat(1, 2)), int(0));
    }
}
