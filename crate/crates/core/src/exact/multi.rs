//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{to_pq, Rational, Scalar};

/// Dense exponent vector. Ordered graded-lexicographically: lower total
/// degree first, then by exponents compared from `x_1` onwards, larger
/// exponent first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// No zero coefficients are ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// One entry of the polynomial JSON export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_i`, `i` 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!((1..=nvars).contains(&i), "variable index out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Evaluates at `x` over any scalar ring; dual-number inputs give the
    /// value and a directional derivative in one pass.
    pub fn eval<S: Scalar>(&self, x: &[S]) -> S {
        assert_eq!(x.len(), self.nvars, "point dimension");
        let zero = x
            .first()
            .expect("generic evaluation needs at least one variable; use eval_rational")
            .constant_like(Rational::zero());
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = x[0].constant_like(c.clone());
            for (xi, &e) in x.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t * xi.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Exact evaluation at a rational point; also valid for zero variables.
    pub fn eval_rational(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars, "point dimension");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// Symbolic partial derivative in `x_i`, `i` 1-based.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i - 1];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[i - 1] -= 1;
            out.add_term(Monomial(d), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| TermRecord {
                exponents: m.0.clone(),
                coefficient: to_pq(c),
            })
            .collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Scalar for MultiPoly {
    fn constant_like(&self, c: Rational) -> Self {
        MultiPoly::constant(self.nvars, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn vertices(n: usize) -> impl Iterator<Item = Vec<Rational>> {
        (0u32..1 << n).map(move |id| (0..n).map(|i| int(((id >> i) & 1) as i64)).collect())
    }

    #[test]
    fn cancellation_leaves_zero() {
        let x1 = MultiPoly::var(1, 1);
        let p = x1.clone() + (-x1);
        assert!(p.is_zero());
        assert_eq!(p.total_degree(), None);
    }

    #[test]
    fn square() {
        let x1 = MultiPoly::var(1, 1);
        let sq = &x1 * &x1;
        assert_eq!(sq, MultiPoly::from_terms(1, [(vec![2], int(1))]));
    }

    #[test]
    fn hand_expansion_matches_on_vertices() {
        let one = MultiPoly::constant(2, int(1));
        let (x1, x2) = (MultiPoly::var(2, 1), MultiPoly::var(2, 2));
        let lhs = (one - MultiPoly::constant(2, int(2)) * x1) * x2;
        let expected = MultiPoly::from_terms(2, [(vec![0, 1], int(1)), (vec![1, 1], int(-2))]);
        assert_eq!(lhs, expected);
        for v in vertices(2) {
            let direct = (int(1) - int(2) * &v[0]) * &v[1];
            assert_eq!(lhs.eval(&v), direct);
        }
    }

    #[test]
    fn eval_examples() {
        let p = MultiPoly::from_terms(2, [(vec![1, 0], int(1)), (vec![1, 1], int(-2))]);
        assert_eq!(p.eval(&[int(1), int(1)]), int(-1));
        for q in [int(0), rat(5, 3), int(-9)] {
            assert_eq!(p.eval(&[int(0), q]), int(0));
        }
    }

    #[test]
    fn graded_lex_order() {
        let p = MultiPoly::from_terms(
            2,
            [
                (vec![0, 2], int(1)),
                (vec![1, 0], int(1)),
                (vec![0, 0], int(1)),
                (vec![1, 1], int(1)),
            ],
        );
        let order: Vec<Vec<u32>> = p.terms().map(|(m, _)| m.exponents().to_vec()).collect();
        assert_eq!(order, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn symbolic_partial() {
        // x1²·x2 + 3·x2  ->  d/dx1 = 2·x1·x2
        let p = MultiPoly::from_terms(2, [(vec![2, 1], int(1)), (vec![0, 1], int(3))]);
        assert_eq!(p.partial(1), MultiPoly::from_terms(2, [(vec![1, 1], int(2))]));
        assert_eq!(
            p.partial(2),
            MultiPoly::from_terms(2, [(vec![2, 0], int(1)), (vec![0, 0], int(3))])
        );
    }
}
