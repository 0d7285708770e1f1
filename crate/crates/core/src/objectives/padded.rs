use num_traits::Zero;

use super::{ObjectiveError, ObjectiveOracle};
use crate::boxprog::AxisDirection;
use crate::exact::{Rational, UniPoly};

/// An objective on `d` coordinates lifted to `n >= d`: only the first `d`
/// coordinates are read.
#[derive(Clone, Debug)]
pub struct PaddedObjective<O> {
    inner: O,
    n: usize,
}

pub fn pad<O: ObjectiveOracle>(inner: O, n: usize) -> Result<PaddedObjective<O>, ObjectiveError> {
    let d = inner.dim();
    if d > n {
        return Err(ObjectiveError::DimensionMismatch { inner: d, ambient: n });
    }
    Ok(PaddedObjective { inner, n })
}

impl<O: ObjectiveOracle> PaddedObjective<O> {
    pub fn inner(&self) -> &O {
        &self.inner
    }

    fn head<'a>(&self, x: &'a [Rational]) -> &'a [Rational] {
        assert_eq!(x.len(), self.n);
        &x[..self.inner.dim()]
    }
}

impl<O: ObjectiveOracle> ObjectiveOracle for PaddedObjective<O> {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: &[Rational]) -> Rational {
        self.inner.value(self.head(x))
    }

    fn gradient(&self, x: &[Rational]) -> Vec<Rational> {
        let mut g = self.inner.gradient(self.head(x));
        g.resize(self.n, Rational::zero());
        g
    }

    fn partial(&self, x: &[Rational], k: usize) -> Rational {
        if k <= self.inner.dim() {
            self.inner.partial(self.head(x), k)
        } else {
            Rational::zero()
        }
    }

    fn edge_restriction(&self, x: &[Rational], d: AxisDirection) -> UniPoly {
        if d.coord <= self.inner.dim() {
            self.inner.edge_restriction(self.head(x), d)
        } else {
            UniPoly::zero()
        }
    }

    fn describe(&self) -> String {
        format!("pad({}, {})", self.inner.describe(), self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxprog::Sign;
    use crate::exact::{int, rat};
    use crate::objectives::LowerBoundPolynomial;

    #[test]
    fn padded_value_and_gradient() {
        let p = pad(LowerBoundPolynomial::new(2), 4).unwrap();
        assert_eq!(p.value(&[int(0), int(1), int(1), int(1)]), int(3));
        let g = p.gradient(&[rat(1, 3), rat(1, 5), rat(1, 2), int(1)]);
        assert_eq!(g.len(), 4);
        assert!(g[2].is_zero() && g[3].is_zero());
        let r = p.edge_restriction(&[int(0), int(0), int(0), int(0)], AxisDirection::new(3, Sign::Plus));
        assert!(r.is_zero());
    }

    #[test]
    fn no_op_padding() {
        let f = LowerBoundPolynomial::new(3);
        let p = pad(f, 3).unwrap();
        let x = [rat(1, 2), int(1), rat(1, 4)];
        assert_eq!(p.value(&x), f.value(&x));
        assert_eq!(p.gradient(&x), f.gradient(&x));
    }

    #[test]
    fn cannot_shrink() {
        assert_eq!(
            pad(LowerBoundPolynomial::new(5), 3).unwrap_err(),
            ObjectiveError::DimensionMismatch { inner: 5, ambient: 3 }
        );
    }
}
