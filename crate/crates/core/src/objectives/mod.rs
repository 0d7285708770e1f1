//! Objective oracles: value, gradient, and the exact restriction of the
//! directional derivative to an axis line.

mod linear;
mod lower_bound;
mod padded;
mod polynomial;

pub use linear::LinearObjective;
pub use lower_bound::{
    alpha, alphas, beta, expand, f_value, gradient_sweep, partial_closed_form, partial_dual,
    restriction_by_substitution, LowerBoundPolynomial,
};
pub use padded::{pad, PaddedObjective};
pub use polynomial::PolynomialObjective;

use thiserror::Error;

use crate::boxprog::AxisDirection;
use crate::exact::{Rational, UniPoly};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ObjectiveError {
    #[error("closed-form partial is only defined on vertices of the unit cube (coordinate {0})")]
    NotAVertex(usize),
    #[error("cannot pad a {inner}-dimensional objective into {ambient} dimensions")]
    DimensionMismatch { inner: usize, ambient: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
}

pub trait ObjectiveOracle: Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[Rational]) -> Rational;

    fn gradient(&self, x: &[Rational]) -> Vec<Rational>;

    /// `∂f/∂x_k`, `k` 1-based.
    fn partial(&self, x: &[Rational], k: usize) -> Rational {
        self.gradient(x).swap_remove(k - 1)
    }

    /// `g(μ) = ∇f(x + μd)ᵀd` as an exact polynomial in `μ`.
    fn edge_restriction(&self, x: &[Rational], d: AxisDirection) -> UniPoly;

    /// Short human-readable name used in reports.
    fn describe(&self) -> String;
}

impl<T: ObjectiveOracle + ?Sized> ObjectiveOracle for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, x: &[Rational]) -> Rational {
        (**self).value(x)
    }
    fn gradient(&self, x: &[Rational]) -> Vec<Rational> {
        (**self).gradient(x)
    }
    fn partial(&self, x: &[Rational], k: usize) -> Rational {
        (**self).partial(x, k)
    }
    fn edge_restriction(&self, x: &[Rational], d: AxisDirection) -> UniPoly {
        (**self).edge_restriction(x, d)
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

impl<T: ObjectiveOracle + ?Sized> ObjectiveOracle for Box<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, x: &[Rational]) -> Rational {
        (**self).value(x)
    }
    fn gradient(&self, x: &[Rational]) -> Vec<Rational> {
        (**self).gradient(x)
    }
    fn partial(&self, x: &[Rational], k: usize) -> Rational {
        (**self).partial(x, k)
    }
    fn edge_restriction(&self, x: &[Rational], d: AxisDirection) -> UniPoly {
        (**self).edge_restriction(x, d)
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}
