//! Exact arithmetic: rationals, univariate and sparse multivariate
//! polynomials, and dual numbers for forward-mode differentiation.

mod checked;
mod dual;
mod multi;
mod rational;
mod scalar;
mod uni;

pub use checked::CheckedInt;
pub use dual::DualNumber;
pub use multi::{Monomial, MultiPoly, TermRecord};
pub use rational::{int, is_zero_or_one, parse_pq, pow2, rat, signum, to_approx, to_pq, ParseRationalError, Rational};
pub use scalar::Scalar;
pub use uni::{first_nonpositive, simplest_between, NotRepresentable, SturmChain, UniPoly};
