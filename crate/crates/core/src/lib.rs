//! Exact-rational active-set and simplex engines on axis-aligned boxes,
//! the cubic-degree lower-bound polynomial family, and checks of its
//! combinatorial structure.
//!
//! All arithmetic is exact. Coordinates are 1-based in the public API and
//! cube vertices are identified by little-endian bit masks (bit `i` is
//! coordinate `i + 1`).

pub mod boxprog;
pub mod engine;
pub mod exact;
pub mod exec;
pub mod objectives;
pub mod sat;
pub mod structure;
pub mod verify;

pub use boxprog::{ActiveIndexSet, AxisDirection, BoxError, BoxProgram, EdgeDirection, Point, Sign};
pub use engine::{
    active_set_run, equivalence_check, simplex_run, EngineError, Equivalence, IterationRecord, Outcome, PivotRule,
    Trajectory,
};
pub use exact::{DualNumber, MultiPoly, Rational, UniPoly};
pub use exec::Execution;
pub use objectives::{LinearObjective, LowerBoundPolynomial, ObjectiveOracle, PolynomialObjective};
