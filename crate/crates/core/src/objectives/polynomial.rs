use super::ObjectiveOracle;
use crate::boxprog::AxisDirection;
use crate::exact::{DualNumber, MultiPoly, Rational, UniPoly};

/// An arbitrary expanded polynomial used as an objective, e.g. a reduced
/// SAT formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialObjective {
    poly: MultiPoly,
}

impl PolynomialObjective {
    pub fn new(poly: MultiPoly) -> Self {
        assert!(poly.nvars() >= 1, "objective needs at least one variable");
        PolynomialObjective { poly }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }
}

impl ObjectiveOracle for PolynomialObjective {
    fn dim(&self) -> usize {
        self.poly.nvars()
    }

    fn value(&self, x: &[Rational]) -> Rational {
        self.poly.eval_rational(x)
    }

    fn gradient(&self, x: &[Rational]) -> Vec<Rational> {
        (1..=self.dim()).map(|k| self.partial(x, k)).collect()
    }

    fn partial(&self, x: &[Rational], k: usize) -> Rational {
        let duals: Vec<DualNumber> = x
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i + 1 == k {
                    DualNumber::variable(v.clone())
                } else {
                    DualNumber::constant(v.clone())
                }
            })
            .collect();
        self.poly.eval(&duals).derivative
    }

    fn edge_restriction(&self, x: &[Rational], d: AxisDirection) -> UniPoly {
        let line: Vec<UniPoly> = x
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i + 1 == d.coord {
                    UniPoly::linear(v.clone(), d.sign.as_rational())
                } else {
                    UniPoly::constant(v.clone())
                }
            })
            .collect();
        self.poly.eval(&line).derivative()
    }

    fn describe(&self) -> String {
        format!("poly[{} terms]", self.poly.num_terms())
    }
}
