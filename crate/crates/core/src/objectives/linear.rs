use num_traits::Zero;

use super::ObjectiveOracle;
use crate::boxprog::AxisDirection;
use crate::exact::{Rational, UniPoly};

/// `x ↦ cᵀx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearObjective {
    c: Vec<Rational>,
}

impl LinearObjective {
    pub fn new(c: Vec<Rational>) -> Self {
        LinearObjective { c }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.c
    }
}

impl ObjectiveOracle for LinearObjective {
    fn dim(&self) -> usize {
        self.c.len()
    }

    fn value(&self, x: &[Rational]) -> Rational {
        self.c.iter().zip(x).fold(Rational::zero(), |acc, (c, v)| acc + c * v)
    }

    fn gradient(&self, _x: &[Rational]) -> Vec<Rational> {
        self.c.clone()
    }

    fn partial(&self, _x: &[Rational], k: usize) -> Rational {
        self.c[k - 1].clone()
    }

    fn edge_restriction(&self, _x: &[Rational], d: AxisDirection) -> UniPoly {
        UniPoly::constant(&self.c[d.coord - 1] * d.sign.as_rational())
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.c.iter().map(crate::exact::to_pq).collect();
        format!("linear[{}]", parts.join(","))
    }
}
