//! The feasible box `[l, u]` with the 2n-row constraint indexing: row `i`
//! (1-based, `i <= n`) is `x_i <= u_i`, row `i + n` is `-x_i <= -l_i`.
//!
//! Coordinates are 1-based throughout the public API, matching the row
//! indexing. Vertex ids are little-endian: bit `i` of the id is the bit of
//! coordinate `i + 1`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BoxError {
    #[error("degenerate box: lower bound not below upper bound in coordinate {0}")]
    Degenerate(usize),
    #[error("bound vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("point has dimension {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("point violates the bounds of coordinate {0}")]
    InfeasiblePoint(usize),
    #[error("point is not a vertex (coordinate {0} is strictly inside its range)")]
    NotAVertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_rational(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }
}

/// Unit direction `±e^coord` (`coord` 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxisDirection {
    pub coord: usize,
    pub sign: Sign,
}

impl AxisDirection {
    pub fn new(coord: usize, sign: Sign) -> Self {
        AxisDirection { coord, sign }
    }
}

impl fmt::Display for AxisDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "{s}e^{}", self.coord)
    }
}

/// An edge direction at a vertex: `length · sign · e^coord` with
/// `length = u_k - l_k`, so one step of it reaches the neighbouring vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDirection {
    pub axis: AxisDirection,
    pub length: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn origin(n: usize) -> Self {
        Point(vec![Rational::zero(); n])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `self + μ·d`.
    pub fn step(&self, d: AxisDirection, mu: &Rational) -> Point {
        let mut c = self.0.clone();
        match d.sign {
            Sign::Plus => c[d.coord - 1] += mu,
            Sign::Minus => c[d.coord - 1] -= mu,
        }
        Point(c)
    }
}

/// A set of constraint rows in `1..=2n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActiveIndexSet(BTreeSet<usize>);

impl ActiveIndexSet {
    pub fn new() -> Self {
        ActiveIndexSet(BTreeSet::new())
    }

    pub fn contains(&self, row: usize) -> bool {
        self.0.contains(&row)
    }

    pub fn insert(&mut self, row: usize) -> bool {
        self.0.insert(row)
    }

    pub fn remove(&mut self, row: usize) -> bool {
        self.0.remove(&row)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &ActiveIndexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<usize> for ActiveIndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ActiveIndexSet(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxProgram {
    lower: Vec<Rational>,
    upper: Vec<Rational>,
}

impl BoxProgram {
    pub fn new(lower: Vec<Rational>, upper: Vec<Rational>) -> Result<Self, BoxError> {
        if lower.len() != upper.len() {
            return Err(BoxError::LengthMismatch(lower.len(), upper.len()));
        }
        if let Some(i) = lower.iter().zip(&upper).position(|(l, u)| l >= u) {
            return Err(BoxError::Degenerate(i + 1));
        }
        Ok(BoxProgram { lower, upper })
    }

    /// `[0, 1]^n`.
    pub fn unit(n: usize) -> Self {
        BoxProgram {
            lower: vec![Rational::zero(); n],
            upper: vec![Rational::one(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    /// Row index of the upper bound of `coord`.
    pub fn upper_row(&self, coord: usize) -> usize {
        coord
    }

    /// Row index of the lower bound of `coord`.
    pub fn lower_row(&self, coord: usize) -> usize {
        coord + self.dim()
    }

    /// `(coord, sign)` of row `row`: `+1` for an upper-bound row, `-1` for a
    /// lower-bound row, i.e. the row vector is `sign · e^coord`.
    pub fn row_axis(&self, row: usize) -> (usize, i8) {
        let n = self.dim();
        assert!((1..=2 * n).contains(&row), "row {row} out of range");
        if row <= n {
            (row, 1)
        } else {
            (row - n, -1)
        }
    }

    /// Sign of `row · d` for a unit axis direction.
    pub fn row_dot(&self, row: usize, d: AxisDirection) -> i8 {
        let (coord, s) = self.row_axis(row);
        if coord == d.coord {
            s * d.sign.as_i8()
        } else {
            0
        }
    }

    fn check_dim(&self, x: &Point) -> Result<(), BoxError> {
        if x.dim() != self.dim() {
            return Err(BoxError::Dimension {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    pub fn is_feasible(&self, x: &Point) -> bool {
        x.dim() == self.dim()
            && x.0
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| l <= v && v <= u)
    }

    /// Tight rows at `x`.
    pub fn eq_set(&self, x: &Point) -> Result<ActiveIndexSet, BoxError> {
        self.check_dim(x)?;
        let mut set = ActiveIndexSet::new();
        for (i, v) in x.0.iter().enumerate() {
            let (l, u) = (&self.lower[i], &self.upper[i]);
            if v < l || v > u {
                return Err(BoxError::InfeasiblePoint(i + 1));
            }
            if v == u {
                set.insert(self.upper_row(i + 1));
            }
            if v == l {
                set.insert(self.lower_row(i + 1));
            }
        }
        Ok(set)
    }

    /// The vertex with coordinate `i` at `upper_i` when `bits[i]`, else `lower_i`.
    pub fn vertex_from_bits(&self, bits: &[bool]) -> Point {
        assert_eq!(bits.len(), self.dim(), "bit vector length");
        Point(
            bits.iter()
                .enumerate()
                .map(|(i, &b)| {
                    if b {
                        self.upper[i].clone()
                    } else {
                        self.lower[i].clone()
                    }
                })
                .collect(),
        )
    }

    pub fn vertex_from_id(&self, id: u64) -> Point {
        self.vertex_from_bits(&id_to_bits(id, self.dim()))
    }

    /// Bits of `x` if it is a vertex.
    pub fn vertex_bits(&self, x: &Point) -> Result<Vec<bool>, BoxError> {
        self.check_dim(x)?;
        x.0.iter()
            .enumerate()
            .map(|(i, v)| {
                if v == &self.upper[i] {
                    Ok(true)
                } else if v == &self.lower[i] {
                    Ok(false)
                } else {
                    Err(BoxError::NotAVertex(i + 1))
                }
            })
            .collect()
    }

    pub fn vertex_id(&self, x: &Point) -> Result<u64, BoxError> {
        Ok(bits_to_id(&self.vertex_bits(x)?))
    }

    /// The `n` edge directions leaving a vertex, in coordinate order.
    pub fn edge_directions(&self, x: &Point) -> Result<Vec<EdgeDirection>, BoxError> {
        let bits = self.vertex_bits(x)?;
        Ok(bits
            .iter()
            .enumerate()
            .map(|(i, &b)| EdgeDirection {
                axis: AxisDirection::new(i + 1, if b { Sign::Minus } else { Sign::Plus }),
                length: &self.upper[i] - &self.lower[i],
            })
            .collect())
    }

    /// Whether `d` is feasible at `x`: `row · d <= 0` for every tight row.
    pub fn is_feasible_direction(&self, eq: &ActiveIndexSet, d: AxisDirection) -> bool {
        eq.iter().all(|row| self.row_dot(row, d) <= 0)
    }

    /// Largest `μ` with `x + μ·d` still in the box.
    pub fn step_to_boundary(&self, x: &Point, d: AxisDirection) -> Rational {
        let i = d.coord - 1;
        match d.sign {
            Sign::Plus => &self.upper[i] - &x.0[i],
            Sign::Minus => &x.0[i] - &self.lower[i],
        }
    }
}

pub fn id_to_bits(id: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (id >> i) & 1 == 1).collect()
}

pub fn bits_to_id(bits: &[bool]) -> u64 {
    bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as u64) << i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn pt(v: &[Rational]) -> Point {
        Point(v.to_vec())
    }

    fn rows(v: &[usize]) -> ActiveIndexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn eq_set_examples() {
        let p = BoxProgram::unit(2);
        assert_eq!(p.eq_set(&pt(&[int(0), int(0)])).unwrap(), rows(&[3, 4]));
        assert_eq!(p.eq_set(&pt(&[int(1), int(1)])).unwrap(), rows(&[1, 2]));
        assert_eq!(p.eq_set(&pt(&[rat(1, 2), int(1)])).unwrap(), rows(&[2]));
        assert_eq!(p.eq_set(&pt(&[int(2), int(0)])), Err(BoxError::InfeasiblePoint(1)));
    }

    #[test]
    fn vertex_from_bits_examples() {
        let p = BoxProgram::unit(3);
        assert_eq!(
            p.vertex_from_bits(&[false, false, false]),
            pt(&[int(0), int(0), int(0)])
        );
        assert_eq!(p.vertex_from_bits(&[false, false, true]), pt(&[int(0), int(0), int(1)]));
        let q = BoxProgram::new(vec![int(0), int(-1)], vec![int(2), int(1)]).unwrap();
        assert_eq!(q.vertex_from_bits(&[true, false]), pt(&[int(2), int(-1)]));
        assert_eq!(q.vertex_id(&pt(&[int(2), int(-1)])), Ok(1));
    }

    #[test]
    fn edge_direction_examples() {
        let axes = |p: &BoxProgram, x: &[Rational]| -> Vec<AxisDirection> {
            p.edge_directions(&pt(x)).unwrap().into_iter().map(|e| e.axis).collect()
        };
        use Sign::*;
        let p2 = BoxProgram::unit(2);
        assert_eq!(
            axes(&p2, &[int(0), int(0)]),
            vec![AxisDirection::new(1, Plus), AxisDirection::new(2, Plus)]
        );
        assert_eq!(
            axes(&p2, &[int(1), int(0)]),
            vec![AxisDirection::new(1, Minus), AxisDirection::new(2, Plus)]
        );
        let p3 = BoxProgram::unit(3);
        assert_eq!(
            axes(&p3, &[int(1), int(1), int(1)]),
            (1..=3).map(|k| AxisDirection::new(k, Minus)).collect::<Vec<_>>()
        );
        assert_eq!(
            p2.edge_directions(&pt(&[rat(1, 2), int(0)])),
            Err(BoxError::NotAVertex(1))
        );
    }

    #[test]
    fn step_to_boundary_examples() {
        let p = BoxProgram::unit(2);
        let e1 = AxisDirection::new(1, Sign::Plus);
        assert_eq!(p.step_to_boundary(&pt(&[int(0), int(0)]), e1), int(1));
        assert_eq!(p.step_to_boundary(&pt(&[rat(1, 2), int(0)]), e1), rat(1, 2));
        let q = BoxProgram::new(vec![int(0), int(0)], vec![int(2), int(1)]).unwrap();
        assert_eq!(q.step_to_boundary(&pt(&[int(0), int(0)]), e1), int(2));
    }

    #[test]
    fn degenerate_boxes_rejected() {
        assert_eq!(
            BoxProgram::new(vec![int(1)], vec![int(1)]),
            Err(BoxError::Degenerate(1))
        );
    }

    #[test]
    fn vertex_invariants() {
        // scaled box so edge lengths differ from 1
        let p = BoxProgram::new(vec![int(0), int(-1), rat(1, 2)], vec![int(2), int(1), int(3)]).unwrap();
        let n = p.dim();
        for id in 0..1u64 << n {
            let v = p.vertex_from_id(id);
            let eq = p.eq_set(&v).unwrap();
            assert_eq!(eq.len(), n);
            // one row per coordinate, so the rows are independent
            let mut coords: Vec<usize> = eq.iter().map(|r| p.row_axis(r).0).collect();
            coords.dedup();
            assert_eq!(coords.len(), n);
            for (i, bit) in id_to_bits(id, n).into_iter().enumerate() {
                assert_eq!(eq.contains(i + 1), bit);
                assert_eq!(eq.contains(i + 1 + n), !bit);
            }
            for e in p.edge_directions(&v).unwrap() {
                assert!(p.is_feasible_direction(&eq, e.axis));
                let orthogonal = eq.iter().filter(|&r| p.row_dot(r, e.axis) == 0).count();
                assert_eq!(orthogonal, n - 1);
                let mu = p.step_to_boundary(&v, e.axis);
                assert_eq!(mu, e.length);
                let w = v.step(e.axis, &mu);
                assert_eq!(p.vertex_id(&w).unwrap(), id ^ (1 << (e.axis.coord - 1)));
            }
        }
    }
}
