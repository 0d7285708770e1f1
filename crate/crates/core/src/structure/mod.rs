//! Combinatorial structure of the worst-case construction on `{0,1}^n`:
//! the prefix-product / suffix-parity predicates, the unique improving
//! dimension, the Hamiltonian path it traces, and the induced orientation.
//!
//! Vertices are little-endian ids (bit `i` is coordinate `i + 1`);
//! coordinates are 1-based.

mod orientation;

pub use orientation::{
    check_decomposable, check_uso, combed_dimension, induce_orientation, induce_orientation_with, is_decomposable,
    is_uso, orientation_from_values, sink_find_decomposable, EdgeDir, Face, FaceEntry, Orientation, SinkSearch,
};

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::exact::int;
use crate::objectives::{LowerBoundPolynomial, ObjectiveOracle};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("vertex {vertex}: gradient condition gives {by_gradient:?}, pp/S condition gives {by_parity:?}")]
    Ambiguous {
        vertex: u64,
        by_gradient: Vec<usize>,
        by_parity: Vec<usize>,
    },
    #[error("vertex {vertex} is not optimal but has no improving dimension")]
    Missing { vertex: u64 },
    #[error("two adjacent vertices {0} and {1} share an objective value")]
    Tie(u64, u64),
    #[error("dimension {0} too large for a vertex id")]
    TooLarge(usize),
}

/// Bit of coordinate `j` (1-based); `x_0 = 1`.
fn bit(x: u64, j: usize) -> u8 {
    if j == 0 {
        1
    } else {
        ((x >> (j - 1)) & 1) as u8
    }
}

pub fn unit_vector_id(n: usize) -> u64 {
    1 << (n - 1)
}

/// `pp_n(x, k) = x_{k−1}·Π_{j=1..k−2}(1 − x_j)`, with `x_0 = 1`.
pub fn pp(x: u64, k: usize) -> u8 {
    let tail = (1..k.saturating_sub(1)).fold(1u8, |acc, j| acc * (1 - bit(x, j)));
    bit(x, k - 1) * tail
}

/// `Σ_{j=k+1..n} x_j mod 2`.
pub fn s_parity(n: usize, x: u64, k: usize) -> u8 {
    ((k + 1..=n).map(|j| bit(x, j) as u32).sum::<u32>() % 2) as u8
}

fn vertex_point(n: usize, x: u64) -> Vec<crate::exact::Rational> {
    (1..=n).map(|j| int(bit(x, j) as i64)).collect()
}

/// Dimensions satisfying the gradient condition: `∂_kF_n(x) > 0` with
/// `x_k = 0`, or `∂_kF_n(x) < 0` with `x_k = 1`.
pub fn improving_by_gradient(n: usize, x: u64) -> Vec<usize> {
    let g = LowerBoundPolynomial::new(n).gradient(&vertex_point(n, x));
    (1..=n)
        .filter(|&k| {
            let d = &g[k - 1];
            (d.is_positive() && bit(x, k) == 0) || (d.is_negative() && bit(x, k) == 1)
        })
        .collect()
}

/// Dimensions satisfying `S(k) ≡ x_k (mod 2)` and `pp(k) = 1`.
pub fn improving_by_parity(n: usize, x: u64) -> Vec<usize> {
    (1..=n)
        .filter(|&k| s_parity(n, x, k) == bit(x, k) && pp(x, k) == 1)
        .collect()
}

/// The unique improving dimension at vertex `x`, or `None` at `e^n`.
///
/// Both characterizations are evaluated; any disagreement or multiplicity
/// is an error.
pub fn improving_dimension(n: usize, x: u64) -> Result<Option<usize>, StructureError> {
    let by_gradient = improving_by_gradient(n, x);
    let by_parity = improving_by_parity(n, x);
    if by_gradient != by_parity || by_parity.len() > 1 {
        return Err(StructureError::Ambiguous {
            vertex: x,
            by_gradient,
            by_parity,
        });
    }
    match by_parity.first() {
        Some(&k) => Ok(Some(k)),
        None if x == unit_vector_id(n) => Ok(None),
        None => Err(StructureError::Missing { vertex: x }),
    }
}

/// Ordered vertex ids of a walk on the cube.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrayPath {
    pub n: usize,
    pub vertices: Vec<u64>,
}

impl GrayPath {
    /// Consecutive vertices adjacent, all `2^n` distinct, ends at `e^n`.
    pub fn is_hamiltonian_to_unit_vector(&self) -> bool {
        let len = 1usize << self.n;
        if self.vertices.len() != len {
            return false;
        }
        let mut seen = vec![false; len];
        for &v in &self.vertices {
            if v as usize >= len || std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        self.vertices.windows(2).all(|w| (w[0] ^ w[1]).count_ones() == 1)
            && self.vertices.last() == Some(&unit_vector_id(self.n))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.vertices)
    }
}

/// Follows the unique improving dimension from the origin.
pub fn hamiltonian_path(n: usize) -> Result<GrayPath, StructureError> {
    if n == 0 || n > 40 {
        return Err(StructureError::TooLarge(n));
    }
    let total = 1u64 << n;
    let mut vertices = Vec::with_capacity(total as usize);
    let mut x = 0u64;
    vertices.push(x);
    for _ in 1..total {
        let k = improving_dimension(n, x)?.ok_or(StructureError::Missing { vertex: x })?;
        x ^= 1 << (k - 1);
        vertices.push(x);
    }
    Ok(GrayPath { n, vertices })
}

/// The reflected binary Gray code by reflect-and-prefix: the `n`-bit code is
/// the `(n−1)`-bit code followed by its reverse with bit `n` set.
pub fn reflected_gray_code(n: usize) -> Vec<u64> {
    let mut code = vec![0u64];
    for b in 0..n {
        let top = 1u64 << b;
        let mirrored: Vec<u64> = code.iter().rev().map(|v| v | top).collect();
        code.extend(mirrored);
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(bits: &str) -> u64 {
        // "x1x2...xn" string to little-endian id
        bits.chars().enumerate().map(|(i, c)| ((c == '1') as u64) << i).sum()
    }

    #[test]
    fn pp_examples() {
        for x in 0..8 {
            assert_eq!(pp(x, 1), 1);
        }
        assert_eq!(pp(id("100"), 2), 1);
        assert_eq!(pp(id("100"), 3), 0);
        assert_eq!(pp(id("010"), 3), 1);
        assert_eq!(pp(id("110"), 3), 0);
    }

    #[test]
    fn s_parity_examples() {
        for k in 1..=3 {
            assert_eq!(s_parity(3, 0, k), 0);
        }
        assert_eq!(s_parity(3, id("011"), 1), 0);
        assert_eq!(s_parity(3, id("001"), 2), 1);
    }

    #[test]
    fn improving_dimension_examples() {
        for n in 1..=6 {
            assert_eq!(improving_dimension(n, 0), Ok(Some(1)));
            assert_eq!(improving_dimension(n, unit_vector_id(n)), Ok(None));
        }
        assert_eq!(improving_dimension(3, id("100")), Ok(Some(2)));
    }

    #[test]
    fn path_examples() {
        let ids = |v: &[&str]| v.iter().map(|s| id(s)).collect::<Vec<_>>();
        assert_eq!(hamiltonian_path(1).unwrap().vertices, vec![0, 1]);
        assert_eq!(hamiltonian_path(2).unwrap().vertices, ids(&["00", "10", "11", "01"]));
        assert_eq!(
            hamiltonian_path(3).unwrap().vertices,
            ids(&["000", "100", "110", "010", "011", "111", "101", "001"])
        );
    }

    #[test]
    fn gray_code_matches_xor_formula() {
        for n in 0..8 {
            let xor: Vec<u64> = (0..1u64 << n).map(|i| i ^ (i >> 1)).collect();
            assert_eq!(reflected_gray_code(n), xor);
        }
    }

    #[test]
    fn paths_are_hamiltonian() {
        for n in 1..=8 {
            let p = hamiltonian_path(n).unwrap();
            assert!(p.is_hamiltonian_to_unit_vector());
            assert_eq!(p.vertices, reflected_gray_code(n));
        }
        let broken = GrayPath {
            n: 2,
            vertices: vec![0, 3, 1, 2],
        };
        assert!(!broken.is_hamiltonian_to_unit_vector());
    }
}
