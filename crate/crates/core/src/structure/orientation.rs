//! Orientations of the cube induced by vertex values, and the face scans
//! behind the unique-sink and decomposability checks.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::StructureError;
use crate::exact::{int, Rational};
use crate::exec::Execution;
use crate::objectives::ObjectiveOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeDir {
    /// From the endpoint with bit 0 to the endpoint with bit 1.
    Forward,
    Backward,
}

/// Direction of every edge of the `n`-cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    n: usize,
    /// `forward[v]` bit `k−1` is set iff the coordinate-`k` edge at `v`
    /// (with `v`'s bit `k` clear) is [`EdgeDir::Forward`].
    forward: Vec<u64>,
}

impl Orientation {
    /// Builds from a predicate `forward(v, k)` queried for every vertex `v`
    /// whose bit `k` is 0.
    pub fn from_fn(n: usize, forward: impl Fn(u64, usize) -> bool) -> Self {
        let forward = (0..1u64 << n)
            .map(|v| {
                (1..=n)
                    .filter(|&k| v & (1 << (k - 1)) == 0 && forward(v, k))
                    .fold(0u64, |m, k| m | (1 << (k - 1)))
            })
            .collect();
        Orientation { n, forward }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn edge_direction(&self, v: u64, k: usize) -> EdgeDir {
        let low = v & !(1 << (k - 1));
        if self.forward[low as usize] & (1 << (k - 1)) != 0 {
            EdgeDir::Forward
        } else {
            EdgeDir::Backward
        }
    }

    /// Mask of coordinates whose edge at `v` points away from `v`.
    pub fn outgoing(&self, v: u64) -> u64 {
        let mut out = 0;
        for k in 1..=self.n {
            let b = 1u64 << (k - 1);
            let fwd = self.forward[(v & !b) as usize] & b != 0;
            if (v & b == 0) == fwd {
                out |= b;
            }
        }
        out
    }

    /// Vertex-id → outgoing coordinate list.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<u64, Vec<usize>> = (0..1u64 << self.n)
            .map(|v| {
                let out = self.outgoing(v);
                (v, (1..=self.n).filter(|&k| out & (1 << (k - 1)) != 0).collect())
            })
            .collect();
        serde_json::to_value(map).expect("orientation serializes")
    }
}

/// Edges point from the lower to the higher value.
pub fn orientation_from_values(n: usize, values: &[Rational]) -> Result<Orientation, StructureError> {
    assert_eq!(values.len(), 1usize << n);
    for v in 0..1u64 << n {
        for k in 1..=n {
            let w = v | (1 << (k - 1));
            if w != v && values[v as usize] == values[w as usize] {
                return Err(StructureError::Tie(v, w));
            }
        }
    }
    Ok(Orientation::from_fn(n, |v, k| {
        values[v as usize] < values[(v | (1 << (k - 1))) as usize]
    }))
}

pub fn induce_orientation<O: ObjectiveOracle + ?Sized>(objective: &O) -> Result<Orientation, StructureError> {
    induce_orientation_with(objective, Execution::default())
}

pub fn induce_orientation_with<O: ObjectiveOracle + ?Sized>(
    objective: &O,
    exec: Execution,
) -> Result<Orientation, StructureError> {
    let n = objective.dim();
    let values = exec.map(0..1u64 << n, |v| {
        let x: Vec<Rational> = (0..n).map(|i| int(((v >> i) & 1) as i64)).collect();
        objective.value(&x)
    });
    orientation_from_values(n, &values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FaceEntry {
    Zero,
    One,
    Free,
}

/// A face of the cube: fixed bits plus a set of free coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    n: usize,
    free: u64,
    fixed: u64,
}

impl Face {
    pub fn whole(n: usize) -> Self {
        Face {
            n,
            free: (1u64 << n) - 1,
            fixed: 0,
        }
    }

    pub fn from_pattern(pattern: &[FaceEntry]) -> Self {
        let (mut free, mut fixed) = (0, 0);
        for (i, e) in pattern.iter().enumerate() {
            match e {
                FaceEntry::Zero => {}
                FaceEntry::One => fixed |= 1 << i,
                FaceEntry::Free => free |= 1 << i,
            }
        }
        Face {
            n: pattern.len(),
            free,
            fixed,
        }
    }

    /// The `t`-th of the `3^n` faces: base-3 digit `i` of `t` is 0, 1 or
    /// free for coordinate `i + 1`.
    pub fn from_index(n: usize, mut t: u64) -> Self {
        let (mut free, mut fixed) = (0, 0);
        for i in 0..n {
            match t % 3 {
                0 => {}
                1 => fixed |= 1 << i,
                _ => free |= 1 << i,
            }
            t /= 3;
        }
        Face { n, free, fixed }
    }

    pub fn count(n: usize) -> u64 {
        3u64.pow(n as u32)
    }

    pub fn pattern(&self) -> Vec<FaceEntry> {
        (0..self.n)
            .map(|i| {
                if self.free & (1 << i) != 0 {
                    FaceEntry::Free
                } else if self.fixed & (1 << i) != 0 {
                    FaceEntry::One
                } else {
                    FaceEntry::Zero
                }
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.free.count_ones() as usize
    }

    pub fn free_mask(&self) -> u64 {
        self.free
    }

    /// Free coordinates, ascending, 1-based.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&k| self.free & (1 << (k - 1)) != 0).collect()
    }

    pub fn contains(&self, v: u64) -> bool {
        v & !self.free == self.fixed
    }

    pub fn vertices(&self) -> impl Iterator<Item = u64> + '_ {
        // enumerate submasks of `free`
        let mut sub = Some(0u64);
        std::iter::from_fn(move || {
            let s = sub?;
            let next = s.wrapping_sub(self.free) & self.free;
            sub = (next != 0).then_some(next);
            Some(self.fixed | s)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let p: String = self
            .pattern()
            .iter()
            .map(|e| match e {
                FaceEntry::Zero => '0',
                FaceEntry::One => '1',
                FaceEntry::Free => '*',
            })
            .collect();
        serde_json::json!({ "pattern": p, "dim": self.dim() })
    }
}

fn sinks_in(o: &Orientation, face: &Face) -> usize {
    face.vertices().filter(|&v| o.outgoing(v) & face.free == 0).count()
}

/// `Err(face)` for the first face (in base-3 index order) without exactly one sink.
pub fn check_uso(o: &Orientation, exec: Execution) -> Result<(), Face> {
    let n = o.dim();
    match exec.find_first(0..Face::count(n), |t| {
        let f = Face::from_index(n, t);
        (sinks_in(o, &f) != 1).then_some(f)
    }) {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

pub fn is_uso(o: &Orientation) -> bool {
    check_uso(o, Execution::default()).is_ok()
}

/// Free coordinates in which every edge of the face points the same way.
pub fn combed_dimension(o: &Orientation, face: &Face) -> Vec<usize> {
    face.support()
        .into_iter()
        .filter(|&k| {
            let b = 1u64 << (k - 1);
            let mut dirs = face.vertices().filter(|v| v & b == 0).map(|v| o.edge_direction(v, k));
            let first = dirs.next();
            dirs.all(|d| Some(d) == first)
        })
        .collect()
}

/// `Err(face)` for the first face of dimension >= 1 that is combed in no
/// dimension.
pub fn check_decomposable(o: &Orientation, exec: Execution) -> Result<(), Face> {
    let n = o.dim();
    match exec.find_first(0..Face::count(n), |t| {
        let f = Face::from_index(n, t);
        (f.dim() >= 1 && combed_dimension(o, &f).is_empty()).then_some(f)
    }) {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

pub fn is_decomposable(o: &Orientation) -> bool {
    check_decomposable(o, Execution::default()).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinkSearch {
    pub vertex: u64,
    pub queries: usize,
}

/// Sink of an orientation that is combed in the highest free dimension of
/// every subcube: fixes coordinates `n, n−1, …, 1` in turn, each time to the
/// endpoint with the larger value. Values are cached, so at most `2n`
/// distinct queries are made.
pub fn sink_find_decomposable(mut value: impl FnMut(u64) -> Rational, n: usize) -> SinkSearch {
    let mut cache: HashMap<u64, Rational> = HashMap::new();
    let mut query = |v: u64| -> Rational { cache.entry(v).or_insert_with(|| value(v)).clone() };
    let mut current = 0u64;
    for k in (1..=n).rev() {
        let b = 1u64 << (k - 1);
        let low = current & !b;
        let high = current | b;
        current = if query(high) > query(low) { high } else { low };
    }
    SinkSearch {
        vertex: current,
        queries: cache.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::objectives::{LinearObjective, LowerBoundPolynomial};

    fn cyclic_square() -> Orientation {
        // 00 → 10 → 11 → 01 → 00 in x1x2 notation
        Orientation::from_fn(2, |v, k| match (v, k) {
            (0b00, 1) => true,  // 00 → 10
            (0b01, 2) => true,  // 10 → 11
            (0b10, 1) => false, // 11 → 01
            (0b00, 2) => false, // 01 → 00
            _ => unreachable!(),
        })
    }

    #[test]
    fn f2_orientation_and_sink() {
        let o = induce_orientation(&LowerBoundPolynomial::new(2)).unwrap();
        // values along the path 00,10,11,01 are 0,1,2,3
        assert_eq!(o.edge_direction(0b00, 1), EdgeDir::Forward);
        assert_eq!(o.edge_direction(0b01, 2), EdgeDir::Forward);
        assert_eq!(o.edge_direction(0b10, 1), EdgeDir::Backward);
        assert_eq!(o.edge_direction(0b00, 2), EdgeDir::Forward);
        let sinks: Vec<u64> = (0..4).filter(|&v| o.outgoing(v) == 0).collect();
        assert_eq!(sinks, vec![0b10]);
    }

    #[test]
    fn linear_orientation_sink() {
        let o = induce_orientation(&LinearObjective::new(vec![int(1), int(2)])).unwrap();
        let sinks: Vec<u64> = (0..4).filter(|&v| o.outgoing(v) == 0).collect();
        assert_eq!(sinks, vec![0b11]);
        assert_eq!(combed_dimension(&o, &Face::whole(2)), vec![1, 2]);
    }

    #[test]
    fn constant_objective_ties() {
        let o = induce_orientation(&LinearObjective::new(vec![int(0), int(0)]));
        assert!(matches!(o, Err(StructureError::Tie(..))));
    }

    #[test]
    fn cyclic_square_is_not_uso() {
        let o = cyclic_square();
        assert_eq!(check_uso(&o, Execution::Sequential), Err(Face::whole(2)));
        assert!(!is_decomposable(&o));
    }

    #[test]
    fn f_n_is_decomposable_uso() {
        for n in 1..=6 {
            let o = induce_orientation(&LowerBoundPolynomial::new(n)).unwrap();
            assert!(is_uso(&o), "n={n}");
            assert!(is_decomposable(&o), "n={n}");
        }
        let o3 = induce_orientation(&LowerBoundPolynomial::new(3)).unwrap();
        assert_eq!(combed_dimension(&o3, &Face::whole(3)), vec![3]);
    }

    #[test]
    fn face_enumeration() {
        let n = 3;
        let faces: Vec<Face> = (0..Face::count(n)).map(|t| Face::from_index(n, t)).collect();
        let distinct: std::collections::HashSet<_> = faces.iter().collect();
        assert_eq!(distinct.len(), 27);
        assert_eq!(faces.iter().filter(|f| f.dim() == 0).count(), 8);
        for f in &faces {
            let vs: Vec<u64> = f.vertices().collect();
            assert_eq!(vs.len(), 1 << f.dim());
            assert!(vs.iter().all(|&v| f.contains(v)));
            assert_eq!(Face::from_pattern(&f.pattern()), *f);
        }
    }

    #[test]
    fn sink_finder_examples() {
        let f3 = LowerBoundPolynomial::new(3);
        let value = |v: u64| f3.value(&(0..3).map(|i| int(((v >> i) & 1) as i64)).collect::<Vec<_>>());
        let s = sink_find_decomposable(value, 3);
        assert_eq!(s.vertex, 0b100);
        assert!(s.queries <= 6);

        let s = sink_find_decomposable(|v| if v == 1 { int(5) } else { int(0) }, 1);
        assert_eq!(s, SinkSearch { vertex: 1, queries: 2 });
    }

    #[test]
    fn json_export() {
        let o = induce_orientation(&LinearObjective::new(vec![int(1), rat(1, 2)])).unwrap();
        let j = o.to_json();
        assert_eq!(j["0"], serde_json::json!([1, 2]));
        assert_eq!(j["3"], serde_json::json!([]));
    }
}
