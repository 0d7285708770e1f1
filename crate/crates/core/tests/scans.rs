//! Face scans against a naive per-face recomputation, and agreement of the
//! sequential and parallel execution modes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pivotforge::exact::{int, Rational};
use pivotforge::objectives::LowerBoundPolynomial;
use pivotforge::sat::{brute_force_max, brute_force_sat, random_formula, reduce};
use pivotforge::structure::{
    check_decomposable, check_uso, combed_dimension, induce_orientation_with, orientation_from_values, Face,
};
use pivotforge::verify::{verify_constancy, verify_uniqueness, verify_uso};
use pivotforge::Execution;

/// Faces as explicit patterns in base-3 order, coordinate 1 least
/// significant; `None` is free.
fn all_patterns(n: usize) -> Vec<Vec<Option<bool>>> {
    let mut out: Vec<Vec<Option<bool>>> = vec![vec![]];
    for _ in 0..n {
        out = [Some(false), Some(true), None]
            .into_iter()
            .flat_map(|e| {
                out.iter().map(move |p| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

fn members(pattern: &[Option<bool>]) -> Vec<u64> {
    (0..1u64 << pattern.len())
        .filter(|v| {
            pattern
                .iter()
                .enumerate()
                .all(|(i, e)| e.is_none_or(|b| (v >> i & 1 == 1) == b))
        })
        .collect()
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

/// Sinks and combed coordinates computed straight from vertex values.
fn naive_face(values: &[Rational], pattern: &[Option<bool>]) -> (usize, Vec<usize>) {
    let vs = members(pattern);
    let free: Vec<usize> = (0..pattern.len()).filter(|&i| pattern[i].is_none()).collect();
    let sinks = vs
        .iter()
        .filter(|&&v| {
            free.iter()
                .all(|&i| values[(v ^ (1 << i)) as usize] < values[v as usize])
        })
        .count();
    let combed = free
        .iter()
        .filter(|&&i| {
            let ups: Vec<bool> = vs
                .iter()
                .filter(|&&v| v >> i & 1 == 0)
                .map(|&v| values[(v | (1 << i)) as usize] > values[v as usize])
                .collect();
            ups.windows(2).all(|w| w[0] == w[1])
        })
        .map(|&i| i + 1)
        .collect();
    (sinks, combed)
}

#[test]
fn face_scans_match_naive_recomputation_on_random_orientations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4 {
        for _ in 0..25 {
            let mut perm: Vec<i64> = (0..1i64 << n).collect();
            perm.shuffle(&mut rng);
            let values: Vec<Rational> = perm.into_iter().map(int).collect();
            let o = orientation_from_values(n, &values).unwrap();
            let patterns = all_patterns(n);
            let mut first_non_uso = None;
            let mut first_uncombed = None;
            for (t, pattern) in (0..Face::count(n)).zip(&patterns) {
                let face = Face::from_index(n, t);
                assert_eq!(members(pattern), sorted(face.vertices().collect()));
                let (sinks, combed) = naive_face(&values, pattern);
                assert_eq!(combed_dimension(&o, &face), combed, "n={n} face {t}");
                if sinks != 1 && first_non_uso.is_none() {
                    first_non_uso = Some(t);
                }
                if face.dim() >= 1 && combed.is_empty() && first_uncombed.is_none() {
                    first_uncombed = Some(t);
                }
            }
            let idx = |r: Result<(), Face>| {
                r.err()
                    .map(|f| (0..Face::count(n)).find(|&t| Face::from_index(n, t) == f).unwrap())
            };
            assert_eq!(idx(check_uso(&o, Execution::Sequential)), first_non_uso);
            assert_eq!(idx(check_decomposable(&o, Execution::Sequential)), first_uncombed);
        }
    }
}

#[test]
fn sequential_and_parallel_modes_agree() {
    let seq = Execution::Sequential;
    let par = Execution::Parallel;
    for n in 1..=7 {
        let f = LowerBoundPolynomial::new(n);
        assert_eq!(induce_orientation_with(&f, seq), induce_orientation_with(&f, par));
        assert_eq!(verify_uso(n, seq), verify_uso(n, par));
        assert_eq!(verify_uniqueness(n, seq), verify_uniqueness(n, par));
        assert_eq!(verify_constancy(n, seq), verify_constancy(n, par));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let formula = random_formula(&mut rng, 14, 20);
        let p = reduce(&formula);
        assert_eq!(brute_force_max(&p, seq), brute_force_max(&p, par));
        assert_eq!(brute_force_sat(&formula, seq), brute_force_sat(&formula, par));
    }
}

#[test]
fn parallel_build_flag_is_reported() {
    assert_eq!(Execution::parallel_available(), cfg!(feature = "parallel"));
}
