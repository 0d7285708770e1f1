//! The twelve acceptance criteria, one test each. Every test writes a single
//! `PASS`/`FAIL` line to stderr (bypassing output capture) before asserting.

use std::io::Write;
use std::time::Instant;

use pivotforge::engine::{builtin_rules, BuiltinRule};
use pivotforge::verify::{
    verify_constancy, verify_degree, verify_equivalence, verify_gradient, verify_iteration_count, verify_maximum,
    verify_padding, verify_path, verify_sat, verify_sink, verify_uniqueness, verify_uso, CheckReport,
};
use pivotforge::Execution;

const SEED: u64 = 2024;

fn exec() -> Execution {
    Execution::default()
}

/// Runs every report producer, prints one summary line, and asserts.
fn criterion(number: u8, title: &str, reports: impl IntoIterator<Item = CheckReport>) {
    let start = Instant::now();
    let mut count = 0;
    let mut failures = Vec::new();
    for report in reports {
        count += 1;
        if !report.passed {
            failures.push(report);
        }
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let line = format!(
        "acceptance {number:>2} {verdict}: {title} ({count} checks, {} failed, {:.2?})",
        failures.len(),
        start.elapsed()
    );
    let _ = writeln!(std::io::stderr(), "{line}");
    for f in &failures {
        let _ = writeln!(
            std::io::stderr(),
            "    {f}\n    witness: {}",
            f.witness.clone().unwrap_or_default()
        );
    }
    assert!(failures.is_empty(), "{line}");
}

#[test]
fn criterion_01_iteration_count_for_every_rule() {
    criterion(
        1,
        "n=3..14, every built-in rule: 2^n-1 iterations, 2^n vertices, ends at e^n with value 2^n-1",
        (3..=14).flat_map(|n| {
            builtin_rules(SEED)
                .into_iter()
                .map(move |r| verify_iteration_count(n, r))
        }),
    );
}

#[test]
fn criterion_02_unique_improving_dimension() {
    criterion(
        2,
        "n=1..12: exactly one improving coordinate per non-optimal vertex, both characterizations agree",
        (1..=12).map(|n| verify_uniqueness(n, exec())),
    );
}

#[test]
fn criterion_03_closed_form_partials() {
    criterion(
        3,
        "n=1..10: closed-form vertex partials equal dual-number partials (and the gradient sweep)",
        (1..=10).map(|n| verify_gradient(n, exec())),
    );
}

#[test]
fn criterion_04_vertex_values_and_maximum() {
    criterion(
        4,
        "n=1..12: vertex values are a permutation of 0..2^n-1, unique maximizer e^n",
        (1..=12).map(|n| verify_maximum(n, exec(), SEED)),
    );
}

#[test]
fn criterion_05_gray_code_path() {
    criterion(
        5,
        "n=1..12: Hamiltonian path to e^n equal to the Gray code, the engine trajectory, and mirrored halves",
        (1..=12).map(verify_path),
    );
}

#[test]
fn criterion_06_partial_constant_along_edges() {
    criterion(
        6,
        "n=1..10: improving partial constant at 11 points on every improving edge; restriction is constant",
        (1..=10).map(|n| verify_constancy(n, exec())),
    );
}

#[test]
fn criterion_07_padding_preserves_count() {
    criterion(
        7,
        "padded (d,n) in {(4,16),(5,20),(8,16)}: 2^d-1 iterations under every rule",
        [(4, 16), (5, 20), (8, 16)]
            .into_iter()
            .flat_map(|(d, n)| builtin_rules(SEED).into_iter().map(move |r| verify_padding(d, n, r))),
    );
}

#[test]
fn criterion_08_simplex_active_set_equivalence() {
    criterion(
        8,
        "n=2..10, 100 seeded random linear objectives each: identical simplex and active-set vertex sequences",
        (2..=10).map(|n| verify_equivalence(n, 100, SEED + n as u64)),
    );
}

#[test]
fn criterion_09_unique_sink_and_decomposable() {
    criterion(
        9,
        "n=1..8: induced orientation is a USO, decomposable, combed in the highest free coordinate of every face",
        (1..=8).map(|n| verify_uso(n, exec())),
    );
}

#[test]
fn criterion_10_sink_finder() {
    criterion(
        10,
        "n=1..12: sink finder returns the brute-force maximizer e^n within 2n queries",
        (1..=12).map(|n| verify_sink(n, exec())),
    );
}

#[test]
fn criterion_11_sat_reduction() {
    criterion(
        11,
        "200 random CNFs (<=12 vars, <=20 clauses) + 20 edge cases: degree <= 3, vertex law, max 0 iff satisfiable",
        std::iter::once_with(|| verify_sat(12, 200, SEED, exec())),
    );
}

#[test]
fn criterion_12_expanded_degree() {
    criterion(
        12,
        "expanded F_n has total degree n for n in {1,3,...,8} and degree 3 for n=2",
        [1, 2, 3, 4, 5, 6, 7, 8].into_iter().map(verify_degree),
    );
}

#[test]
fn every_builtin_rule_is_exercised() {
    let names: Vec<&str> = builtin_rules(SEED).iter().map(BuiltinRule::name).collect();
    assert_eq!(names, ["lowest-index", "highest-index", "steepest", "seeded-random"]);
}
