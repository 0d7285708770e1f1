//! Mechanical certification of the structural claims about the worst-case
//! family, the engine, and the SAT gadget. Every check returns a
//! [`CheckReport`]; failures carry a JSON witness pinpointing the offending
//! vertex, face, objective or formula.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::boxprog::{id_to_bits, AxisDirection, BoxProgram, Point, Sign};
use crate::engine::{active_set_run, default_max_iter, equivalence_check, BuiltinRule, LowestIndex, Outcome};
use crate::exact::{int, rat, to_pq, Rational};
use crate::exec::Execution;
use crate::objectives::{
    expand, gradient_sweep, pad, partial_closed_form, partial_dual, restriction_by_substitution, LinearObjective,
    LowerBoundPolynomial, ObjectiveOracle,
};
use crate::sat::{self, brute_force_max, brute_force_sat, eval_at_vertex, CnfFormula, Literal};
use crate::structure::{
    check_decomposable, check_uso, combed_dimension, hamiltonian_path, improving_dimension, induce_orientation_with,
    reflected_gray_code, sink_find_decomposable, unit_vector_id, Face,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    fn pass(check: &str, claim: &str, detail: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            claim: claim.into(),
            passed: true,
            detail: detail.into(),
            witness: None,
        }
    }

    fn fail(check: &str, claim: &str, detail: impl Into<String>, witness: Value) -> Self {
        CheckReport {
            check: check.into(),
            claim: claim.into(),
            passed: false,
            detail: detail.into(),
            witness: Some(witness),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.check, self.detail)
    }
}

/// The checks exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Uniqueness,
    Gradient,
    Path,
    Constancy,
    Equivalence,
    Uso,
    Sink,
    Sat,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Uniqueness,
        Check::Gradient,
        Check::Path,
        Check::Constancy,
        Check::Equivalence,
        Check::Uso,
        Check::Sink,
        Check::Sat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Uniqueness => "uniqueness",
            Check::Gradient => "gradient",
            Check::Path => "path",
            Check::Constancy => "constancy",
            Check::Equivalence => "equivalence",
            Check::Uso => "uso",
            Check::Sink => "sink",
            Check::Sat => "sat",
        }
    }

    /// The statement the check certifies.
    pub fn claim(self) -> &'static str {
        match self {
            Check::Uniqueness => {
                "every vertex of the cube other than e^n has exactly one improving coordinate, the gradient-sign \
                 and prefix-product/suffix-parity characterizations agree, and e^n has none"
            }
            Check::Gradient => {
                "the closed-form vertex partial of F_n equals the forward-mode derivative of its recursion and \
                 the linear-time gradient sweep"
            }
            Check::Path => {
                "following the improving coordinate from the origin visits every vertex once and ends at e^n; the \
                 walk is the reflected binary Gray code, its second half mirrors its first, its i-th vertex has \
                 value i-1, and it is the active-set trajectory"
            }
            Check::Constancy => {
                "along the improving edge out of any non-optimal vertex the improving partial of F_n is constant, \
                 so the line search always reaches the next vertex"
            }
            Check::Equivalence => {
                "under a shared pivot rule the active-set method and the simplex method compute the same \
                 intermediate solutions on linear objectives"
            }
            Check::Uso => {
                "the orientation induced by F_n has exactly one sink in every face, is decomposable, and every \
                 face is combed in its highest free coordinate"
            }
            Check::Sink => {
                "fixing coordinates from highest to lowest toward the larger value finds the maximizer of F_n \
                 with at most 2n evaluations"
            }
            Check::Sat => {
                "the clause-product polynomial of a CNF formula has degree at most 3, equals minus the number of \
                 violated clauses at every vertex, and has maximum 0 exactly when the formula is satisfiable"
            }
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

fn vertex(n: usize, id: u64) -> Vec<Rational> {
    id_to_bits(id, n)
        .into_iter()
        .map(|b| if b { Rational::one() } else { Rational::zero() })
        .collect()
}

fn pq_list(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(to_pq).collect()
}

pub fn verify_uniqueness(n: usize, exec: Execution) -> CheckReport {
    let claim = Check::Uniqueness.claim();
    let top = unit_vector_id(n);
    let failure = exec.find_first(0..1u64 << n, |v| match improving_dimension(n, v) {
        Ok(Some(_)) if v != top => None,
        Ok(None) if v == top => None,
        Ok(k) => Some(json!({ "vertex": v, "improving": k })),
        Err(e) => Some(json!({ "vertex": v, "error": e.to_string() })),
    });
    match failure {
        None => CheckReport::pass("uniqueness", claim, format!("n={n}: {} vertices checked", 1u64 << n)),
        Some(w) => CheckReport::fail("uniqueness", claim, format!("n={n}: violated"), w),
    }
}

pub fn verify_gradient(n: usize, exec: Execution) -> CheckReport {
    let claim = Check::Gradient.claim();
    let failure = exec.find_first(0..1u64 << n, |v| {
        let x = vertex(n, v);
        let sweep = gradient_sweep(&x);
        (1..=n).find_map(|k| {
            let closed = partial_closed_form(k, &x).expect("vertex input");
            let dual = partial_dual(k, &x);
            (closed != dual || dual != sweep[k - 1]).then(|| {
                json!({
                    "vertex": v, "k": k, "closed_form": to_pq(&closed),
                    "dual": to_pq(&dual), "sweep": to_pq(&sweep[k - 1]),
                })
            })
        })
    });
    match failure {
        None => CheckReport::pass("gradient", claim, format!("n={n}: {} partials agree", n << n)),
        Some(w) => CheckReport::fail("gradient", claim, format!("n={n}: partials differ"), w),
    }
}

pub fn verify_path(n: usize) -> CheckReport {
    let claim = Check::Path.claim();
    let fail = |what: &str, w: Value| CheckReport::fail("path", claim, format!("n={n}: {what}"), w);
    let path = match hamiltonian_path(n) {
        Ok(p) => p,
        Err(e) => return fail("path construction failed", json!({ "error": e.to_string() })),
    };
    let vs = &path.vertices;
    if !path.is_hamiltonian_to_unit_vector() {
        return fail("not a Hamiltonian path ending at e^n", path.to_json());
    }
    let gray = reflected_gray_code(n);
    if let Some(i) = (0..vs.len()).find(|&i| vs[i] != gray[i]) {
        return fail(
            "differs from the reflected Gray code",
            json!({ "index": i, "path": vs[i], "gray": gray[i] }),
        );
    }
    let half = vs.len() / 2;
    let top = 1u64 << (n - 1);
    if let Some(i) = (0..half).find(|&i| vs[half + i] != vs[half - 1 - i] | top) {
        return fail(
            "second half does not mirror the first",
            json!({ "index": half + i, "vertex": vs[half + i] }),
        );
    }
    let f = LowerBoundPolynomial::new(n);
    if let Some(i) = (0..vs.len()).find(|&i| f.value(&vertex(n, vs[i])) != int(i as i64)) {
        let value = f.value(&vertex(n, vs[i]));
        return fail(
            "vertex value is not its position",
            json!({ "index": i, "vertex": vs[i], "value": to_pq(&value) }),
        );
    }
    let program = BoxProgram::unit(n);
    let run = active_set_run(&program, &f, &Point::origin(n), &mut LowestIndex, default_max_iter(n));
    match run.as_ref().ok().and_then(|t| t.vertex_sequence(&program)) {
        Some(seq) if &seq == vs => {}
        Some(seq) => {
            let i = (0..seq.len().max(vs.len()))
                .find(|&i| seq.get(i) != vs.get(i))
                .unwrap_or(0);
            return fail(
                "engine trajectory differs",
                json!({ "index": i, "engine": seq.get(i), "path": vs.get(i) }),
            );
        }
        None => {
            return fail(
                "engine run failed or left the vertex set",
                json!({ "run": format!("{:?}", run.err()) }),
            )
        }
    }
    CheckReport::pass("path", claim, format!("n={n}: {} vertices", vs.len()))
}

/// The 11 sample points `0, 1/10, …, 1`.
pub fn constancy_samples() -> Vec<Rational> {
    (0..=10).map(|i| rat(i, 10)).collect()
}

pub fn verify_constancy(n: usize, exec: Execution) -> CheckReport {
    let claim = Check::Constancy.claim();
    let top = unit_vector_id(n);
    let samples = constancy_samples();
    let failure = exec.find_first(0..1u64 << n, |v| {
        if v == top {
            return None;
        }
        let k = match improving_dimension(n, v) {
            Ok(Some(k)) => k,
            other => return Some(json!({ "vertex": v, "improving": format!("{other:?}") })),
        };
        let x = Point(vertex(n, v));
        let sign = if v >> (k - 1) & 1 == 0 { Sign::Plus } else { Sign::Minus };
        let d = AxisDirection::new(k, sign);
        let base = partial_dual(k, x.coords());
        for mu in &samples {
            let moved = partial_dual(k, x.step(d, mu).coords());
            if moved != base {
                return Some(json!({
                    "vertex": v, "k": k, "mu": to_pq(mu),
                    "partial_at_vertex": to_pq(&base), "partial_moved": to_pq(&moved),
                }));
            }
        }
        let g = restriction_by_substitution(x.coords(), d);
        if !g.is_constant() || g.coeff(0) != sign.as_rational() * &base {
            return Some(json!({ "vertex": v, "k": k, "restriction": g.to_string() }));
        }
        None
    });
    match failure {
        None => CheckReport::pass(
            "constancy",
            claim,
            format!("n={n}: {} edges x 11 points", (1u64 << n) - 1),
        ),
        Some(w) => CheckReport::fail("constancy", claim, format!("n={n}: partial changes along an edge"), w),
    }
}

/// A random linear objective whose `2^n` vertex values are pairwise distinct.
pub fn random_distinct_linear<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Option<Vec<Rational>> {
    for _ in 0..1000 {
        let c: Vec<Rational> = (0..n)
            .map(|_| rat(rng.gen_range(-1000..=1000), rng.gen_range(1..=9)))
            .collect();
        if has_distinct_vertex_values(&c) {
            return Some(c);
        }
    }
    None
}

fn has_distinct_vertex_values(c: &[Rational]) -> bool {
    let mut sums = vec![Rational::zero()];
    for ci in c {
        let shifted: Vec<Rational> = sums.iter().map(|s| s + ci).collect();
        sums.extend(shifted);
    }
    let total = sums.len();
    sums.sort();
    sums.dedup();
    sums.len() == total
}

/// `trials` seeded random objectives, each run from a random vertex under a
/// rule cycling through the built-in ones.
pub fn verify_equivalence(n: usize, trials: usize, seed: u64) -> CheckReport {
    let claim = Check::Equivalence.claim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let program = BoxProgram::unit(n);
    for trial in 0..trials {
        let Some(c) = random_distinct_linear(&mut rng, n) else {
            return CheckReport::fail(
                "equivalence",
                claim,
                format!("n={n}: could not sample distinct vertex values"),
                json!({ "trial": trial }),
            );
        };
        let start_id = rng.gen_range(0..1u64 << n);
        let rule = match trial % 4 {
            0 => BuiltinRule::LowestIndex,
            1 => BuiltinRule::HighestIndex,
            2 => BuiltinRule::Steepest,
            _ => BuiltinRule::SeededRandom(rng.gen()),
        };
        let start = program.vertex_from_id(start_id);
        let objective = LinearObjective::new(c.clone());
        let witness = |extra: Value| json!({ "trial": trial, "c": pq_list(&c), "start": start_id, "rule": rule.to_string(), "detail": extra });
        match equivalence_check(&program, &objective, &start, || rule.instantiate()) {
            Ok(eq) if eq.equivalent => {}
            Ok(eq) => {
                let ids = |ps: &[Point]| -> Vec<Value> {
                    ps.iter()
                        .map(|p| program.vertex_id(p).map_or(Value::Null, |v| json!(v)))
                        .collect()
                };
                return CheckReport::fail(
                    "equivalence",
                    claim,
                    format!("n={n}: trajectories diverge in trial {trial}"),
                    witness(json!({
                        "first_divergence": eq.first_divergence,
                        "active_set": ids(&eq.active_set_points),
                        "simplex": ids(&eq.simplex_points),
                    })),
                );
            }
            Err(e) => {
                return CheckReport::fail(
                    "equivalence",
                    claim,
                    format!("n={n}: engine error in trial {trial}"),
                    witness(json!(e.to_string())),
                )
            }
        }
    }
    CheckReport::pass("equivalence", claim, format!("n={n}: {trials} trials, seed {seed}"))
}

pub fn verify_uso(n: usize, exec: Execution) -> CheckReport {
    let claim = Check::Uso.claim();
    let fail = |what: &str, w: Value| CheckReport::fail("uso", claim, format!("n={n}: {what}"), w);
    let o = match induce_orientation_with(&LowerBoundPolynomial::new(n), exec) {
        Ok(o) => o,
        Err(e) => return fail("orientation undefined", json!({ "error": e.to_string() })),
    };
    if let Err(face) = check_uso(&o, exec) {
        return fail("face without a unique sink", json!({ "face": face.to_json() }));
    }
    if let Err(face) = check_decomposable(&o, exec) {
        return fail("face combed in no coordinate", json!({ "face": face.to_json() }));
    }
    let uncombed = exec.find_first(0..Face::count(n), |t| {
        let face = Face::from_index(n, t);
        let top = *face.support().last()?;
        let combed = combed_dimension(&o, &face);
        (!combed.contains(&top)).then(|| json!({ "face": face.to_json(), "combed": combed }))
    });
    if let Some(w) = uncombed {
        return fail("face not combed in its highest free coordinate", w);
    }
    CheckReport::pass("uso", claim, format!("n={n}: {} faces", Face::count(n)))
}

pub fn verify_sink(n: usize, exec: Execution) -> CheckReport {
    let claim = Check::Sink.claim();
    let f = LowerBoundPolynomial::new(n);
    let search = sink_find_decomposable(|v| f.value(&vertex(n, v)), n);
    let values = exec.map(0..1u64 << n, |v| f.value(&vertex(n, v)));
    let argmax = (0..values.len())
        .max_by(|&a, &b| values[a].cmp(&values[b]).then(b.cmp(&a)))
        .unwrap_or(0) as u64;
    if search.vertex != argmax || search.queries > 2 * n {
        return CheckReport::fail(
            "sink",
            claim,
            format!("n={n}: sink finder disagrees or over budget"),
            json!({ "found": search.vertex, "queries": search.queries, "argmax": argmax }),
        );
    }
    CheckReport::pass(
        "sink",
        claim,
        format!("n={n}: vertex {argmax} in {} queries", search.queries),
    )
}

/// Hand-built formulas covering empty, unit, tautological, contradictory,
/// unused-variable and maximum-size cases.
pub fn edge_case_formulas() -> Vec<CnfFormula> {
    let p = Literal::pos;
    let q = Literal::neg;
    let f = |n: usize, clauses: Vec<Vec<Literal>>| CnfFormula::new(n, clauses).expect("valid edge case");
    let all_signs = |skip: Option<usize>| {
        (0..8)
            .filter(|&m| Some(m) != skip)
            .map(|m: usize| {
                (1..=3)
                    .map(|v| Literal {
                        var: v,
                        negated: m >> (v - 1) & 1 == 1,
                    })
                    .collect()
            })
            .collect::<Vec<Vec<Literal>>>()
    };
    let odd_parity = vec![
        vec![p(1), p(2), p(3)],
        vec![p(1), q(2), q(3)],
        vec![q(1), p(2), q(3)],
        vec![q(1), q(2), p(3)],
    ];
    let even_parity = vec![
        vec![q(1), q(2), q(3)],
        vec![q(1), p(2), p(3)],
        vec![p(1), q(2), p(3)],
        vec![p(1), p(2), q(3)],
    ];
    let chain = |closed: bool| {
        let mut c = vec![vec![p(1)]];
        c.extend((1..5).map(|i| vec![q(i), p(i + 1)]));
        if closed {
            c.push(vec![q(5)]);
        }
        c
    };
    // pigeons i in 1..=3, holes j in 1..=2, variable 2(i-1)+j
    let pv = |i: usize, j: usize| 2 * (i - 1) + j;
    let mut pigeonhole: Vec<Vec<Literal>> = (1..=3).map(|i| vec![p(pv(i, 1)), p(pv(i, 2))]).collect();
    for j in 1..=2 {
        for i in 1..=3 {
            for k in i + 1..=3 {
                pigeonhole.push(vec![q(pv(i, j)), q(pv(k, j))]);
            }
        }
    }
    let triangle: Vec<Vec<Literal>> = [(1, 2), (2, 3), (1, 3)]
        .into_iter()
        .flat_map(|(a, b)| [vec![p(a), p(b)], vec![q(a), q(b)]])
        .collect();
    let wide: Vec<Vec<Literal>> = (0..20)
        .map(|j| {
            let a = j % 12 + 1;
            let b = (j * 5 + 3) % 12 + 1;
            let c = (j * 7 + 6) % 12 + 1;
            let mut vars = vec![a];
            for v in [b, c] {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            vars.into_iter()
                .enumerate()
                .map(|(i, v)| Literal {
                    var: v,
                    negated: (i + j) % 2 == 1,
                })
                .collect()
        })
        .collect();
    vec![
        f(1, vec![]),
        f(3, vec![]),
        f(1, vec![vec![p(1)]]),
        f(1, vec![vec![q(1)]]),
        f(1, vec![vec![p(1)], vec![q(1)]]),
        f(3, vec![vec![p(1), q(2), p(3)]]),
        f(3, all_signs(None)),
        f(3, all_signs(Some(5))),
        f(
            2,
            vec![vec![p(1), p(2)], vec![q(1), p(2)], vec![p(1), q(2)], vec![q(1), q(2)]],
        ),
        f(5, chain(true)),
        f(5, chain(false)),
        f(6, pigeonhole),
        f(1, vec![vec![p(1)], vec![p(1)]]),
        f(12, vec![vec![p(12)]]),
        f(12, (1..=12).map(|i| vec![q(i)]).collect()),
        f(12, (1..=12).map(|i| vec![p(i)]).collect()),
        f(3, odd_parity.clone()),
        f(3, odd_parity.into_iter().chain(even_parity).collect()),
        f(3, triangle),
        f(12, wide),
    ]
}

/// Checks one formula; `Err` carries the witness.
pub fn check_formula(formula: &CnfFormula, exec: Execution) -> Result<(), Value> {
    let poly = sat::reduce(formula);
    let witness =
        |what: &str, extra: Value| json!({ "violation": what, "dimacs": formula.to_dimacs(), "detail": extra });
    if poly.total_degree().is_some_and(|d| d > 3) {
        return Err(witness("degree", json!(poly.total_degree())));
    }
    let n = formula.n_vars();
    let bad_vertex = exec.find_first(0..1u64 << n, |v| {
        let value = eval_at_vertex(&poly, v);
        (value != int(-(formula.violated_clauses(v) as i64))).then(|| json!({ "vertex": v, "value": to_pq(&value) }))
    });
    if let Some(w) = bad_vertex {
        return Err(witness("vertex value", w));
    }
    let too_large = |e: sat::TooLarge| witness("size", json!(e.to_string()));
    let (max, argmax) = brute_force_max(&poly, exec).map_err(too_large)?;
    let satisfiable = brute_force_sat(formula, exec).map_err(too_large)?;
    if max.is_positive() || max.is_zero() != satisfiable.is_some() {
        return Err(witness(
            "max vs satisfiability",
            json!({ "max": to_pq(&max), "argmax": argmax, "sat": satisfiable }),
        ));
    }
    if let Some(w) = satisfiable.filter(|&w| !formula.is_satisfied_by(w)) {
        return Err(witness("sat witness", json!(w)));
    }
    Ok(())
}

/// `trials` random formulas with at most `max_vars` variables and 20
/// clauses, followed by the edge cases.
pub fn verify_sat(max_vars: usize, trials: usize, seed: u64, exec: Execution) -> CheckReport {
    let claim = Check::Sat.claim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = (0..trials)
        .map(|_| sat::random_formula(&mut rng, max_vars, 20))
        .collect::<Vec<_>>();
    let edge = edge_case_formulas();
    for (i, formula) in random.iter().chain(edge.iter()).enumerate() {
        if let Err(w) = check_formula(formula, exec) {
            return CheckReport::fail("sat", claim, format!("formula {i} violates the reduction law"), w);
        }
    }
    CheckReport::pass(
        "sat",
        claim,
        format!("{trials} random formulas (seed {seed}) and {} edge cases", edge.len()),
    )
}

/// `2^n − 1` passes from the origin, `2^n` distinct vertices, ending at
/// `e^n` with value `2^n − 1`.
pub fn verify_iteration_count(n: usize, rule: BuiltinRule) -> CheckReport {
    let claim = "the active-set method on F_n from the origin takes 2^n - 1 iterations under every pivot rule";
    let program = BoxProgram::unit(n);
    let f = LowerBoundPolynomial::new(n);
    let mut r = rule.instantiate();
    let expected = (1usize << n) - 1;
    let run = match active_set_run(&program, &f, &Point::origin(n), &mut r, default_max_iter(n)) {
        Ok(t) => t,
        Err(e) => {
            return CheckReport::fail(
                "iterations",
                claim,
                format!("n={n} {rule}: engine error"),
                json!(e.to_string()),
            )
        }
    };
    let distinct = run.vertex_sequence(&program).map(|mut s| {
        s.sort_unstable();
        s.dedup();
        s.len()
    });
    let final_id = program.vertex_id(&run.final_point).ok();
    let ok = run.outcome == Outcome::CriticalPoint
        && run.iterations() == expected
        && distinct == Some(1 << n)
        && final_id == Some(unit_vector_id(n))
        && run.final_value == int(expected as i64);
    let detail = format!(
        "n={n} rule={rule} iterations={} final={final_id:?} value={}",
        run.iterations(),
        to_pq(&run.final_value)
    );
    if ok {
        CheckReport::pass("iterations", claim, detail)
    } else {
        CheckReport::fail(
            "iterations",
            claim,
            detail,
            json!({ "distinct_vertices": distinct, "outcome": format!("{:?}", run.outcome) }),
        )
    }
}

/// Vertex values are exactly `{0, …, 2^n − 1}` with the maximum only at
/// `e^n`, and sampled interior points stay below it.
pub fn verify_maximum(n: usize, exec: Execution, seed: u64) -> CheckReport {
    let claim = "F_n takes each value 0..2^n-1 once on the cube vertices and is maximized only at e^n";
    let f = LowerBoundPolynomial::new(n);
    let values = exec.map(0..1u64 << n, |v| f.value(&vertex(n, v)));
    let top = int((1i64 << n) - 1);
    let mut seen = vec![false; 1 << n];
    for (v, val) in values.iter().enumerate() {
        let idx: Option<usize> = if val.is_integer() && !val.is_negative() && val <= &top {
            val.to_integer().try_into().ok()
        } else {
            None
        };
        match idx {
            Some(i) if !std::mem::replace(&mut seen[i], true) => {}
            _ => {
                return CheckReport::fail(
                    "maximum",
                    claim,
                    format!("n={n}: value out of range or repeated"),
                    json!({ "vertex": v, "value": to_pq(val) }),
                )
            }
        }
    }
    if values[unit_vector_id(n) as usize] != top {
        return CheckReport::fail("maximum", claim, format!("n={n}: e^n is not the maximizer"), json!({}));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let x: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(0..=97), 97)).collect();
        let v = f.value(&x);
        if v > top {
            return CheckReport::fail(
                "maximum",
                claim,
                format!("n={n}: interior point exceeds the vertex maximum"),
                json!({ "x": pq_list(&x), "value": to_pq(&v) }),
            );
        }
    }
    CheckReport::pass(
        "maximum",
        claim,
        format!("n={n}: values form a permutation, max {}", to_pq(&top)),
    )
}

/// `F_d` embedded in `n` dimensions still needs `2^d − 1` iterations.
pub fn verify_padding(d: usize, n: usize, rule: BuiltinRule) -> CheckReport {
    let claim = "embedding F_d in a higher-dimensional cube preserves the 2^d - 1 iteration count";
    let padded = match pad(LowerBoundPolynomial::new(d), n) {
        Ok(p) => p,
        Err(e) => return CheckReport::fail("padding", claim, format!("d={d} n={n}"), json!(e.to_string())),
    };
    let program = BoxProgram::unit(n);
    let run = active_set_run(
        &program,
        &padded,
        &Point::origin(n),
        &mut rule.instantiate(),
        default_max_iter(n),
    );
    let expected_final = unit_vector_id(d);
    match run {
        Ok(t) if t.iterations() == (1 << d) - 1 && program.vertex_id(&t.final_point) == Ok(expected_final) => {
            CheckReport::pass(
                "padding",
                claim,
                format!("d={d} n={n} rule={rule}: {} iterations", t.iterations()),
            )
        }
        Ok(t) => CheckReport::fail(
            "padding",
            claim,
            format!("d={d} n={n} rule={rule}: {} iterations", t.iterations()),
            json!({ "final": pq_list(t.final_point.coords()) }),
        ),
        Err(e) => CheckReport::fail(
            "padding",
            claim,
            format!("d={d} n={n}: engine error"),
            json!(e.to_string()),
        ),
    }
}

/// Total degree of the expanded polynomial: 3 for `n = 2`, `n` otherwise.
pub fn expected_degree(n: usize) -> u32 {
    if n == 2 {
        3
    } else {
        n as u32
    }
}

pub fn verify_degree(n: usize) -> CheckReport {
    let claim = "the expanded F_n has total degree n, except F_2 which has degree 3";
    let got = expand(n).total_degree();
    if got == Some(expected_degree(n)) {
        CheckReport::pass("degree", claim, format!("n={n}: degree={}", expected_degree(n)))
    } else {
        CheckReport::fail(
            "degree",
            claim,
            format!("n={n}: degree={got:?}"),
            json!({ "degree": got }),
        )
    }
}
