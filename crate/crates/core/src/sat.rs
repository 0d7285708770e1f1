//! CNF formulas, a DIMACS reader, and the clause-product reduction to a
//! polynomial of degree at most 3 that is nonpositive on the cube and zero
//! exactly at satisfying assignments.

use std::fmt;

use num_traits::One;
use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

use crate::exact::{CheckedInt, MultiPoly, Rational};
use crate::exec::Execution;

/// Enumeration guard for the brute-force oracles.
pub const MAX_BRUTE_FORCE_VARS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn holds(&self, assignment: u64) -> bool {
        let v = (assignment >> (self.var - 1)) & 1 == 1;
        v != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬z{}", self.var)
        } else {
            write!(f, "z{}", self.var)
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("clause {clause} is empty")]
    EmptyClause { clause: usize },
    #[error("clause {clause} has {len} literals (max 3)")]
    TooLong { clause: usize, len: usize },
    #[error("clause {clause} mentions variable {var} twice")]
    DuplicateVariable { clause: usize, var: usize },
    #[error("clause {clause} uses variable {var} outside 1..={n_vars}")]
    VariableOutOfRange { clause: usize, var: usize, n_vars: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(n_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        for (j, c) in clauses.iter().enumerate() {
            let clause = j + 1;
            if c.is_empty() {
                return Err(CnfError::EmptyClause { clause });
            }
            if c.len() > 3 {
                return Err(CnfError::TooLong { clause, len: c.len() });
            }
            for (i, l) in c.iter().enumerate() {
                if l.var == 0 || l.var > n_vars {
                    return Err(CnfError::VariableOutOfRange {
                        clause,
                        var: l.var,
                        n_vars,
                    });
                }
                if c[..i].iter().any(|m| m.var == l.var) {
                    return Err(CnfError::DuplicateVariable { clause, var: l.var });
                }
            }
        }
        Ok(CnfFormula { n_vars, clauses })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn violated_clauses(&self, assignment: u64) -> usize {
        self.clauses
            .iter()
            .filter(|c| !c.iter().any(|l| l.holds(assignment)))
            .count()
    }

    pub fn is_satisfied_by(&self, assignment: u64) -> bool {
        self.violated_clauses(assignment) == 0
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let v = l.var as i64;
                s.push_str(&format!("{} ", if l.negated { -v } else { v }));
            }
            s.push_str("0\n");
        }
        s
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Parses DIMACS CNF. Comment lines start with `c`; a single
/// `p cnf <vars> <clauses>` header precedes the clauses; each clause is a
/// run of signed literals ended by `0` and may span lines.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None; // (vars, clauses, line)
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_pos = (1, 1);

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let tokens = tokenize(line);
        if trimmed.starts_with('p') {
            let col = tokens[0].0;
            if header.is_some() {
                return Err(perr(lineno, col, "duplicate problem line"));
            }
            let words: Vec<&str> = tokens.iter().map(|t| t.1).collect();
            if words.len() != 4 || words[0] != "p" || words[1] != "cnf" {
                return Err(perr(lineno, col, "expected 'p cnf <variables> <clauses>'"));
            }
            let n = words[2]
                .parse::<usize>()
                .map_err(|_| perr(lineno, tokens[2].0, format!("invalid variable count {:?}", words[2])))?;
            let m = words[3]
                .parse::<usize>()
                .map_err(|_| perr(lineno, tokens[3].0, format!("invalid clause count {:?}", words[3])))?;
            header = Some((n, m, lineno));
            continue;
        }
        let Some((n_vars, _, _)) = header else {
            return Err(perr(lineno, tokens[0].0, "clause data before 'p cnf' header"));
        };
        for (col, tok) in tokens {
            last_pos = (lineno, col + tok.len());
            let lit: i64 = tok
                .parse()
                .map_err(|_| perr(lineno, col, format!("invalid literal {tok:?}")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(perr(lineno, col, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > n_vars {
                return Err(perr(lineno, col, format!("variable {var} out of range 1..={n_vars}")));
            }
            if current.iter().any(|l| l.var == var) {
                return Err(perr(lineno, col, format!("variable {var} repeated in clause")));
            }
            if current.len() == 3 {
                return Err(perr(lineno, col, "clause has more than 3 literals"));
            }
            current.push(Literal { var, negated: lit < 0 });
        }
    }

    let Some((n_vars, m, header_line)) = header else {
        return Err(perr(last_pos.0, 1, "missing 'p cnf' header"));
    };
    if !current.is_empty() {
        return Err(perr(last_pos.0, last_pos.1, "unterminated clause (missing 0)"));
    }
    if clauses.len() != m {
        return Err(perr(
            header_line,
            1,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    Ok(CnfFormula::new(n_vars, clauses).expect("parser enforces clause invariants"))
}

/// `(1-based column, token)` pairs.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((line[..s].chars().count() + 1, &line[s..]));
    }
    out
}

/// `f(x) = −Σ_j Π_{z_k ∈ C_j}(1 − x_k)·Π_{¬z_ℓ ∈ C_j} x_ℓ`.
pub fn reduce(formula: &CnfFormula) -> MultiPoly {
    let n = formula.n_vars();
    let one = || MultiPoly::constant(n, Rational::one());
    formula.clauses().iter().fold(MultiPoly::zero(n), |acc, clause| {
        let term = clause.iter().fold(one(), |t, l| {
            let factor = if l.negated {
                MultiPoly::var(n, l.var)
            } else {
                one() - MultiPoly::var(n, l.var)
            };
            t * factor
        });
        acc - term
    })
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{n} variables exceeds the enumeration guard of {max}")]
pub struct TooLarge {
    pub n: usize,
    pub max: usize,
}

fn guard(n: usize) -> Result<(), TooLarge> {
    if n > MAX_BRUTE_FORCE_VARS {
        Err(TooLarge {
            n,
            max: MAX_BRUTE_FORCE_VARS,
        })
    } else {
        Ok(())
    }
}

const CHUNK: u64 = 1 << 12;

/// `p` at the cube vertex `id`, in machine integers when possible.
pub fn eval_at_vertex(p: &MultiPoly, id: u64) -> Rational {
    let n = p.nvars();
    let bits = |i: usize| ((id >> i) & 1) as i64;
    if n > 0 {
        let x: Vec<CheckedInt> = (0..n).map(|i| CheckedInt(Some(bits(i).into()))).collect();
        if let Some(v) = p.eval(&x).to_rational() {
            return v;
        }
    }
    let x: Vec<Rational> = (0..n).map(|i| Rational::from_integer(bits(i).into())).collect();
    p.eval_rational(&x)
}

/// Maximum of `p` over `{0,1}^n` and the smallest vertex id attaining it.
pub fn brute_force_max(p: &MultiPoly, exec: Execution) -> Result<(Rational, u64), TooLarge> {
    let n = p.nvars();
    guard(n)?;
    let total = 1u64 << n;
    let chunks = total.div_ceil(CHUNK);
    let best = exec.map(0..chunks, |c| {
        let mut best: Option<(Rational, u64)> = None;
        for id in c * CHUNK..((c + 1) * CHUNK).min(total) {
            let v = eval_at_vertex(p, id);
            if best.as_ref().is_none_or(|(b, _)| &v > b) {
                best = Some((v, id));
            }
        }
        best.expect("nonempty chunk")
    });
    Ok(best
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("at least one vertex"))
}

/// Smallest satisfying assignment id, if any.
pub fn brute_force_sat(formula: &CnfFormula, exec: Execution) -> Result<Option<u64>, TooLarge> {
    guard(formula.n_vars())?;
    Ok(exec.find_first(0..1u64 << formula.n_vars(), |id| {
        formula.is_satisfied_by(id).then_some(id)
    }))
}

/// A random formula with `1..=max_vars` variables and `0..=max_clauses`
/// clauses of 1 to 3 distinct variables each.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, max_vars: usize, max_clauses: usize) -> CnfFormula {
    assert!(max_vars >= 1);
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let len = rng.gen_range(1..=3.min(n));
            sample(rng, n, len)
                .into_iter()
                .map(|v| Literal {
                    var: v + 1,
                    negated: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).expect("generated clauses are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn x(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn parse_examples() {
        let f = parse_dimacs("p cnf 3 1\n1 -2 3 0").unwrap();
        assert_eq!(f.n_vars(), 3);
        assert_eq!(f.clauses(), &[vec![Literal::pos(1), Literal::neg(2), Literal::pos(3)]]);

        let f = parse_dimacs("c comment\np cnf 1 2\n1 0\n-1 0").unwrap();
        assert_eq!(f.clauses().len(), 2);

        let e = parse_dimacs("p cnf 2 1\n1 3 0").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn parse_clause_spanning_lines_and_whitespace() {
        let f = parse_dimacs("c x\n  p  cnf 3 2\n 1\n -2   0 3\n0\n").unwrap();
        assert_eq!(
            f.clauses(),
            &[vec![Literal::pos(1), Literal::neg(2)], vec![Literal::pos(3)]]
        );
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("p cnf x 1\n1 0", 1, "invalid variable count"),
            ("p dnf 1 1\n1 0", 1, "expected"),
            ("1 0\np cnf 1 1", 1, "before"),
            ("p cnf 2 1\n1 2", 2, "unterminated"),
            ("p cnf 2 1\n1 -1 0", 2, "repeated"),
            ("p cnf 4 1\n1 2 3 4 0", 2, "more than 3"),
            ("p cnf 2 2\n1 0", 1, "declares 2"),
            ("p cnf 2 1\n0", 2, "empty clause"),
            ("c only", 1, "missing"),
            ("p cnf 1 1\np cnf 1 1\n1 0", 2, "duplicate"),
            ("p cnf 2 1\n1 a 0", 2, "invalid literal"),
        ];
        for (text, line, msg) in cases {
            let e = parse_dimacs(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(msg), "{text:?}: {e}");
        }
    }

    #[test]
    fn reduce_examples() {
        let f = CnfFormula::new(3, vec![vec![Literal::pos(1), Literal::neg(2), Literal::pos(3)]]).unwrap();
        let p = reduce(&f);
        let n = 3;
        let one = || MultiPoly::constant(n, int(1));
        let expected = -((one() - MultiPoly::var(n, 1)) * MultiPoly::var(n, 2) * (one() - MultiPoly::var(n, 3)));
        assert_eq!(p, expected);
        assert_eq!(p.total_degree(), Some(3));

        let f = CnfFormula::new(1, vec![vec![Literal::pos(1)]]).unwrap();
        assert_eq!(reduce(&f).total_degree(), Some(1));

        let f = CnfFormula::new(1, vec![vec![Literal::pos(1)], vec![Literal::neg(1)]]).unwrap();
        assert_eq!(reduce(&f), MultiPoly::constant(1, int(-1)));
    }

    #[test]
    fn brute_force_examples() {
        let seq = Execution::Sequential;
        let f = CnfFormula::new(3, vec![vec![Literal::pos(1), Literal::neg(2), Literal::pos(3)]]).unwrap();
        let (max, arg) = brute_force_max(&reduce(&f), seq).unwrap();
        assert_eq!(max, int(0));
        assert!(f.is_satisfied_by(arg));
        assert_eq!(reduce(&f).eval_rational(&x(&[1, 0, 0])), int(0));

        let g = CnfFormula::new(1, vec![vec![Literal::pos(1)], vec![Literal::neg(1)]]).unwrap();
        assert_eq!(brute_force_max(&reduce(&g), seq).unwrap().0, int(-1));
        assert_eq!(brute_force_sat(&g, seq), Ok(None));

        assert_eq!(brute_force_max(&MultiPoly::zero(2), seq).unwrap().0, int(0));

        let w = brute_force_sat(&f, seq).unwrap().unwrap();
        assert!(f.is_satisfied_by(w));
        let empty = CnfFormula::new(2, vec![]).unwrap();
        assert_eq!(brute_force_sat(&empty, seq), Ok(Some(0)));
    }

    #[test]
    fn vertex_evaluation_paths_agree() {
        let f = CnfFormula::new(3, vec![vec![Literal::pos(1), Literal::neg(2)], vec![Literal::neg(3)]]).unwrap();
        let p = reduce(&f);
        for id in 0..8u64 {
            let xs: Vec<i64> = (0..3).map(|i| ((id >> i) & 1) as i64).collect();
            assert_eq!(eval_at_vertex(&p, id), p.eval_rational(&x(&xs)));
            assert_eq!(eval_at_vertex(&p, id), int(-(f.violated_clauses(id) as i64)));
        }
        assert_eq!(eval_at_vertex(&MultiPoly::constant(0, int(4)), 0), int(4));
    }

    #[test]
    fn random_formulas_are_valid_and_seeded() {
        use rand::SeedableRng;
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let f = random_formula(&mut a, 12, 20);
            assert_eq!(f, random_formula(&mut b, 12, 20));
            assert!(f.n_vars() <= 12 && f.clauses().len() <= 20);
        }
    }

    #[test]
    fn guard_rejects_large() {
        let f = CnfFormula::new(25, vec![]).unwrap();
        assert_eq!(
            brute_force_sat(&f, Execution::Sequential),
            Err(TooLarge { n: 25, max: 24 })
        );
    }

    #[test]
    fn formula_validation() {
        assert!(matches!(
            CnfFormula::new(2, vec![vec![]]),
            Err(CnfError::EmptyClause { .. })
        ));
        assert!(matches!(
            CnfFormula::new(2, vec![vec![Literal::pos(1), Literal::neg(1)]]),
            Err(CnfError::DuplicateVariable { .. })
        ));
    }

    #[test]
    fn dimacs_round_trip() {
        let f = CnfFormula::new(3, vec![vec![Literal::pos(1), Literal::neg(3)], vec![Literal::neg(2)]]).unwrap();
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}
