//! The active-set method and the simplex method over box programs.
//!
//! Directions are signed unit axis vectors. On a box the feasible cone at any
//! point is a product of per-coordinate cones, so a feasible improving
//! direction exists iff a feasible improving axis direction exists.

mod rules;
mod trajectory;

pub use rules::{builtin_rules, BuiltinRule, HighestIndex, LowestIndex, PivotRule, SeededRandom, Steepest};
pub use trajectory::{IterationRecord, Outcome, StopReason, Trajectory, SUMMARY_CSV_HEADER};

use num_traits::Signed;
use thiserror::Error;

use crate::boxprog::{ActiveIndexSet, AxisDirection, BoxError, BoxProgram, Point, Sign};
use crate::exact::{first_nonpositive, NotRepresentable, Rational};
use crate::objectives::{LinearObjective, ObjectiveOracle};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("iteration limit of {0} passes exceeded")]
    MaxIterExceeded(usize),
    #[error(transparent)]
    NotRepresentable(#[from] NotRepresentable),
    #[error("invalid start point: {0}")]
    InvalidStart(BoxError),
    #[error("objective has dimension {objective}, program has {program}")]
    DimensionMismatch { objective: usize, program: usize },
}

/// Default pass limit `2^{n+1}`.
pub fn default_max_iter(n: usize) -> usize {
    1usize.checked_shl(n as u32 + 1).unwrap_or(usize::MAX)
}

/// Loop state between passes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineState {
    pub x: Point,
    pub active: ActiveIndexSet,
    pub iteration: usize,
}

/// A feasible improving axis direction at the current point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub direction: AxisDirection,
    /// `∇f(x)ᵀd`, strictly positive.
    pub slope: Rational,
    /// `|{i ∈ active : row_i·d = 0}|`.
    pub overlap: usize,
}

fn overlap(program: &BoxProgram, active: &ActiveIndexSet, d: AxisDirection) -> usize {
    active.iter().filter(|&r| program.row_dot(r, d) == 0).count()
}

/// Feasible improving axis directions at `state.x`, restricted to those with
/// maximum overlap with the active set. Ordered by `(coord, sign)`.
pub fn improving_candidates<O: ObjectiveOracle + ?Sized>(
    program: &BoxProgram,
    objective: &O,
    state: &EngineState,
) -> Vec<Candidate> {
    let eq = program.eq_set(&state.x).expect("engine state point is feasible");
    let gradient = objective.gradient(state.x.coords());
    let mut all = Vec::new();
    for k in 1..=program.dim() {
        let plus_ok = !eq.contains(program.upper_row(k));
        let minus_ok = !eq.contains(program.lower_row(k));
        if !plus_ok && !minus_ok {
            continue;
        }
        let partial = &gradient[k - 1];
        let sign = if partial.is_positive() && plus_ok {
            Sign::Plus
        } else if partial.is_negative() && minus_ok {
            Sign::Minus
        } else {
            continue;
        };
        let direction = AxisDirection::new(k, sign);
        all.push(Candidate {
            direction,
            slope: partial.abs(),
            overlap: overlap(program, &state.active, direction),
        });
    }
    let best = all.iter().map(|c| c.overlap).max().unwrap_or(0);
    all.retain(|c| c.overlap == best);
    all
}

fn check_dims<O: ObjectiveOracle + ?Sized>(program: &BoxProgram, objective: &O) -> Result<(), EngineError> {
    if objective.dim() != program.dim() {
        return Err(EngineError::DimensionMismatch {
            objective: objective.dim(),
            program: program.dim(),
        });
    }
    Ok(())
}

/// Runs the active-set method from `start` with `A = Eq(start)`.
///
/// Each pass picks a max-overlap improving direction, drops one active row
/// blocking it, and, once every remaining active row is orthogonal to it,
/// moves by `min(boundary step, first point where ∇fᵀd <= 0)` and adds one
/// newly tight row if the directional derivative is still positive there.
pub fn active_set_run<O, R>(
    program: &BoxProgram,
    objective: &O,
    start: &Point,
    rule: &mut R,
    max_iter: usize,
) -> Result<Trajectory, EngineError>
where
    O: ObjectiveOracle + ?Sized,
    R: PivotRule + ?Sized,
{
    check_dims(program, objective)?;
    let active = program.eq_set(start).map_err(EngineError::InvalidStart)?;
    let mut state = EngineState {
        x: start.clone(),
        active,
        iteration: 0,
    };
    let mut records: Vec<IterationRecord> = Vec::new();

    let outcome = loop {
        let candidates = improving_candidates(program, objective, &state);
        if candidates.is_empty() {
            break Outcome::CriticalPoint;
        }
        if records.len() >= max_iter {
            break Outcome::Error(EngineError::MaxIterExceeded(max_iter));
        }
        let d = candidates[rule.choose_direction(&candidates)].direction;
        let x_before = state.x.clone();
        let active_before = state.active.clone();

        let blocking: Vec<usize> = state.active.iter().filter(|&r| program.row_dot(r, d) < 0).collect();
        let mut removed_row = None;
        if !blocking.is_empty() {
            let row = blocking[rule.choose_removal(&blocking)];
            state.active.remove(row);
            removed_row = Some(row);
        }

        let mut step = None;
        let mut added_row = None;
        if state.active.iter().all(|r| program.row_dot(r, d) == 0) {
            let boundary = program.step_to_boundary(&state.x, d);
            let g = objective.edge_restriction(state.x.coords(), d);
            let stop = match first_nonpositive(&g, &boundary) {
                Ok(s) => s,
                Err(e) => break Outcome::Error(e.into()),
            };
            let mu = match stop {
                Some(s) if s < boundary => s,
                _ => boundary,
            };
            state.x = state.x.step(d, &mu);
            if g.eval(&mu).is_positive() {
                let eq = program.eq_set(&state.x).expect("step stays feasible");
                let fresh: Vec<usize> = eq.iter().filter(|&r| !state.active.contains(r)).collect();
                if !fresh.is_empty() {
                    let row = fresh[rule.choose_addition(&fresh)];
                    state.active.insert(row);
                    added_row = Some(row);
                }
            }
            step = Some(mu);
        }

        state.iteration += 1;
        records.push(IterationRecord {
            index: records.len() + 1,
            x_before,
            active_before,
            direction: Some(d),
            candidate_count: candidates.len(),
            removed_row,
            step,
            x_after: state.x.clone(),
            added_row,
            value_after: objective.value(state.x.coords()),
            stop_reason: None,
        });
    };

    Ok(finish(objective, rule.name(), start, records, state, outcome))
}

fn finish<O: ObjectiveOracle + ?Sized>(
    objective: &O,
    rule: String,
    start: &Point,
    mut records: Vec<IterationRecord>,
    state: EngineState,
    outcome: Outcome,
) -> Trajectory {
    if outcome == Outcome::CriticalPoint {
        if let Some(last) = records.last_mut() {
            last.stop_reason = Some(StopReason::CriticalPoint);
        }
    }
    Trajectory {
        objective: objective.describe(),
        rule,
        start: start.clone(),
        records,
        final_value: objective.value(state.x.coords()),
        final_point: state.x,
        final_active: state.active,
        outcome,
    }
}

/// Vertex-to-vertex simplex walk with basis `B = Eq(start)`.
pub fn simplex_run<R: PivotRule + ?Sized>(
    program: &BoxProgram,
    objective: &LinearObjective,
    start: &Point,
    rule: &mut R,
    max_iter: usize,
) -> Result<Trajectory, EngineError> {
    check_dims(program, objective)?;
    program.vertex_bits(start).map_err(EngineError::InvalidStart)?;
    let n = program.dim();
    let basis = program.eq_set(start).map_err(EngineError::InvalidStart)?;
    let mut state = EngineState {
        x: start.clone(),
        active: basis,
        iteration: 0,
    };
    let mut records = Vec::new();
    let c = objective.coefficients();

    let outcome = loop {
        // at a vertex every edge direction is an axis direction with overlap n - 1
        let candidates: Vec<Candidate> = program
            .edge_directions(&state.x)
            .expect("simplex stays on vertices")
            .into_iter()
            .filter_map(|e| {
                let slope = &c[e.axis.coord - 1] * e.axis.sign.as_rational();
                slope.is_positive().then(|| Candidate {
                    direction: e.axis,
                    slope,
                    overlap: overlap(program, &state.active, e.axis),
                })
            })
            .collect();
        debug_assert!(candidates.iter().all(|c| c.overlap == n - 1));
        if candidates.is_empty() {
            break Outcome::CriticalPoint;
        }
        if records.len() >= max_iter {
            break Outcome::Error(EngineError::MaxIterExceeded(max_iter));
        }
        let d = candidates[rule.choose_direction(&candidates)].direction;
        let x_before = state.x.clone();
        let active_before = state.active.clone();

        let leaving: Vec<usize> = state.active.iter().filter(|&r| program.row_dot(r, d) < 0).collect();
        debug_assert_eq!(leaving.len(), 1);
        state.active.remove(leaving[0]);

        let mu = program.step_to_boundary(&state.x, d);
        state.x = state.x.step(d, &mu);
        let eq = program.eq_set(&state.x).expect("step stays feasible");
        let entering: Vec<usize> = eq.iter().filter(|&r| !state.active.contains(r)).collect();
        debug_assert_eq!(entering.len(), 1);
        state.active.insert(entering[0]);

        state.iteration += 1;
        records.push(IterationRecord {
            index: records.len() + 1,
            x_before,
            active_before,
            direction: Some(d),
            candidate_count: candidates.len(),
            removed_row: Some(leaving[0]),
            step: Some(mu),
            x_after: state.x.clone(),
            added_row: Some(entering[0]),
            value_after: objective.value(state.x.coords()),
            stop_reason: None,
        });
    };

    Ok(finish(objective, rule.name(), start, records, state, outcome))
}

/// Result of running both methods on the same linear program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// First position where the visited point sequences differ.
    pub first_divergence: Option<usize>,
    pub active_set_points: Vec<Point>,
    pub simplex_points: Vec<Point>,
}

/// Runs the active-set method and the simplex method with fresh instances of
/// the same rule and compares the sequences of intermediate solutions.
pub fn equivalence_check<F, R>(
    program: &BoxProgram,
    c: &LinearObjective,
    start: &Point,
    make_rule: F,
) -> Result<Equivalence, EngineError>
where
    F: Fn() -> R,
    R: PivotRule,
{
    let max_iter = default_max_iter(program.dim());
    let a = active_set_run(program, c, start, &mut make_rule(), max_iter)?;
    let s = simplex_run(program, c, start, &mut make_rule(), max_iter)?;
    let pa: Vec<Point> = a.points().into_iter().cloned().collect();
    let ps: Vec<Point> = s.points().into_iter().cloned().collect();
    let first_divergence = (0..pa.len().max(ps.len())).find(|&i| pa.get(i) != ps.get(i));
    Ok(Equivalence {
        equivalent: first_divergence.is_none() && a.outcome == s.outcome,
        first_divergence,
        active_set_points: pa,
        simplex_points: ps,
    })
}

impl PivotRule for Box<dyn PivotRule + Send> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn choose_direction(&mut self, candidates: &[Candidate]) -> usize {
        (**self).choose_direction(candidates)
    }
    fn choose_removal(&mut self, rows: &[usize]) -> usize {
        (**self).choose_removal(rows)
    }
    fn choose_addition(&mut self, rows: &[usize]) -> usize {
        (**self).choose_addition(rows)
    }
}
