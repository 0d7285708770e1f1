use serde::Serialize;

use crate::boxprog::{ActiveIndexSet, AxisDirection, BoxProgram, Point, Sign};
use crate::exact::{to_approx, to_pq, Rational};

use super::EngineError;

/// One pass of the main loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    pub index: usize,
    pub x_before: Point,
    pub active_before: ActiveIndexSet,
    pub direction: Option<AxisDirection>,
    /// Size of the max-overlap improving candidate set the rule chose from.
    pub candidate_count: usize,
    pub removed_row: Option<usize>,
    pub step: Option<Rational>,
    pub x_after: Point,
    pub added_row: Option<usize>,
    pub value_after: Rational,
    /// Set on the last record of a run that ended normally.
    pub stop_reason: Option<StopReason>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StopReason {
    CriticalPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    CriticalPoint,
    Error(EngineError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub objective: String,
    pub rule: String,
    pub start: Point,
    pub records: Vec<IterationRecord>,
    pub final_point: Point,
    pub final_active: ActiveIndexSet,
    pub final_value: Rational,
    pub outcome: Outcome,
}

impl Trajectory {
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    pub fn is_critical(&self) -> bool {
        self.outcome == Outcome::CriticalPoint
    }

    /// Start point followed by the point after every pass.
    pub fn points(&self) -> Vec<&Point> {
        std::iter::once(&self.start)
            .chain(self.records.iter().map(|r| &r.x_after))
            .collect()
    }

    /// Distinct consecutive points as vertex ids; `None` if any visited point
    /// is not a vertex. Passes that did not move are collapsed.
    pub fn vertex_sequence(&self, program: &BoxProgram) -> Option<Vec<u64>> {
        let mut ids: Vec<u64> = Vec::with_capacity(self.records.len() + 1);
        for p in self.points() {
            let id = program.vertex_id(p).ok()?;
            if ids.last() != Some(&id) {
                ids.push(id);
            }
        }
        Some(ids)
    }

    pub fn to_json(&self, program: &BoxProgram, approx: bool) -> serde_json::Value {
        let records: Vec<RecordJson> = self
            .records
            .iter()
            .map(|r| RecordJson {
                index: r.index,
                vertex_before: program.vertex_id(&r.x_before).ok(),
                vertex_after: program.vertex_id(&r.x_after).ok(),
                point_after: r.x_after.coords().iter().map(to_pq).collect(),
                active_before: r.active_before.to_vec(),
                direction: r.direction.map(|d| DirectionJson {
                    coord: d.coord,
                    sign: if d.sign == Sign::Plus { 1 } else { -1 },
                }),
                candidate_count: r.candidate_count,
                removed_row: r.removed_row,
                added_row: r.added_row,
                mu: r.step.as_ref().map(to_pq),
                value: to_pq(&r.value_after),
                value_approx: approx.then(|| to_approx(&r.value_after)),
                stop_reason: r.stop_reason,
            })
            .collect();
        let doc = TrajectoryJson {
            objective: &self.objective,
            rule: &self.rule,
            n: program.dim(),
            outcome: match &self.outcome {
                Outcome::CriticalPoint => "CRITICAL_POINT".to_string(),
                Outcome::Error(e) => format!("ERROR: {e}"),
            },
            iterations: self.iterations(),
            start_vertex: program.vertex_id(&self.start).ok(),
            final_vertex: program.vertex_id(&self.final_point).ok(),
            final_point: self.final_point.coords().iter().map(to_pq).collect(),
            final_active: self.final_active.to_vec(),
            final_value: to_pq(&self.final_value),
            final_value_approx: approx.then(|| to_approx(&self.final_value)),
            records,
        };
        serde_json::to_value(doc).expect("trajectory serializes")
    }

    /// `n,rule,iterations,final_vertex_id,final_value` (no header).
    pub fn summary_csv_row(&self, program: &BoxProgram, rule: &str) -> String {
        let vid = program
            .vertex_id(&self.final_point)
            .map(|v| v.to_string())
            .unwrap_or_default();
        format!(
            "{},{},{},{},{}",
            program.dim(),
            rule,
            self.iterations(),
            vid,
            to_pq(&self.final_value)
        )
    }
}

pub const SUMMARY_CSV_HEADER: &str = "n,rule,iterations,final_vertex_id,final_value";

#[derive(Serialize)]
struct DirectionJson {
    coord: usize,
    sign: i8,
}

#[derive(Serialize)]
struct RecordJson {
    index: usize,
    vertex_before: Option<u64>,
    vertex_after: Option<u64>,
    point_after: Vec<String>,
    active_before: Vec<usize>,
    direction: Option<DirectionJson>,
    candidate_count: usize,
    removed_row: Option<usize>,
    added_row: Option<usize>,
    mu: Option<String>,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_approx: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stop_reason: Option<StopReason>,
}

#[derive(Serialize)]
struct TrajectoryJson<'a> {
    objective: &'a str,
    rule: &'a str,
    n: usize,
    outcome: String,
    iterations: usize,
    start_vertex: Option<u64>,
    final_vertex: Option<u64>,
    final_point: Vec<String>,
    final_active: Vec<usize>,
    final_value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    final_value_approx: Option<String>,
    records: Vec<RecordJson>,
}
