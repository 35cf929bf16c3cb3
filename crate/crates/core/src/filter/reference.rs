use serde::{Deserialize, Serialize};

use super::membership::member;
use super::schedule::{clears_threshold, FilterSchedule};
use crate::graph::{Graph, Vertex, VertexBits};
use crate::ledger::WorkspaceLedger;
use crate::{Error, Result};

/// Explicit filtered sets `V_1..V_T`, each sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterSetTrace {
    #[serde(rename = "V")]
    sets: Vec<Vec<Vertex>>,
}

impl FilterSetTrace {
    pub fn rounds(&self) -> u32 {
        self.sets.len() as u32
    }

    /// `V_t`, `1 <= t <= rounds()`.
    pub fn set(&self, t: u32) -> &[Vertex] {
        &self.sets[t as usize - 1]
    }

    /// `V_T`.
    pub fn last(&self) -> &[Vertex] {
        self.sets.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, t: u32, v: Vertex) -> bool {
        self.set(t).binary_search(&v).is_ok()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Builds every `V_t` level by level with explicit sets.
pub fn reference_filter_trace(g: &Graph, schedule: &FilterSchedule) -> Result<FilterSetTrace> {
    if g.n() != schedule.n() {
        return Err(Error::InvalidParameter(format!(
            "graph has {} vertices but the schedule was built for {}",
            g.n(),
            schedule.n()
        )));
    }
    let mut sets: Vec<Vec<Vertex>> = Vec::with_capacity(schedule.rounds() as usize);
    sets.push(schedule.block(1).collect());
    for t in 2..=schedule.rounds() {
        let prev = sets.last().expect("V_1 present");
        let prev_bits = VertexBits::from_vertices(g.n(), prev.iter().copied());
        let shift = schedule.k_t(t + 2);
        let next =
            schedule.block(t).filter(|&v| clears_threshold(g.degree_into(v, &prev_bits), prev.len(), shift)).collect();
        sets.push(next);
    }
    Ok(FilterSetTrace { sets })
}

/// Result of comparing the recursive filter with the reference trace.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// `(t, v)` pairs compared, one per `v in N_t`, `t <= T`.
    pub pairs: usize,
    pub mismatches: Vec<(u32, Vertex)>,
    /// Largest ledger peak over all recursive queries.
    pub peak_bits: u64,
}

impl EquivalenceReport {
    pub fn is_exact(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Asks the recursive filter about every `(t, v)` with `v in N_t` and
/// compares with [`reference_filter_trace`].
pub fn check_against_reference(g: &Graph, schedule: &FilterSchedule) -> Result<EquivalenceReport> {
    let trace = reference_filter_trace(g, schedule)?;
    let mut report = EquivalenceReport::default();
    for t in 1..=schedule.rounds() {
        for v in schedule.block(t) {
            let mut ledger = WorkspaceLedger::new();
            let recursive = member(g, schedule, t, v, &mut ledger);
            report.pairs += 1;
            report.peak_bits = report.peak_bits.max(ledger.peak());
            if recursive != trace.contains(t, v) {
                report.mismatches.push((t, v));
            }
        }
    }
    Ok(report)
}
