//! Clique completion from an implicit clique subset, and the recovery
//! pipeline that feeds it the filtered set `V_T`.

mod oracle;
mod pipeline;
mod sscc;

pub use oracle::{FilterOracle, MembershipOracle, SetOracle};
pub use pipeline::{
    pipeline_frame, pipeline_peak_bits, recover_large_clique, recover_with_schedule, space_bound, Execution,
    PipelineConfig, PipelineRun, DEFAULT_CONSTANT_C, SPACE_INTERCEPT_BITS, SPACE_SLOPE_BITS,
};
pub use sscc::{completion_threshold, sscc, sscc_frame, sscc_tabulated};

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::graph::Vertex;
use crate::Result;

/// Sorted, duplicate-free set of vertices written to the output stream.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RecoveredSet(Vec<Vertex>);

impl RecoveredSet {
    /// Sorts and deduplicates.
    pub fn from_vertices(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `(false positives, false negatives)` against a sorted ground truth.
    pub fn errors_against(&self, truth: &[Vertex]) -> (usize, usize) {
        let hits = self.0.iter().filter(|v| truth.binary_search(v).is_ok()).count();
        (self.0.len() - hits, truth.len() - hits)
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

/// Append-only destination for emitted vertex ids.
pub trait VertexSink {
    fn emit(&mut self, v: Vertex) -> Result<()>;
}

impl VertexSink for Vec<Vertex> {
    fn emit(&mut self, v: Vertex) -> Result<()> {
        self.push(v);
        Ok(())
    }
}

/// Discards everything.
pub struct NullSink;

impl VertexSink for NullSink {
    fn emit(&mut self, _v: Vertex) -> Result<()> {
        Ok(())
    }
}

/// Writes one id per line.
pub struct LineSink<W: Write>(pub W);

impl<W: Write> VertexSink for LineSink<W> {
    fn emit(&mut self, v: Vertex) -> Result<()> {
        writeln!(self.0, "{v}")?;
        Ok(())
    }
}

/// Forwards to an inner sink and keeps a copy of the emitted ids.
pub(crate) struct Tee<'a, S: ?Sized> {
    inner: &'a mut S,
    seen: Vec<Vertex>,
}

impl<'a, S: VertexSink + ?Sized> Tee<'a, S> {
    pub(crate) fn new(inner: &'a mut S) -> Self {
        Self { inner, seen: Vec::new() }
    }

    pub(crate) fn emit(&mut self, v: Vertex) -> Result<()> {
        self.seen.push(v);
        self.inner.emit(v)
    }

    pub(crate) fn finish(self) -> RecoveredSet {
        debug_assert!(self.seen.windows(2).all(|w| w[0] < w[1]));
        RecoveredSet::from_vertices(self.seen)
    }
}
