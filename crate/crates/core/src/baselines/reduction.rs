use super::{exhaustive_detect, max_clique};
use crate::completion::{RecoveredSet, VertexSink};
use crate::graph::{Graph, Vertex};
use crate::ledger::{counter_bits, Register, WorkspaceLedger};
use crate::Result;

/// Decides whether a graph carries planted structure.
pub trait PlantDetector {
    fn has_plant(&self, g: &Graph, ledger: &mut WorkspaceLedger) -> Result<bool>;
}

impl<F> PlantDetector for F
where
    F: Fn(&Graph) -> Result<bool>,
{
    fn has_plant(&self, g: &Graph, _ledger: &mut WorkspaceLedger) -> Result<bool> {
        self(g)
    }
}

/// Exact test `omega(G) >= threshold` via [`max_clique`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueSizeDetector {
    pub threshold: usize,
}

impl CliqueSizeDetector {
    /// Threshold `ceil(3 log2 n)` for the size `n` of the original graph.
    pub fn for_vertices(n: usize) -> Self {
        Self { threshold: (3.0 * (n as f64).log2()).ceil() as usize }
    }
}

impl PlantDetector for CliqueSizeDetector {
    fn has_plant(&self, g: &Graph, _ledger: &mut WorkspaceLedger) -> Result<bool> {
        Ok(max_clique(g)?.len() >= self.threshold)
    }
}

/// [`exhaustive_detect`] with fixed `epsilon` and cap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExhaustiveDetector {
    pub epsilon: f64,
    pub cap: usize,
}

impl PlantDetector for ExhaustiveDetector {
    fn has_plant(&self, g: &Graph, ledger: &mut WorkspaceLedger) -> Result<bool> {
        if g.n() == 0 {
            return Ok(false);
        }
        Ok(exhaustive_detect(g, self.epsilon, self.cap, ledger)?.is_h1())
    }
}

/// Vertices other than `v` that are not adjacent to `v`, ascending.
pub fn non_neighbour_subgraph(g: &Graph, v: Vertex) -> (Vec<Vertex>, Graph) {
    let keep: Vec<Vertex> = (1..=g.n()).filter(|&u| u != v && !g.is_adjacent(u, v)).collect();
    let sub = g.induced(&keep);
    (keep, sub)
}

/// Emits `v` iff the subgraph on the non-neighbours of `v` shows no planted
/// structure. A clique vertex has every other clique vertex as a neighbour,
/// so its non-neighbour subgraph is clique-free.
///
/// The subgraphs are materialised; only the loop counter is metered here,
/// plus whatever the detector declares.
pub fn alon_reduction_recover<D, S>(
    g: &Graph,
    detector: &D,
    ledger: &mut WorkspaceLedger,
    sink: &mut S,
) -> Result<RecoveredSet>
where
    D: PlantDetector + ?Sized,
    S: VertexSink + ?Sized,
{
    let n = g.n();
    let frame = ledger.open_frame(&[Register::new("v", counter_bits(n))]);
    let mut out = Vec::new();
    for v in 1..=n {
        let (_, sub) = non_neighbour_subgraph(g, v);
        if !detector.has_plant(&sub, ledger)? {
            sink.emit(v)?;
            out.push(v);
        }
    }
    ledger.close_frame(frame)?;
    Ok(RecoveredSet::from_vertices(out))
}
