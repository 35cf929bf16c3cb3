use crate::filter::{membership_peak_bits, FilterSchedule};
use crate::graph::{Graph, Vertex, VertexBits};
use crate::ledger::{counter_bits, Register, WorkspaceLedger};

/// Membership test for an implicit vertex set `S_C`.
///
/// Queries must be deterministic for a fixed graph. `declared_bits` is the
/// working space `s(n)` one query needs; the space is reused across queries.
pub trait MembershipOracle {
    fn declared_bits(&self) -> u64;

    /// Whether [`query`](Self::query) declares its own frames. When false the
    /// caller reserves `declared_bits` once for the whole run.
    fn meters_itself(&self) -> bool {
        false
    }

    fn query(&self, v: Vertex, ledger: &mut WorkspaceLedger) -> bool;
}

/// Oracle backed by an explicit set. Declares one vertex-id register per
/// member, the cost of holding the set as a list of ids.
#[derive(Clone, Debug)]
pub struct SetOracle {
    members: VertexBits,
    declared: u64,
}

impl SetOracle {
    pub fn new(universe: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let members = VertexBits::from_vertices(universe, vertices);
        let declared = (members.len() as u64 * counter_bits(universe)).max(1);
        Self { members, declared }
    }

    pub fn with_declared_bits(mut self, bits: u64) -> Self {
        self.declared = bits.max(1);
        self
    }

    pub fn members(&self) -> &VertexBits {
        &self.members
    }
}

impl MembershipOracle for SetOracle {
    fn declared_bits(&self) -> u64 {
        self.declared
    }

    #[inline]
    fn query(&self, v: Vertex, _ledger: &mut WorkspaceLedger) -> bool {
        self.members.contains(v)
    }
}

/// `v in V_T`: vertices outside `N_T` are rejected by a block check, the rest
/// go through the recursive membership filter.
#[derive(Clone, Debug)]
pub struct FilterOracle<'g> {
    graph: &'g Graph,
    schedule: FilterSchedule,
}

impl<'g> FilterOracle<'g> {
    pub fn new(graph: &'g Graph, schedule: FilterSchedule) -> Self {
        assert_eq!(graph.n(), schedule.n(), "schedule built for a different vertex count");
        Self { graph, schedule }
    }

    pub fn schedule(&self) -> &FilterSchedule {
        &self.schedule
    }

    /// Registers of the block check that wraps each query.
    pub fn frame(n: usize) -> [Register; 2] {
        let w = counter_bits(n);
        [Register::new("query", w), Register::new("block_bound", w)]
    }
}

impl MembershipOracle for FilterOracle<'_> {
    fn declared_bits(&self) -> u64 {
        let n = self.graph.n();
        Self::frame(n).iter().map(Register::bits).sum::<u64>() + membership_peak_bits(n, self.schedule.rounds())
    }

    fn meters_itself(&self) -> bool {
        true
    }

    fn query(&self, v: Vertex, ledger: &mut WorkspaceLedger) -> bool {
        let rounds = self.schedule.rounds();
        ledger.scoped(&Self::frame(self.graph.n()), |ledger| {
            self.schedule.in_block(rounds, v)
                && crate::filter::membership::member(self.graph, &self.schedule, rounds, v, ledger)
        })
    }
}
