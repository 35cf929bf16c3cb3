use crate::completion::{RecoveredSet, VertexSink};
use crate::graph::Graph;
use crate::ledger::{counter_bits, Register, WorkspaceLedger};
use crate::Result;

/// `(n - 1)/2 + (k - 1)/4`, the midpoint of the expected degrees of a
/// non-clique and a clique vertex.
pub fn degree_threshold(n: usize, k: usize) -> f64 {
    (n as f64 - 1.0) / 2.0 + (k as f64 - 1.0) / 4.0
}

/// Emits every vertex whose degree reaches [`degree_threshold`].
pub fn degree_count_recover<S>(g: &Graph, k: usize, ledger: &mut WorkspaceLedger, sink: &mut S) -> Result<RecoveredSet>
where
    S: VertexSink + ?Sized,
{
    let n = g.n();
    let threshold = degree_threshold(n, k);
    let w = counter_bits(n);
    let frame = ledger.open_frame(&[Register::new("v", w), Register::new("deg", w)]);
    let mut out = Vec::new();
    for v in 1..=n {
        if g.degree(v) as f64 >= threshold {
            sink.emit(v)?;
            out.push(v);
        }
    }
    ledger.close_frame(frame)?;
    Ok(RecoveredSet::from_vertices(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sample_planted, Seed, Vertex};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complete_and_empty() {
        for n in [8usize, 9, 40] {
            let mut sink = Vec::new();
            let all = degree_count_recover(&Graph::complete(n), n, &mut WorkspaceLedger::new(), &mut sink).unwrap();
            assert_eq!(all.len(), n);
            assert_eq!(sink, (1..=n).collect::<Vec<_>>());
            let none = degree_count_recover(&Graph::empty(n), 8, &mut WorkspaceLedger::new(), &mut Vec::new()).unwrap();
            assert!(none.is_empty());
        }
    }

    #[test]
    fn peak_is_two_counters() {
        let mut ledger = WorkspaceLedger::new();
        degree_count_recover(&Graph::complete(100), 10, &mut ledger, &mut Vec::new()).unwrap();
        assert_eq!(ledger.peak(), 2 * counter_bits(100));
    }

    proptest! {
        #[test]
        fn relabelling_commutes(n in 2usize..60, k in 1usize..30, seed in any::<u64>()) {
            let k = k.min(n);
            let inst = sample_planted(n, k, Seed(seed)).unwrap();
            let g = inst.graph();
            let mut perm: Vec<Vertex> = (1..=n).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
            // perm[i - 1] is the new label of vertex i
            let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).filter(|&(u, v)| g.is_adjacent(u, v));
            let relabelled = Graph::from_edges(n, edges.map(|(u, v)| (perm[u - 1], perm[v - 1]))).unwrap();
            let before = degree_count_recover(g, k, &mut WorkspaceLedger::new(), &mut Vec::new()).unwrap();
            let after = degree_count_recover(&relabelled, k, &mut WorkspaceLedger::new(), &mut Vec::new()).unwrap();
            let mapped = RecoveredSet::from_vertices(before.as_slice().iter().map(|&v| perm[v - 1]).collect());
            prop_assert_eq!(mapped, after);
        }
    }
}
