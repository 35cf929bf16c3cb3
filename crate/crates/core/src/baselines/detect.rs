use super::DetectionVerdict;
use crate::graph::Graph;
use crate::ledger::{counter_bits, Register, WorkspaceLedger};
use crate::{Error, Result};

/// `C(n,2)/2 + C(k,2)/4`, halfway between the expected edge counts under
/// the two hypotheses.
pub fn edge_count_threshold(n: usize, k: usize) -> f64 {
    let pairs = |m: usize| (m as f64) * (m as f64 - 1.0) / 2.0;
    pairs(n) / 2.0 + pairs(k) / 4.0
}

/// Counts edges and compares against [`edge_count_threshold`].
pub fn edge_count_detect(g: &Graph, k: usize, ledger: &mut WorkspaceLedger) -> Result<DetectionVerdict> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("clique size k = {k} must satisfy 1 <= k <= n = {n}")));
    }
    let w = counter_bits(n);
    let frame = ledger.open_frame(&[Register::new("u", w), Register::new("count", 2 * w)]);
    let mut count = 0u64;
    for u in 1..=n {
        count += upper_degree(g, u);
    }
    ledger.close_frame(frame)?;
    Ok(DetectionVerdict::from_statistic(count as f64, edge_count_threshold(n, k)))
}

/// Neighbours of `u` with a larger id.
fn upper_degree(g: &Graph, u: usize) -> u64 {
    // bit u - 1 is u itself, so the neighbours above u start at bit u
    let row = g.row(u);
    let (word, bit) = (u / 64, u % 64);
    if word >= row.len() {
        return 0;
    }
    let head = (row[word] >> bit).count_ones() as u64;
    head + row[word + 1..].iter().map(|w| w.count_ones() as u64).sum::<u64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::Hypothesis;
    use crate::graph::{sample_er, Seed};
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        let mut ledger = WorkspaceLedger::new();
        let full = edge_count_detect(&Graph::complete(4), 3, &mut ledger).unwrap();
        assert_eq!((full.statistic, full.threshold, full.verdict), (6.0, 3.75, Hypothesis::H1));
        let empty = edge_count_detect(&Graph::empty(4), 3, &mut ledger).unwrap();
        assert_eq!((empty.statistic, empty.verdict), (0.0, Hypothesis::H0));
        assert_eq!(ledger.peak(), 3 * counter_bits(4));
        assert!(edge_count_detect(&Graph::empty(4), 5, &mut ledger).is_err());
    }

    #[test]
    fn statistic_is_edge_count() {
        for (n, seed) in [(1usize, 0u64), (63, 1), (64, 2), (65, 3), (200, 4)] {
            let g = sample_er(n, Seed(seed)).unwrap();
            let v = edge_count_detect(&g, 1, &mut WorkspaceLedger::new()).unwrap();
            let brute =
                (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).filter(|&(u, v)| g.is_adjacent(u, v)).count();
            assert_eq!(v.statistic, brute as f64);
        }
    }

    proptest! {
        #[test]
        fn adding_an_edge_never_flips_h1_to_h0(
            n in 2usize..24,
            k in 1usize..24,
            edges in proptest::collection::vec((1usize..24, 1usize..24), 0..120),
            extra in (1usize..24, 1usize..24),
        ) {
            let k = k.min(n);
            let keep: Vec<_> = edges.into_iter().filter(|&(u, v)| u <= n && v <= n && u != v).collect();
            prop_assume!(extra.0 <= n && extra.1 <= n && extra.0 != extra.1);
            let before = Graph::from_edges(n, keep.iter().copied()).unwrap();
            let after = Graph::from_edges(n, keep.iter().copied().chain([extra])).unwrap();
            let a = edge_count_detect(&before, k, &mut WorkspaceLedger::new()).unwrap();
            let b = edge_count_detect(&after, k, &mut WorkspaceLedger::new()).unwrap();
            prop_assert!(b.statistic >= a.statistic);
            prop_assert!(!(a.is_h1() && !b.is_h1()));
        }
    }
}
