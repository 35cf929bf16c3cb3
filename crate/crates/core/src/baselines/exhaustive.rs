use super::DetectionVerdict;
use crate::graph::Graph;
use crate::ledger::{counter_bits, Register, WorkspaceLedger};
use crate::{Error, Result};

/// `s = ceil((2 + epsilon) log2 n)`, at least 1.
pub fn exhaustive_subset_size(n: usize, epsilon: f64) -> Result<usize> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must be finite and >= 0")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("graph must have at least one vertex".into()));
    }
    let s = ((2.0 + epsilon) * (n as f64).log2()).ceil();
    Ok((s as usize).max(1))
}

/// `H1` iff some `s`-subset of vertices is a clique, `s` from
/// [`exhaustive_subset_size`]. Subsets are enumerated in increasing order by
/// `s` nested counters; a prefix that is not a clique is not extended.
///
/// The statistic is the largest clique prefix reached, which is
/// `min(omega(G), s)`.
pub fn exhaustive_detect(
    g: &Graph,
    epsilon: f64,
    cap: usize,
    ledger: &mut WorkspaceLedger,
) -> Result<DetectionVerdict> {
    let n = g.n();
    let s = exhaustive_subset_size(n, epsilon)?;
    if s > cap {
        return Err(Error::InfeasibleScale(format!("exhaustive search over {s}-subsets exceeds the cap of {cap}")));
    }
    let w = counter_bits(n);
    let mut regs = vec![Register::new("depth", counter_bits(s)), Register::new("best", counter_bits(s))];
    regs.extend(std::iter::repeat_n(Register::new("c", w), s));
    let frame = ledger.open_frame(&regs);

    let mut c = vec![0usize; s];
    let mut depth = 0usize;
    let mut best = 0usize;
    'search: loop {
        // advance counter `depth` to its next candidate that extends the prefix
        let lo = if depth == 0 { 1 } else { c[depth - 1] + 1 };
        let mut next = if c[depth] < lo { lo } else { c[depth] + 1 };
        while next <= n && !c[..depth].iter().all(|&u| g.is_adjacent(u, next)) {
            next += 1;
        }
        if next <= n {
            c[depth] = next;
            depth += 1;
            best = best.max(depth);
            if depth == s {
                break 'search;
            }
            c[depth] = 0;
        } else {
            if depth == 0 {
                break 'search;
            }
            depth -= 1;
        }
    }
    ledger.close_frame(frame)?;
    Ok(DetectionVerdict::from_statistic(best as f64, s as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::max_clique;
    use crate::graph::{sample_er, sample_planted, Seed};

    #[test]
    fn subset_size() {
        assert_eq!(exhaustive_subset_size(4096, 0.1).unwrap(), 26);
        assert_eq!(exhaustive_subset_size(16, 0.5).unwrap(), 10);
        assert_eq!(exhaustive_subset_size(1, 0.0).unwrap(), 1);
        assert!(exhaustive_subset_size(16, -1.0).is_err());
        assert!(exhaustive_subset_size(16, f64::NAN).is_err());
    }

    #[test]
    fn cap_is_checked() {
        let err = exhaustive_detect(&Graph::empty(4096), 0.1, 12, &mut WorkspaceLedger::new()).unwrap_err();
        assert!(matches!(err, Error::InfeasibleScale(_)));
    }

    #[test]
    fn complete_and_empty() {
        let mut ledger = WorkspaceLedger::new();
        assert!(exhaustive_detect(&Graph::complete(16), 0.5, 16, &mut ledger).unwrap().is_h1());
        assert_eq!(ledger.peak(), 2 * counter_bits(10) + 10 * counter_bits(16));
        let empty = exhaustive_detect(&Graph::empty(16), 0.5, 16, &mut ledger).unwrap();
        assert!(!empty.is_h1());
        assert_eq!(empty.statistic, 1.0);
    }

    #[test]
    fn agrees_with_max_clique() {
        for seed in 0..300u64 {
            let n = 2 + (seed % 15) as usize;
            let eps = [0.0, 0.3, 1.0][(seed % 3) as usize];
            let g = if seed % 2 == 0 {
                sample_er(n, Seed(seed)).unwrap()
            } else {
                let k = 1 + (seed as usize / 2) % n;
                sample_planted(n, k, Seed(seed)).unwrap().into_parts().0
            };
            let s = exhaustive_subset_size(n, eps).unwrap();
            let omega = max_clique(&g).unwrap().len();
            let v = exhaustive_detect(&g, eps, 64, &mut WorkspaceLedger::new()).unwrap();
            assert_eq!(v.is_h1(), omega >= s, "seed {seed}");
            assert_eq!(v.statistic as usize, omega.min(s), "seed {seed}");
        }
    }
}
