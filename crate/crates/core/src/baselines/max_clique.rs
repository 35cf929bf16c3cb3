use crate::graph::{Graph, Vertex};
use crate::{Error, Result};

pub const MAX_CLIQUE_VERTICES: usize = 64;

/// A maximum clique, sorted. Among maximum cliques the lexicographically
/// smallest is returned. Limited to [`MAX_CLIQUE_VERTICES`] vertices.
pub fn max_clique(g: &Graph) -> Result<Vec<Vertex>> {
    let n = g.n();
    if n > MAX_CLIQUE_VERTICES {
        return Err(Error::InfeasibleScale(format!("exact max clique supports n <= {MAX_CLIQUE_VERTICES}, got {n}")));
    }
    let adj: Vec<u64> = (1..=n).map(|u| g.row(u).first().copied().unwrap_or(0)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Search { adj, best: Vec::new(), current: Vec::new() };
    search.expand(all);
    Ok(search.best.into_iter().map(|i| i + 1).collect())
}

struct Search {
    adj: Vec<u64>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search {
    // Candidates are all larger than the last member of `current`, and are
    // tried in increasing order, so cliques of equal size are met in
    // lexicographic order and only strictly larger ones replace `best`.
    fn expand(&mut self, mut candidates: u64) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        while candidates != 0 {
            if self.current.len() + colour_bound(&self.adj, candidates) <= self.best.len() {
                return;
            }
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            self.current.push(v);
            self.expand(candidates & self.adj[v]);
            self.current.pop();
        }
    }
}

/// Greedy colour classes of `set`; any clique in `set` has at most that many
/// vertices.
fn colour_bound(adj: &[u64], mut set: u64) -> usize {
    let mut colours = 0;
    while set != 0 {
        colours += 1;
        let mut free = set;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= !adj[v] & !(1u64 << v);
            set &= !(1u64 << v);
        }
    }
    colours
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sample_er, sample_planted, Seed};

    fn brute(g: &Graph) -> Vec<Vertex> {
        let n = g.n();
        let mut best: Vec<Vertex> = Vec::new();
        for mask in 0u32..(1 << n) {
            let set: Vec<Vertex> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            if g.is_clique(&set) && (set.len() > best.len() || (set.len() == best.len() && set < best)) {
                best = set;
            }
        }
        best
    }

    fn is_maximal(g: &Graph, c: &[Vertex]) -> bool {
        (1..=g.n()).filter(|v| !c.contains(v)).all(|v| c.iter().any(|&u| !g.is_adjacent(u, v)))
    }

    #[test]
    fn small_cases() {
        assert_eq!(max_clique(&Graph::empty(5)).unwrap(), vec![1]);
        assert_eq!(max_clique(&Graph::complete(5)).unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(max_clique(&Graph::complete(64)).unwrap().len(), 64);
        assert!(max_clique(&Graph::empty(0)).unwrap().is_empty());
        assert!(matches!(max_clique(&Graph::empty(65)), Err(Error::InfeasibleScale(_))));
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..200u64 {
            let n = 1 + (seed % 14) as usize;
            let g = sample_er(n, Seed(seed)).unwrap();
            let c = max_clique(&g).unwrap();
            assert_eq!(c, brute(&g), "seed {seed}");
            assert!(g.is_clique(&c) && is_maximal(&g, &c));
        }
    }

    #[test]
    fn finds_large_planted_cliques() {
        for seed in 0..20u64 {
            let inst = sample_planted(64, 20, Seed(seed)).unwrap();
            let c = max_clique(inst.graph()).unwrap();
            assert!(inst.graph().is_clique(&c) && is_maximal(inst.graph(), &c));
            assert_eq!(c, inst.clique());
        }
    }
}
