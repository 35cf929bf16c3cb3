use super::bits::{get_bit, set_bit};
use super::Vertex;

/// Materialised vertex subset of `1..=n`, one bit per vertex.
///
/// Used by the reference filter, the tabulated completion path and test
/// oracles. The space-metered algorithms never hold one of these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexBits {
    universe: usize,
    words: Vec<u64>,
}

impl VertexBits {
    pub fn new(universe: usize) -> Self {
        Self { universe, words: vec![0; universe.div_ceil(64)] }
    }

    pub fn from_vertices(universe: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut s = Self::new(universe);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: Vertex) {
        assert!(v >= 1 && v <= self.universe, "vertex {v} outside 1..={}", self.universe);
        set_bit(&mut self.words, v - 1);
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.universe && get_bit(&self.words, v - 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// True iff every member of `self` is set in the bit row `row`.
    pub fn is_subset_of_row(&self, row: &[u64]) -> bool {
        self.words.iter().zip(row).all(|(s, r)| s & !r == 0)
    }

    /// Number of members whose bit is clear in `row`.
    pub fn missing_from_row(&self, row: &[u64]) -> usize {
        self.words.iter().zip(row).map(|(s, r)| (s & !r).count_ones() as usize).sum()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b + 1)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterates_in_order() {
        let s = VertexBits::from_vertices(130, [130, 1, 64, 65, 7]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 7, 64, 65, 130]);
        assert_eq!(s.len(), 5);
        assert!(s.contains(65));
        assert!(!s.contains(66));
        assert!(!s.contains(0));
        assert!(!s.contains(131));
    }
}
