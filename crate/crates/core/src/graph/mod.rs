//! Undirected simple graphs on the vertex set `1..=n`.
//!
//! Adjacency is stored as one bit row per vertex, padded to whole 64-bit
//! words, so edge queries are a single bit test and degree or intersection
//! counts reduce to popcounts. The canonical on-disk layout (see [`format`])
//! is the upper triangle in lexicographic pair order.

pub(crate) mod bits;
pub mod format;
mod sample;
mod vertex_bits;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};
use bits::{get_bit, mask, or_bits, set_bit, BitPacker, BitSource};

pub use format::{read_graph, write_graph};
pub use sample::{sample_er, sample_planted};
pub use vertex_bits::VertexBits;

/// Vertex identifier, 1-based.
pub type Vertex = usize;

/// Seed of the counter-based edge stream.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed(value)
    }
}

/// Immutable undirected simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edge_count()).finish()
    }
}

/// Number of unordered pairs `C(n, 2)`.
pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{u, v}` (`u < v`, both 1-based) in lexicographic
/// pair order: `(u-1)*n - u*(u+1)/2 + v - 1`.
pub fn pair_index(n: usize, u: Vertex, v: Vertex) -> u64 {
    debug_assert!(1 <= u && u < v && v <= n);
    let (n, u, v) = (n as u64, u as u64, v as u64);
    (u - 1) * n + v - 1 - u * (u + 1) / 2
}

/// Ascending 1-based positions of the set bits of a row, or of its
/// complement within `1..=n`, with one optional vertex left out.
#[derive(Clone, Debug)]
pub struct Ones<'a> {
    words: &'a [u64],
    next_word: usize,
    base: usize,
    current: u64,
    invert: bool,
    n: usize,
    skip: Vertex,
}

impl<'a> Ones<'a> {
    fn new(words: &'a [u64], invert: bool, n: usize, skip: Vertex) -> Self {
        let mut it = Self { words, next_word: 0, base: 0, current: 0, invert, n, skip };
        it.load();
        it
    }

    #[inline]
    fn load(&mut self) -> bool {
        let Some(&w) = self.words.get(self.next_word) else { return false };
        let i = self.next_word;
        self.next_word += 1;
        self.base = i * 64;
        let mut x = if self.invert { !w & mask(self.n - self.base) } else { w };
        if self.skip != 0 && (self.skip - 1) >> 6 == i {
            x &= !(1u64 << ((self.skip - 1) & 63));
        }
        self.current = x;
        true
    }
}

impl Iterator for Ones<'_> {
    type Item = Vertex;

    #[inline]
    fn next(&mut self) -> Option<Vertex> {
        while self.current == 0 {
            if !self.load() {
                return None;
            }
        }
        let b = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.base + b + 1)
    }
}

impl Graph {
    fn blank(n: usize) -> Self {
        let stride = n.div_ceil(64);
        Self { n, stride, rows: vec![0; n * stride] }
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        Self::blank(n)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::blank(n);
        for u in 1..=n {
            let row = g.row_mut(u);
            for v in 1..=n {
                if v != u {
                    set_bit(row, v - 1);
                }
            }
        }
        g
    }

    /// Builds a graph from an explicit edge list. Self-loops and
    /// out-of-range endpoints are rejected; duplicate edges are harmless.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::blank(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Reads the upper triangle, row by row in lexicographic pair order, then
    /// mirrors it into the lower triangle.
    pub(crate) fn from_upper_bits(n: usize, src: &mut impl BitSource) -> Self {
        let mut g = Self::blank(n);
        for u in 1..n {
            let row = g.row_mut(u);
            // columns u+1..=n live at bit positions u..n-1
            let mut pos = u;
            while pos < n {
                let len = (n - pos).min(64);
                or_bits(row, pos, src.take(len), len);
                pos += len;
            }
        }
        g.mirror_upper();
        g
    }

    fn mirror_upper(&mut self) {
        let blocks = self.stride;
        let mut block = [0u64; 64];
        for rb in 0..blocks {
            for cb in rb..blocks {
                for (r, slot) in block.iter_mut().enumerate() {
                    let row = rb * 64 + r;
                    *slot = if row < self.n { self.rows[row * self.stride + cb] } else { 0 };
                }
                bits::transpose64(&mut block);
                for (c, word) in block.iter().enumerate() {
                    let row = cb * 64 + c;
                    if row < self.n && *word != 0 {
                        self.rows[row * self.stride + rb] |= *word;
                    }
                }
            }
        }
    }

    /// Appends the upper triangle in lexicographic pair order.
    pub(crate) fn pack_upper(&self, out: &mut BitPacker) {
        for u in 1..self.n {
            let row = self.row(u);
            let mut pos = u;
            while pos < self.n {
                let len = (self.n - pos).min(64);
                out.push(bits::read_bits(row, pos, len), len);
                pos += len;
            }
        }
    }

    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v);
        set_bit(self.row_mut(u), v - 1);
        set_bit(self.row_mut(v), u - 1);
    }

    fn row_mut(&mut self, u: Vertex) -> &mut [u64] {
        let start = (u - 1) * self.stride;
        &mut self.rows[start..start + self.stride]
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Checked adjacency query.
    pub fn edge(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.is_adjacent(u, v))
    }

    /// Adjacency query without range checks (debug-asserted). `u == v`
    /// always yields `false`.
    #[inline]
    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        debug_assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        get_bit(&self.rows[(u - 1) * self.stride..], v - 1)
    }

    /// Neighbourhood of `u` as a bit row: bit `v - 1` is set iff `{u, v}` is
    /// an edge.
    #[inline]
    pub fn row(&self, u: Vertex) -> &[u64] {
        let start = (u - 1) * self.stride;
        &self.rows[start..start + self.stride]
    }

    /// Neighbours of `u`, ascending.
    pub fn neighbours(&self, u: Vertex) -> Ones<'_> {
        Ones::new(self.row(u), false, self.n, 0)
    }

    /// Vertices other than `u` that are not adjacent to `u`, ascending.
    pub fn non_neighbours(&self, u: Vertex) -> Ones<'_> {
        Ones::new(self.row(u), true, self.n, u)
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbours of `u` inside `set`.
    pub fn degree_into(&self, u: Vertex, set: &VertexBits) -> usize {
        debug_assert_eq!(set.universe(), self.n);
        self.row(u).iter().zip(set.words()).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> u64 {
        let twice: u64 = self.rows.iter().map(|w| w.count_ones() as u64).sum();
        twice / 2
    }

    /// True iff the vertices are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.is_adjacent(u, v)))
    }

    /// Subgraph induced on `vertices`, relabelled `1..=len` in the given
    /// order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut g = Graph::blank(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.is_adjacent(u, v) {
                    g.insert_edge(i + 1, j + 1);
                }
            }
        }
        g
    }
}

/// A graph together with the clique that was planted in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedInstance {
    graph: Graph,
    clique: Vec<Vertex>,
}

impl PlantedInstance {
    /// Pairs a graph with a ground-truth clique. The clique must be sorted,
    /// duplicate-free, non-empty, inside `1..=n` and pairwise adjacent.
    pub fn new(graph: Graph, clique: Vec<Vertex>) -> Result<Self> {
        validate_truth(&graph, &clique).map_err(Error::InvalidParameter)?;
        Ok(Self { graph, clique })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Sorted clique vertices.
    pub fn clique(&self) -> &[Vertex] {
        &self.clique
    }

    pub fn k(&self) -> usize {
        self.clique.len()
    }

    pub fn in_clique(&self, v: Vertex) -> bool {
        self.clique.binary_search(&v).is_ok()
    }

    pub fn into_parts(self) -> (Graph, Vec<Vertex>) {
        (self.graph, self.clique)
    }
}

pub(crate) fn validate_truth(graph: &Graph, clique: &[Vertex]) -> std::result::Result<(), String> {
    if clique.is_empty() {
        return Err("clique must be non-empty".into());
    }
    if clique.len() > graph.n() {
        return Err(format!("clique size {} exceeds n = {}", clique.len(), graph.n()));
    }
    if clique[0] == 0 || *clique.last().unwrap() > graph.n() {
        return Err(format!("clique vertices must lie in 1..={}", graph.n()));
    }
    if clique.windows(2).any(|w| w[0] >= w[1]) {
        return Err("clique vertices must be strictly increasing".into());
    }
    if !graph.is_clique(clique) {
        return Err("clique vertices are not pairwise adjacent".into());
    }
    Ok(())
}
