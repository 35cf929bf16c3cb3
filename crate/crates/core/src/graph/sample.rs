use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bits::RngBits;
use super::{Graph, PlantedInstance, Seed, Vertex};
use crate::{Error, Result};

// Stream 0 carries edge bits, stream 1 the clique draw. ChaCha is a counter
// mode generator, so the bit for pair index p is word p / 64 of stream 0
// regardless of how the graph is traversed.
const EDGE_STREAM: u64 = 0;
const CLIQUE_STREAM: u64 = 1;

fn stream(seed: Seed, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    rng.set_stream(id);
    rng
}

/// Samples `G(n, 1/2)`: every pair `{u, v}` is an edge iff bit
/// `pair_index(n, u, v)` of the seeded stream is set.
pub fn sample_er(n: usize, seed: Seed) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    Ok(Graph::from_upper_bits(n, &mut RngBits::new(stream(seed, EDGE_STREAM))))
}

/// Samples `G(n, 1/2, k)`: the `G(n, 1/2)` graph of the same seed with a
/// uniformly random `k`-subset made pairwise adjacent.
pub fn sample_planted(n: usize, k: usize, seed: Seed) -> Result<PlantedInstance> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("clique size k = {k} must satisfy 1 <= k <= n = {n}")));
    }
    let mut graph = sample_er(n, seed)?;
    let mut rng = stream(seed, CLIQUE_STREAM);
    let mut clique: Vec<Vertex> = index::sample(&mut rng, n, k).into_iter().map(|i| i + 1).collect();
    clique.sort_unstable();
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            graph.insert_edge(u, v);
        }
    }
    Ok(PlantedInstance { graph, clique })
}
