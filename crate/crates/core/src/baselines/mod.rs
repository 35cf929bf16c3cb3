//! Reference algorithms the filter pipeline is measured against.

mod degree;
mod detect;
mod exhaustive;
mod max_clique;
mod reduction;

pub use degree::{degree_count_recover, degree_threshold};
pub use detect::{edge_count_detect, edge_count_threshold};
pub use exhaustive::{exhaustive_detect, exhaustive_subset_size};
pub use max_clique::{max_clique, MAX_CLIQUE_VERTICES};
pub use reduction::{
    alon_reduction_recover, non_neighbour_subgraph, CliqueSizeDetector, ExhaustiveDetector, PlantDetector,
};

use std::fmt;

use serde::{Deserialize, Serialize};

/// `H0`: pure `G(n, 1/2)`. `H1`: a clique was planted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hypothesis {
    H0,
    H1,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::H0 => "H0",
            Hypothesis::H1 => "H1",
        })
    }
}

/// Outcome of a threshold test: `H1` iff `statistic >= threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectionVerdict {
    pub verdict: Hypothesis,
    pub statistic: f64,
    pub threshold: f64,
}

impl DetectionVerdict {
    pub fn from_statistic(statistic: f64, threshold: f64) -> Self {
        let verdict = if statistic >= threshold { Hypothesis::H1 } else { Hypothesis::H0 };
        Self { verdict, statistic, threshold }
    }

    pub fn is_h1(&self) -> bool {
        self.verdict == Hypothesis::H1
    }
}
