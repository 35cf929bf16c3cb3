//! Space-metered algorithms for the planted clique problem.
//!
//! The crate is organised around five pieces:
//!
//! * [`graph`]: bit-packed undirected graphs, Erdős–Rényi and planted-clique
//!   samplers, and the `PCG1` file format.
//! * [`ledger`]: register-level accounting of working space.
//! * [`filter`]: the dyadic block schedule and the recursive `V_t` membership
//!   filter, together with an iterative reference implementation.
//! * [`completion`]: small-space clique completion and the end-to-end
//!   recovery pipeline built on top of the filter.
//! * [`baselines`]: edge-count and exhaustive detection, degree-count and
//!   reduction-based recovery, and an exact maximum clique solver.
//!
//! [`harness`] ties these together into seeded Monte Carlo sweeps.

pub mod baselines;
pub mod completion;
mod error;
pub mod filter;
pub mod graph;
pub mod harness;
pub mod ledger;

pub use error::{Error, Result};
pub use graph::{sample_er, sample_planted, Graph, PlantedInstance, Seed, Vertex, VertexBits};
pub use ledger::{Register, WorkspaceLedger};
