//! Deterministic vertex connectivity.
//!
//! Exact global vertex connectivity for undirected graphs and vertex-weighted
//! digraphs, built from max-flow queries on small derived instances:
//! common-neighborhood clustering, kernel graphs, crossing families,
//! selectors, isolating cuts and terminal reduction. Gabow's gap-based
//! decision procedure and a brute-force oracle suite are included.

pub mod cnc;
pub mod config;
pub mod cut;
pub mod error;
pub mod gabow;
pub mod graph;
pub mod io;
pub mod isocut;
pub mod kernel;
pub mod maxflow;
pub mod oracle;
pub mod par;
pub mod pseudorandom;
pub mod sparsify;
pub mod stats;
pub mod unweighted;
pub mod weighted;

pub use config::Config;
pub use cut::{validate_cut, Connectivity, VertexCut};
pub use error::{Error, Result};
pub use graph::{Digraph, Graph, WeightedDigraph};
pub use stats::Ctx;
