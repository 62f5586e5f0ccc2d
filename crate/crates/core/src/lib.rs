//! Maximum-independent-set heuristics built around a piecewise-linear
//! penalty objective whose global minimum encodes the MIS, plus
//! the machinery needed to make that practical on real graphs: LP-based
//! kernelization, Louvain community decomposition, conflict repair across
//! community boundaries, and local search.
//!
//! The crate also solves maximum clique and minimum vertex cover by the
//! standard reductions (complement graph / set complement).

pub mod dnn;
pub mod error;
mod exec;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pipeline;
pub mod reduce;
pub mod search;
pub mod train;

pub use error::Error;
pub use graph::{Graph, Subgraph, VertexSet};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
