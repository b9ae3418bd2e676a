//! Causal influence analysis for threshold contagions on networks.
//!
//! Cascades are simulated on undirected graphs, causal activation chains are
//! traced back from every activated node, and node and tie importance are
//! accumulated across many seed sets. Experiments built on these counts
//! measure how directional the flow of a contagion becomes.

pub mod bridges;
pub mod causal;
pub mod cli;
pub mod contagion;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod rng;
pub mod seeding;
pub mod stats;

pub mod metrics;

pub use error::{Error, Result};
pub use graph::{Adjacency, Graph};
pub use rng::RngSeed;
