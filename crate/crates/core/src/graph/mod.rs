//! Behavior graphs and the graph algorithms behind them.

mod behavior;
mod bridges;
mod dag;

use thiserror::Error;

pub use behavior::{build_behavior_graph, order_graph, BehaviorGraph};
pub use bridges::bridge_edges;
pub use dag::Digraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has a cycle through vertices {cycle:?}")]
    Cycle { cycle: Vec<usize> },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
}
