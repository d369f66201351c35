//! Process tree discovery and conversion to Petri nets.

mod miner;
mod petri;
mod tree;

pub use miner::{discover_tree, discover_tree_traced, CutKind, CutRecord};
pub use petri::{
    tree_to_petri, Arc, Marking, NetError, NodeRef, PetriNet, Place, Transition, WorkflowShape,
};
pub use tree::{ProcessTree, TreeError};
