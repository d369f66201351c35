//! Process discovery from event logs with uncertain data.
//!
//! Events may carry a set of possible activity labels, a timestamp interval
//! instead of a point in time, and an indeterminate flag marking events that
//! possibly never happened. The pipeline is:
//!
//! 1. [`io`] reads logs (JSON or the compact `<a,[{b,c},d],?e>` notation),
//! 2. [`graph`] builds a behavior graph per trace,
//! 3. [`udfg`] aggregates minimum/maximum frequencies into an uncertain
//!    directly-follows graph and slices it,
//! 4. [`discovery`] mines a process tree and converts it to a Petri net,
//! 5. [`export`] renders any of the above.
//!
//! [`oracle`] enumerates realizations of small traces and serves as ground
//! truth in tests.
//!
//! ```
//! use udmine_core::{build_udfg, discover_tree, io::parse_compact_log, slice, SliceParams};
//!
//! let log = parse_compact_log("<a,b,c>^3\n<a,?b,c>\n").unwrap();
//! let udfg = build_udfg(&log).unwrap();
//! let view = slice(&udfg, &SliceParams::default());
//! let tree = discover_tree(&view).unwrap();
//! assert!(tree.accepts(&["a", "c"]));
//! ```

pub mod dfg;
pub mod discovery;
pub mod export;
pub mod graph;
pub mod io;
pub mod model;
pub mod oracle;
pub mod udfg;

pub use dfg::{DfgView, ViewError};
pub use discovery::{discover_tree, tree_to_petri, PetriNet, ProcessTree};
pub use graph::{build_behavior_graph, BehaviorGraph, GraphError};
pub use io::{LogError, LogFormat};
pub use model::{
    validate, ActivityLabel, Timestamp, UncertainEvent, UncertainLog, UncertainTrace, Violation,
    ViolationKind,
};
pub use udfg::{build_udfg, slice, FreqRange, SliceParams, Udfg};
