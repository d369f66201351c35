//! Text renderings: DOT for every graph-like object, PNML for Petri nets and
//! the `op(child, ...)` notation for process trees.

mod dot;
mod pnml;

use thiserror::Error;

use crate::dfg::DfgView;
use crate::discovery::{NetError, PetriNet, ProcessTree};
use crate::graph::BehaviorGraph;
use crate::udfg::Udfg;

pub use dot::{dot_id, to_dot};
pub use pnml::{from_pnml, to_pnml, PnmlError};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Dot,
    Pnml,
    /// Process tree notation.
    Tree,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RenderOptions {
    pub format: OutputFormat,
    /// Print min/max frequencies on UDFG nodes and arcs.
    pub annotate: bool,
}

#[derive(Debug, Clone, Copy)]
pub enum Renderable<'a> {
    BehaviorGraph(&'a BehaviorGraph),
    Udfg(&'a Udfg),
    Slice(&'a DfgView),
    Tree(&'a ProcessTree),
    Net(&'a PetriNet),
}

impl Renderable<'_> {
    fn kind(&self) -> &'static str {
        match self {
            Renderable::BehaviorGraph(_) => "behavior graph",
            Renderable::Udfg(_) => "uncertain DFG",
            Renderable::Slice(_) => "DFG slice",
            Renderable::Tree(_) => "process tree",
            Renderable::Net(_) => "Petri net",
        }
    }
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("cannot render a {object} as {format}")]
    Unsupported {
        object: &'static str,
        format: &'static str,
    },
    #[error("not a workflow net: {0}")]
    NotWorkflow(#[from] NetError),
}

/// Renders `object` in the format selected by `opts`.
pub fn render(object: Renderable<'_>, opts: &RenderOptions) -> Result<String, ExportError> {
    match (opts.format, object) {
        (OutputFormat::Dot, _) => Ok(to_dot(object, opts)),
        (OutputFormat::Pnml, Renderable::Net(net)) => to_pnml(net),
        (OutputFormat::Tree, Renderable::Tree(tree)) => Ok(format!("{tree}\n")),
        (format, _) => Err(ExportError::Unsupported {
            object: object.kind(),
            format: match format {
                OutputFormat::Pnml => "PNML",
                _ => "tree notation",
            },
        }),
    }
}
