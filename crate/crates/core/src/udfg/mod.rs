//! Uncertain directly-follows graphs.
//!
//! Nodes carry the summed minimum and maximum activity frequencies, arcs the
//! summed minimum and maximum directly-follows frequencies. An activity is a
//! node iff its maximum is positive; a relation is an arc iff its maximum is
//! positive.

mod matching;
mod measures;
mod slice;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::graph::GraphError;
use crate::model::{ActivityLabel, UncertainLog};

pub use matching::{max_bipartite_matching, max_general_matching};
pub use measures::{
    act_freq_max, act_freq_min, cand_max, cand_min, df_freq_max, df_freq_min, select_max,
    CandidatePair, FreqRange, TraceMeasures,
};
pub use slice::{parse_ratio, slice, Rational, SliceError, SliceParams};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Udfg {
    pub nodes: BTreeMap<ActivityLabel, FreqRange>,
    pub arcs: BTreeMap<(ActivityLabel, ActivityLabel), FreqRange>,
    /// Traces that certainly (`min`) or possibly (`max`) start with the activity.
    pub start: BTreeMap<ActivityLabel, FreqRange>,
    pub end: BTreeMap<ActivityLabel, FreqRange>,
}

impl From<TraceMeasures> for Udfg {
    fn from(m: TraceMeasures) -> Self {
        Udfg {
            nodes: m
                .activities
                .into_iter()
                .filter(|(_, r)| r.max > 0)
                .collect(),
            arcs: m.relations.into_iter().filter(|(_, r)| r.max > 0).collect(),
            start: m.start,
            end: m.end,
        }
    }
}

/// Builds the graph trace by trace.
pub fn build_udfg(log: &UncertainLog) -> Result<Udfg, GraphError> {
    let mut total = TraceMeasures::default();
    for trace in &log.traces {
        total.merge(TraceMeasures::compute(trace)?);
    }
    Ok(total.into())
}

/// Same result as [`build_udfg`], with traces measured in parallel.
pub fn build_udfg_parallel(log: &UncertainLog) -> Result<Udfg, GraphError> {
    let total = log
        .traces
        .par_iter()
        .map(TraceMeasures::compute)
        .try_reduce(TraceMeasures::default, |mut acc, m| {
            acc.merge(m);
            Ok(acc)
        })?;
    Ok(total.into())
}
