//! Unweighted directly-follows graph with start and end activities, the input
//! of tree discovery.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::ActivityLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ViewError {
    #[error("edge ({0}, {1}) has an endpoint outside the activity set")]
    DanglingEdge(ActivityLabel, ActivityLabel),
    #[error("start activity {0} is not in the activity set")]
    UnknownStart(ActivityLabel),
    #[error("end activity {0} is not in the activity set")]
    UnknownEnd(ActivityLabel),
    #[error("non-empty view without start or end activities")]
    MissingBoundary,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DfgView {
    pub activities: BTreeSet<ActivityLabel>,
    pub edges: BTreeSet<(ActivityLabel, ActivityLabel)>,
    pub start: BTreeSet<ActivityLabel>,
    pub end: BTreeSet<ActivityLabel>,
}

impl DfgView {
    /// Convenience constructor from string slices; the result is validated.
    pub fn from_parts(
        activities: &[&str],
        edges: &[(&str, &str)],
        start: &[&str],
        end: &[&str],
    ) -> Result<Self, ViewError> {
        let set = |xs: &[&str]| xs.iter().map(|&x| ActivityLabel::new(x)).collect();
        let view = DfgView {
            activities: set(activities),
            edges: edges
                .iter()
                .map(|&(a, b)| (ActivityLabel::new(a), ActivityLabel::new(b)))
                .collect(),
            start: set(start),
            end: set(end),
        };
        view.validate()?;
        Ok(view)
    }

    pub fn validate(&self) -> Result<(), ViewError> {
        for (a, b) in &self.edges {
            if !self.activities.contains(a) || !self.activities.contains(b) {
                return Err(ViewError::DanglingEdge(a.clone(), b.clone()));
            }
        }
        if let Some(a) = self.start.difference(&self.activities).next() {
            return Err(ViewError::UnknownStart(a.clone()));
        }
        if let Some(a) = self.end.difference(&self.activities).next() {
            return Err(ViewError::UnknownEnd(a.clone()));
        }
        if !self.activities.is_empty() && (self.start.is_empty() || self.end.is_empty()) {
            return Err(ViewError::MissingBoundary);
        }
        Ok(())
    }

    pub fn has_edge(&self, a: &ActivityLabel, b: &ActivityLabel) -> bool {
        // BTreeSet<(K, K)> cannot be probed with borrowed keys
        self.edges.contains(&(a.clone(), b.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_views() {
        assert!(matches!(
            DfgView::from_parts(&["a"], &[("a", "b")], &["a"], &["a"]),
            Err(ViewError::DanglingEdge(..))
        ));
        assert!(matches!(
            DfgView::from_parts(&["a"], &[], &["b"], &["a"]),
            Err(ViewError::UnknownStart(_))
        ));
        assert!(matches!(
            DfgView::from_parts(&["a"], &[], &["a"], &["c"]),
            Err(ViewError::UnknownEnd(_))
        ));
        assert!(matches!(
            DfgView::from_parts(&["a"], &[], &[], &["a"]),
            Err(ViewError::MissingBoundary)
        ));
        assert!(DfgView::from_parts(&[], &[], &[], &[]).is_ok());
    }
}
