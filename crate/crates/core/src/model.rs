//! Simple uncertain traces and logs.
//!
//! An [`UncertainEvent`] carries a non-empty set of possible activity labels,
//! a timestamp interval `[t_min, t_max]` and a determinacy flag. A trace is a
//! set of such events; no order is implied by storage, every ordering is
//! derived from timestamps.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use chrono::{DateTime, NaiveDate, NaiveDateTime, SecondsFormat, TimeZone, Utc};

/// Activity identifier. Equality is exact and case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActivityLabel(String);

impl ActivityLabel {
    pub fn new(name: impl Into<String>) -> Self {
        ActivityLabel(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ActivityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ActivityLabel {
    fn from(s: &str) -> Self {
        ActivityLabel(s.to_owned())
    }
}

impl From<String> for ActivityLabel {
    fn from(s: String) -> Self {
        ActivityLabel(s)
    }
}

impl std::borrow::Borrow<str> for ActivityLabel {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// A point in time. Comparison is exact.
///
/// Integer ticks map to whole seconds after the Unix epoch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp(DateTime<Utc>);

impl Timestamp {
    pub fn from_datetime(dt: DateTime<Utc>) -> Self {
        Timestamp(dt)
    }

    pub fn from_tick(tick: u32) -> Self {
        Timestamp(
            Utc.timestamp_opt(i64::from(tick), 0)
                .single()
                .expect("u32 ticks are always in range"),
        )
    }

    pub fn datetime(&self) -> DateTime<Utc> {
        self.0
    }

    /// Parses RFC 3339 or a zone-less ISO-8601 datetime (read as UTC).
    /// Minutes-only (`2011-12-02T00:00`) and date-only forms are accepted.
    pub fn parse_iso(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Ok(dt) = DateTime::parse_from_rfc3339(text) {
            return Some(Timestamp(dt.with_timezone(&Utc)));
        }
        const NAIVE_FORMATS: [&str; 4] = [
            "%Y-%m-%dT%H:%M:%S%.f",
            "%Y-%m-%dT%H:%M",
            "%Y-%m-%d %H:%M:%S%.f",
            "%Y-%m-%d %H:%M",
        ];
        for format in NAIVE_FORMATS {
            if let Ok(naive) = NaiveDateTime::parse_from_str(text, format) {
                return Some(Timestamp(naive.and_utc()));
            }
        }
        NaiveDate::parse_from_str(text, "%Y-%m-%d")
            .ok()
            .and_then(|d| d.and_hms_opt(0, 0, 0))
            .map(|naive| Timestamp(naive.and_utc()))
    }

    pub fn to_iso(&self) -> String {
        self.0.to_rfc3339_opts(SecondsFormat::AutoSi, true)
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_iso())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncertainEvent {
    pub id: String,
    pub activities: BTreeSet<ActivityLabel>,
    pub t_min: Timestamp,
    pub t_max: Timestamp,
    /// `true` for "!" (certainly happened), `false` for "?".
    pub determinate: bool,
}

impl UncertainEvent {
    pub fn new<I, L>(
        id: impl Into<String>,
        activities: I,
        t_min: Timestamp,
        t_max: Timestamp,
    ) -> Self
    where
        I: IntoIterator<Item = L>,
        L: Into<ActivityLabel>,
    {
        UncertainEvent {
            id: id.into(),
            activities: activities.into_iter().map(Into::into).collect(),
            t_min,
            t_max,
            determinate: true,
        }
    }

    pub fn indeterminate(mut self) -> Self {
        self.determinate = false;
        self
    }

    pub fn has_label(&self, a: &ActivityLabel) -> bool {
        self.activities.contains(a)
    }

    /// Label set is exactly `{a}`.
    pub fn is_singleton(&self, a: &ActivityLabel) -> bool {
        self.activities.len() == 1 && self.activities.contains(a)
    }

    pub fn is_precise(&self) -> bool {
        self.t_min == self.t_max
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncertainTrace {
    pub case_id: String,
    pub events: Vec<UncertainEvent>,
}

impl UncertainTrace {
    pub fn new(case_id: impl Into<String>, events: Vec<UncertainEvent>) -> Self {
        UncertainTrace {
            case_id: case_id.into(),
            events,
        }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn event(&self, id: &str) -> Option<&UncertainEvent> {
        self.events.iter().find(|e| e.id == id)
    }

    /// Union of the label sets of all events in the trace.
    pub fn activities(&self) -> BTreeSet<ActivityLabel> {
        self.events
            .iter()
            .flat_map(|e| e.activities.iter().cloned())
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UncertainLog {
    pub traces: Vec<UncertainTrace>,
}

impl UncertainLog {
    pub fn new(traces: Vec<UncertainTrace>) -> Self {
        UncertainLog { traces }
    }

    pub fn trace(&self, case_id: &str) -> Option<&UncertainTrace> {
        self.traces.iter().find(|t| t.case_id == case_id)
    }

    pub fn event_count(&self) -> usize {
        self.traces.iter().map(UncertainTrace::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    EmptyTrace,
    EmptyActivitySet,
    EmptyActivityLabel,
    InvertedInterval,
    DuplicateEventId,
    /// The event id was already used in another trace of the log.
    DuplicateEventIdAcrossLog {
        first_case: String,
    },
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::EmptyTrace => f.write_str("trace has no events"),
            ViolationKind::EmptyActivitySet => f.write_str("activity set is empty"),
            ViolationKind::EmptyActivityLabel => f.write_str("activity label is empty"),
            ViolationKind::InvertedInterval => f.write_str("t_min is after t_max"),
            ViolationKind::DuplicateEventId => f.write_str("event id repeated within the trace"),
            ViolationKind::DuplicateEventIdAcrossLog { first_case } => {
                write!(f, "event id already used in case {first_case:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub case_id: String,
    pub event_id: Option<String>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.event_id {
            Some(id) => write!(f, "case {:?}, event {:?}: {}", self.case_id, id, self.kind),
            None => write!(f, "case {:?}: {}", self.case_id, self.kind),
        }
    }
}

/// Checks every invariant of the log and reports all violations, in log order.
pub fn validate(log: &UncertainLog) -> Vec<Violation> {
    let mut report = Vec::new();
    // event id -> index of the trace that first used it
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (ti, trace) in log.traces.iter().enumerate() {
        let violation = |event_id: Option<&str>, kind| Violation {
            case_id: trace.case_id.clone(),
            event_id: event_id.map(str::to_owned),
            kind,
        };
        if trace.events.is_empty() {
            report.push(violation(None, ViolationKind::EmptyTrace));
        }
        for event in &trace.events {
            let id = Some(event.id.as_str());
            if event.activities.is_empty() {
                report.push(violation(id, ViolationKind::EmptyActivitySet));
            }
            if event.activities.iter().any(|a| a.as_str().is_empty()) {
                report.push(violation(id, ViolationKind::EmptyActivityLabel));
            }
            if event.t_min > event.t_max {
                report.push(violation(id, ViolationKind::InvertedInterval));
            }
            match seen.get(event.id.as_str()) {
                Some(&first) if first == ti => {
                    report.push(violation(id, ViolationKind::DuplicateEventId));
                }
                Some(&first) => report.push(violation(
                    id,
                    ViolationKind::DuplicateEventIdAcrossLog {
                        first_case: log.traces[first].case_id.clone(),
                    },
                )),
                None => {
                    seen.insert(&event.id, ti);
                }
            }
        }
    }
    report
}

/// All activity labels appearing in any event of the log.
pub fn activity_universe(log: &UncertainLog) -> BTreeSet<ActivityLabel> {
    log.traces
        .iter()
        .flat_map(UncertainTrace::activities)
        .collect()
}
