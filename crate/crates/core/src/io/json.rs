//! JSON log documents.
//!
//! ```json
//! { "traces": [ { "case_id": "0",
//!                 "events": [ { "id": "e1", "activities": ["a", "c"],
//!                               "t_min": "2011-12-02T00:00:00Z",
//!                               "t_max": "2011-12-05T00:00:00Z",
//!                               "indeterminate": false } ] } ] }
//! ```
//!
//! Timestamps are ISO-8601 strings or non-negative integer ticks. `id` may be
//! omitted and is then assigned as `t<trace index>_e<event index>` (zero-based);
//! `indeterminate` defaults to `false`.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{Map, Value};

use super::LogError;
use crate::model::{
    validate, ActivityLabel, Timestamp, UncertainEvent, UncertainLog, UncertainTrace,
};

fn schema(path: impl Into<String>, message: impl Into<String>) -> LogError {
    LogError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn field<'v>(obj: &'v Map<String, Value>, path: &str, key: &str) -> Result<&'v Value, LogError> {
    obj.get(key)
        .ok_or_else(|| schema(path, format!("missing field \"{key}\"")))
}

fn as_object<'v>(value: &'v Value, path: &str) -> Result<&'v Map<String, Value>, LogError> {
    value
        .as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

fn as_array<'v>(value: &'v Value, path: &str) -> Result<&'v Vec<Value>, LogError> {
    value
        .as_array()
        .ok_or_else(|| schema(path, "expected an array"))
}

fn as_str<'v>(value: &'v Value, path: &str) -> Result<&'v str, LogError> {
    value
        .as_str()
        .ok_or_else(|| schema(path, "expected a string"))
}

fn timestamp(value: &Value, path: &str) -> Result<Timestamp, LogError> {
    match value {
        Value::String(s) => Timestamp::parse_iso(s)
            .ok_or_else(|| schema(path, format!("not an ISO-8601 datetime: {s:?}"))),
        Value::Number(n) => n
            .as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .map(Timestamp::from_tick)
            .ok_or_else(|| {
                schema(
                    path,
                    format!("tick must be a non-negative 32-bit integer, got {n}"),
                )
            }),
        _ => Err(schema(
            path,
            "expected an ISO-8601 string or an integer tick",
        )),
    }
}

fn parse_event(
    value: &Value,
    ti: usize,
    ei: usize,
    path: &str,
) -> Result<UncertainEvent, LogError> {
    let obj = as_object(value, path)?;
    let id = match obj.get("id") {
        Some(v) => as_str(v, &format!("{path}.id"))?.to_owned(),
        None => format!("t{ti}_e{ei}"),
    };
    let acts_path = format!("{path}.activities");
    let raw = as_array(field(obj, path, "activities")?, &acts_path)?;
    if raw.is_empty() {
        return Err(schema(
            acts_path,
            format!("event {id:?} has an empty activity set"),
        ));
    }
    let mut activities = BTreeSet::new();
    for (k, a) in raw.iter().enumerate() {
        let name = as_str(a, &format!("{acts_path}[{k}]"))?;
        if !activities.insert(ActivityLabel::new(name)) {
            return Err(schema(
                acts_path,
                format!("event {id:?} lists activity {name:?} twice"),
            ));
        }
    }
    let t_min = timestamp(field(obj, path, "t_min")?, &format!("{path}.t_min"))?;
    let t_max = timestamp(field(obj, path, "t_max")?, &format!("{path}.t_max"))?;
    let determinate = match obj.get("indeterminate") {
        None => true,
        Some(v) => !v
            .as_bool()
            .ok_or_else(|| schema(format!("{path}.indeterminate"), "expected a boolean"))?,
    };
    Ok(UncertainEvent {
        id,
        activities,
        t_min,
        t_max,
        determinate,
    })
}

/// Parses a JSON log document. The result is checked with [`validate`] and
/// rejected with every violation if any invariant fails.
pub fn parse_json(text: &str) -> Result<UncertainLog, LogError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| LogError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let root = as_object(&doc, "$")?;
    let mut traces = Vec::new();
    for (ti, tv) in as_array(field(root, "$", "traces")?, "$.traces")?
        .iter()
        .enumerate()
    {
        let path = format!("$.traces[{ti}]");
        let obj = as_object(tv, &path)?;
        let case_id = as_str(field(obj, &path, "case_id")?, &format!("{path}.case_id"))?.to_owned();
        let events_path = format!("{path}.events");
        let events = as_array(field(obj, &path, "events")?, &events_path)?
            .iter()
            .enumerate()
            .map(|(ei, ev)| parse_event(ev, ti, ei, &format!("{events_path}[{ei}]")))
            .collect::<Result<Vec<_>, _>>()?;
        traces.push(UncertainTrace { case_id, events });
    }
    let log = UncertainLog { traces };
    let violations = validate(&log);
    if violations.is_empty() {
        Ok(log)
    } else {
        Err(LogError::Invalid(violations))
    }
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    traces: Vec<TraceOut<'a>>,
}

#[derive(Serialize)]
struct TraceOut<'a> {
    case_id: &'a str,
    events: Vec<EventOut<'a>>,
}

#[derive(Serialize)]
struct EventOut<'a> {
    id: &'a str,
    activities: Vec<&'a str>,
    t_min: String,
    t_max: String,
    indeterminate: bool,
}

/// Serializes a log as a pretty-printed JSON document with a trailing newline.
pub fn emit_json(log: &UncertainLog) -> String {
    let doc = DocumentOut {
        traces: log
            .traces
            .iter()
            .map(|t| TraceOut {
                case_id: &t.case_id,
                events: t
                    .events
                    .iter()
                    .map(|e| EventOut {
                        id: &e.id,
                        activities: e.activities.iter().map(ActivityLabel::as_str).collect(),
                        t_min: e.t_min.to_iso(),
                        t_max: e.t_max.to_iso(),
                        indeterminate: !e.determinate,
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("log documents always serialize");
    out.push('\n');
    out
}
