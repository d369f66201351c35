//! Compact trace notation.
//!
//! ```text
//! trace    := '<' entry (',' entry)* '>'
//! entry    := uevent | '[' uevent (',' uevent)* ']'
//! uevent   := ['?'] labelset
//! labelset := label | '{' label (',' label)* '}'
//! label    := [A-Za-z0-9_]+
//! ```
//!
//! `?` marks an indeterminate event, braces list alternative labels and
//! square brackets group events whose timestamps overlap. Top-level entry `i`
//! gets timestamps `[2i, 2i]`, or `[2i, 2i+1]` for every member of a bracket
//! group, so entries stay strictly ordered while group members overlap.

use std::collections::BTreeSet;

use super::LogError;
use crate::model::{ActivityLabel, Timestamp, UncertainEvent, UncertainLog, UncertainTrace};

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: Option<usize>,
}

struct RawEvent {
    labels: BTreeSet<ActivityLabel>,
    determinate: bool,
}

enum Entry {
    Single(RawEvent),
    Group(Vec<RawEvent>),
}

impl Parser {
    fn new(src: &str, line: Option<usize>) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> LogError {
        LogError::Grammar {
            line: self.line,
            offset: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LogError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.error(format!("expected '{c}', found '{got}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn trace(&mut self) -> Result<Vec<Entry>, LogError> {
        self.expect('<')?;
        let mut entries = vec![self.entry()?];
        loop {
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    entries.push(self.entry()?);
                }
                Some('>') => {
                    self.pos += 1;
                    return Ok(entries);
                }
                Some(c) => return Err(self.error(format!("expected ',' or '>', found '{c}'"))),
                None => return Err(self.error("unterminated trace, expected '>'")),
            }
        }
    }

    fn entry(&mut self) -> Result<Entry, LogError> {
        if self.peek() != Some('[') {
            return self.uevent().map(Entry::Single);
        }
        self.pos += 1;
        let mut members = vec![self.uevent()?];
        loop {
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    members.push(self.uevent()?);
                }
                Some(']') => {
                    self.pos += 1;
                    return Ok(Entry::Group(members));
                }
                Some(c) => return Err(self.error(format!("expected ',' or ']', found '{c}'"))),
                None => return Err(self.error("unterminated group, expected ']'")),
            }
        }
    }

    fn uevent(&mut self) -> Result<RawEvent, LogError> {
        let determinate = if self.peek() == Some('?') {
            self.pos += 1;
            false
        } else {
            true
        };
        let labels = self.labelset()?;
        Ok(RawEvent {
            labels,
            determinate,
        })
    }

    fn labelset(&mut self) -> Result<BTreeSet<ActivityLabel>, LogError> {
        if self.peek() != Some('{') {
            return Ok(BTreeSet::from([self.label()?]));
        }
        let open = self.pos;
        self.pos += 1;
        if self.peek() == Some('}') {
            return Err(LogError::EmptyLabelSet {
                line: self.line,
                offset: open,
            });
        }
        let mut labels = BTreeSet::from([self.label()?]);
        loop {
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    labels.insert(self.label()?);
                }
                Some('}') => {
                    self.pos += 1;
                    return Ok(labels);
                }
                Some(c) => return Err(self.error(format!("expected ',' or '}}', found '{c}'"))),
                None => return Err(self.error("unterminated label set, expected '}'")),
            }
        }
    }

    fn label(&mut self) -> Result<ActivityLabel, LogError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.chars.get(self.pos) {
                Some(c) => self.error(format!("expected an activity label, found '{c}'")),
                None => self.error("expected an activity label, found end of input"),
            });
        }
        Ok(ActivityLabel::new(
            self.chars[start..self.pos].iter().collect::<String>(),
        ))
    }
}

fn synthesize(entries: Vec<Entry>, case_id: &str, id_prefix: &str) -> UncertainTrace {
    let mut events = Vec::new();
    let mut push = |raw: RawEvent, t_min: u32, t_max: u32| {
        let id = format!("{id_prefix}e{}", events.len() + 1);
        events.push(UncertainEvent {
            id,
            activities: raw.labels,
            t_min: Timestamp::from_tick(t_min),
            t_max: Timestamp::from_tick(t_max),
            determinate: raw.determinate,
        });
    };
    for (i, entry) in entries.into_iter().enumerate() {
        let base = 2 * i as u32;
        match entry {
            Entry::Single(raw) => push(raw, base, base),
            Entry::Group(members) => {
                for raw in members {
                    push(raw, base, base + 1);
                }
            }
        }
    }
    UncertainTrace::new(case_id, events)
}

/// Parses one trace in compact notation. Event ids are `e1`, `e2`, ... in
/// textual order.
pub fn parse_compact(text: &str, case_id: &str) -> Result<UncertainTrace, LogError> {
    let mut parser = Parser::new(text, None);
    let entries = parser.trace()?;
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected '{c}' after end of trace")));
    }
    Ok(synthesize(entries, case_id, ""))
}

/// Parses a compact log: one trace per line, optionally followed by `^n` to
/// repeat it `n` times. Blank lines and lines starting with `#` are skipped.
///
/// Traces are numbered in order of appearance (after repetition); the k-th
/// trace gets case id `ck` and event ids `ck_e1`, `ck_e2`, ...
pub fn parse_compact_log(text: &str) -> Result<UncertainLog, LogError> {
    let mut traces = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parser = Parser::new(line, Some(lineno + 1));
        let entries = parser.trace()?;
        let count = match parser.peek() {
            None => 1,
            Some('^') => {
                parser.pos += 1;
                parser.skip_ws();
                let start = parser.pos;
                while parser
                    .chars
                    .get(parser.pos)
                    .is_some_and(char::is_ascii_digit)
                {
                    parser.pos += 1;
                }
                let digits: String = parser.chars[start..parser.pos].iter().collect();
                let count: usize =
                    digits.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                        parser.error("expected a positive multiplicity after '^'")
                    })?;
                if let Some(c) = parser.peek() {
                    return Err(parser.error(format!("unexpected '{c}' after multiplicity")));
                }
                count
            }
            Some(c) => return Err(parser.error(format!("unexpected '{c}' after end of trace"))),
        };
        let template = synthesize(entries, "", "");
        for _ in 0..count {
            let case_id = format!("c{}", traces.len() + 1);
            let mut trace = template.clone();
            for event in &mut trace.events {
                event.id = format!("{case_id}_{}", event.id);
            }
            trace.case_id = case_id;
            traces.push(trace);
        }
    }
    Ok(UncertainLog::new(traces))
}
