//! Reading and writing uncertain logs.
//!
//! Two formats are supported: a JSON document (`.ulog.json`), which is the
//! canonical interchange format, and a compact text notation (`.ulog.txt`)
//! with one trace per line.

mod compact;
mod json;

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::model::Violation;

pub use compact::{parse_compact, parse_compact_log};
pub use json::{emit_json, parse_json};

#[derive(Debug, Error)]
pub enum LogError {
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("{}", Invalid(.0))]
    Invalid(Vec<Violation>),
    #[error("{}grammar error at offset {offset}: {message}", line_prefix(*.line))]
    Grammar {
        line: Option<usize>,
        offset: usize,
        message: String,
    },
    #[error("{}empty label set at offset {offset}", line_prefix(*.line))]
    EmptyLabelSet { line: Option<usize>, offset: usize },
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

struct Invalid<'a>(&'a [Violation]);

impl fmt::Display for Invalid<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log violates {} invariant(s)", self.0.len())?;
        for v in self.0 {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogFormat {
    Json,
    Compact,
}

impl LogFormat {
    /// Guesses the format from a `.ulog.json` / `.ulog.txt` style file name.
    pub fn from_path(path: &Path) -> Option<LogFormat> {
        match path.extension()?.to_str()? {
            "json" => Some(LogFormat::Json),
            "txt" => Some(LogFormat::Compact),
            _ => None,
        }
    }

    pub fn parse(self, text: &str) -> Result<crate::UncertainLog, LogError> {
        match self {
            LogFormat::Json => parse_json(text),
            LogFormat::Compact => parse_compact_log(text),
        }
    }
}
