//! Process trees and their text notation.
//!
//! ```text
//! seq('a', xor('b', tau), and('c', 'd'), loop('e', 'f'))
//! ```
//!
//! Leaves are quoted (`\'` and `\\` escape inside quotes); `tau` is the silent
//! leaf. `loop(body, redo, ...)` runs the body, then any number of times one
//! redo child followed by the body again.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::ActivityLabel;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProcessTree {
    Activity(ActivityLabel),
    Silent,
    Sequence(Vec<ProcessTree>),
    Choice(Vec<ProcessTree>),
    Parallel(Vec<ProcessTree>),
    /// First child is the body, the rest are redo children.
    Loop(Vec<ProcessTree>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("{operator} node has {count} child(ren), at least 2 required")]
    TooFewChildren {
        operator: &'static str,
        count: usize,
    },
    #[error("tree syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

impl ProcessTree {
    pub fn leaf(a: impl Into<ActivityLabel>) -> Self {
        ProcessTree::Activity(a.into())
    }

    fn operator(&self) -> Option<(&'static str, &[ProcessTree])> {
        match self {
            ProcessTree::Activity(_) | ProcessTree::Silent => None,
            ProcessTree::Sequence(c) => Some(("seq", c)),
            ProcessTree::Choice(c) => Some(("xor", c)),
            ProcessTree::Parallel(c) => Some(("and", c)),
            ProcessTree::Loop(c) => Some(("loop", c)),
        }
    }

    pub fn children(&self) -> &[ProcessTree] {
        self.operator().map(|(_, c)| c).unwrap_or(&[])
    }

    /// Checks that every operator node has at least two children.
    pub fn validate(&self) -> Result<(), TreeError> {
        if let Some((operator, children)) = self.operator() {
            if children.len() < 2 {
                return Err(TreeError::TooFewChildren {
                    operator,
                    count: children.len(),
                });
            }
            children.iter().try_for_each(ProcessTree::validate)?;
        }
        Ok(())
    }

    /// Labels of all activity leaves.
    pub fn activities(&self) -> BTreeSet<ActivityLabel> {
        let mut out = BTreeSet::new();
        self.collect_activities(&mut out);
        out
    }

    fn collect_activities(&self, out: &mut BTreeSet<ActivityLabel>) {
        match self {
            ProcessTree::Activity(a) => {
                out.insert(a.clone());
            }
            ProcessTree::Silent => {}
            _ => self
                .children()
                .iter()
                .for_each(|c| c.collect_activities(out)),
        }
    }

    /// Whether `word` is in the language of the tree, decided directly on the
    /// operator semantics. Exponential in the word length for parallel
    /// nodes; meant for short words.
    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let word: Vec<&str> = word.iter().map(AsRef::as_ref).collect();
        self.matches(&word)
    }

    fn matches(&self, word: &[&str]) -> bool {
        match self {
            ProcessTree::Activity(a) => word.len() == 1 && word[0] == a.as_str(),
            ProcessTree::Silent => word.is_empty(),
            ProcessTree::Choice(cs) => cs.iter().any(|c| c.matches(word)),
            ProcessTree::Sequence(cs) => matches_sequence(cs, word),
            ProcessTree::Parallel(cs) => {
                let alphabets: Vec<_> = cs.iter().map(ProcessTree::activities).collect();
                let mut parts = vec![Vec::new(); cs.len()];
                matches_interleaving(cs, &alphabets, word, &mut parts)
            }
            ProcessTree::Loop(cs) => {
                let (body, redos) = cs.split_first().expect("loop has a body");
                // positions reachable right after an execution of the body
                let n = word.len();
                let mut after_body = vec![false; n + 1];
                let mut stack: Vec<usize> = (0..=n).filter(|&k| body.matches(&word[..k])).collect();
                while let Some(k) = stack.pop() {
                    if after_body[k] {
                        continue;
                    }
                    after_body[k] = true;
                    for j in k..=n {
                        if !redos.iter().any(|r| r.matches(&word[k..j])) {
                            continue;
                        }
                        for l in j..=n {
                            if !after_body[l] && body.matches(&word[j..l]) {
                                stack.push(l);
                            }
                        }
                    }
                }
                after_body[n]
            }
        }
    }
}

fn matches_sequence(children: &[ProcessTree], word: &[&str]) -> bool {
    match children.split_first() {
        None => word.is_empty(),
        Some((first, rest)) => (0..=word.len())
            .any(|k| first.matches(&word[..k]) && matches_sequence(rest, &word[k..])),
    }
}

fn matches_interleaving<'w>(
    children: &[ProcessTree],
    alphabets: &[BTreeSet<ActivityLabel>],
    word: &[&'w str],
    parts: &mut Vec<Vec<&'w str>>,
) -> bool {
    let Some((&symbol, rest)) = word.split_first() else {
        return children.iter().zip(parts.iter()).all(|(c, p)| c.matches(p));
    };
    for i in 0..children.len() {
        if !alphabets[i].contains(symbol) {
            continue;
        }
        parts[i].push(symbol);
        let ok = matches_interleaving(children, alphabets, rest, parts);
        parts[i].pop();
        if ok {
            return true;
        }
    }
    false
}

fn write_quoted(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    f.write_str("'")?;
    for c in s.chars() {
        if c == '\'' || c == '\\' {
            f.write_str("\\")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str("'")
}

impl fmt::Display for ProcessTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProcessTree::Activity(a) => write_quoted(f, a.as_str()),
            ProcessTree::Silent => f.write_str("tau"),
            _ => {
                let (op, children) = self.operator().expect("operator node");
                write!(f, "{op}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for ProcessTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TreeParser {
            chars: s.chars().collect(),
            pos: 0,
        };
        let tree = p.node()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(tree)
    }
}

struct TreeParser {
    chars: Vec<char>,
    pos: usize,
}

impl TreeParser {
    fn error(&self, message: &str) -> TreeError {
        TreeError::Syntax {
            offset: self.pos,
            message: message.to_owned(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn node(&mut self) -> Result<ProcessTree, TreeError> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&'\'') {
            self.pos += 1;
            let mut name = String::new();
            loop {
                match self.chars.get(self.pos) {
                    None => return Err(self.error("unterminated quoted activity")),
                    Some('\'') => {
                        self.pos += 1;
                        return Ok(ProcessTree::Activity(ActivityLabel::new(name)));
                    }
                    Some('\\') => {
                        let escaped = *self
                            .chars
                            .get(self.pos + 1)
                            .ok_or_else(|| self.error("dangling escape"))?;
                        name.push(escaped);
                        self.pos += 2;
                    }
                    Some(&c) => {
                        name.push(c);
                        self.pos += 1;
                    }
                }
            }
        }
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        let word: String = self.chars[start..self.pos].iter().collect();
        if word == "tau" {
            return Ok(ProcessTree::Silent);
        }
        let make: fn(Vec<ProcessTree>) -> ProcessTree = match word.as_str() {
            "seq" => ProcessTree::Sequence,
            "xor" => ProcessTree::Choice,
            "and" => ProcessTree::Parallel,
            "loop" => ProcessTree::Loop,
            _ => {
                self.pos = start;
                return Err(self.error("expected an operator, 'tau' or a quoted activity"));
            }
        };
        self.skip_ws();
        if self.chars.get(self.pos) != Some(&'(') {
            return Err(self.error("expected '('"));
        }
        self.pos += 1;
        let mut children = vec![self.node()?];
        loop {
            self.skip_ws();
            match self.chars.get(self.pos) {
                Some(',') => {
                    self.pos += 1;
                    children.push(self.node()?);
                }
                Some(')') => {
                    self.pos += 1;
                    return Ok(make(children));
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
    }
}
