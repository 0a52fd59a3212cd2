//! Line-delimited JSON trace files, one per document.
//!
//! The first line is a `header`; every other line is a `step`, `article`,
//! `notes`, `feedback` or `failure` record. The layout is described in
//! `docs/trace-format.md`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AgentFailure, FailureCause, IterationTrace, Mode, Step, StepRecord};
use crate::corpus::Paper;
use crate::extraction::{Article, EditorFeedback, ReaderNotes};

pub const TRACE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub step: Step,
    pub iteration: usize,
    pub attempts: u32,
    pub cause: FailureCause,
}

impl From<&AgentFailure> for FailureRecord {
    fn from(f: &AgentFailure) -> Self {
        Self { step: f.step, iteration: f.iteration, attempts: f.attempts, cause: f.cause.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum TraceRecord {
    Header { version: u32, paper: Paper, mode: Mode },
    Step(StepRecord),
    Article { iteration: usize, body: String, improvement: Option<String> },
    Notes { iteration: usize, notes: ReaderNotes },
    Feedback { iteration: usize, feedback: EditorFeedback },
    Failure(FailureRecord),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("trace has no header record")]
    MissingHeader,
    #[error("unsupported trace version {0}")]
    Version(u32),
}

/// A trace read back from disk, with the failure that ended it, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFile {
    pub trace: IterationTrace,
    pub failure: Option<FailureRecord>,
}

pub fn trace_records(trace: &IterationTrace, failure: Option<&FailureRecord>) -> Vec<TraceRecord> {
    let mut out = vec![TraceRecord::Header { version: TRACE_VERSION, paper: trace.paper.clone(), mode: trace.mode }];
    out.extend(trace.steps.iter().cloned().map(TraceRecord::Step));
    for a in &trace.articles {
        let improvement = a.iteration.checked_sub(1).and_then(|i| trace.improvements.get(i).cloned().flatten());
        out.push(TraceRecord::Article { iteration: a.iteration, body: a.body.clone(), improvement });
    }
    for (i, n) in trace.notes.iter().enumerate() {
        out.push(TraceRecord::Notes { iteration: i + 1, notes: n.clone() });
    }
    for (i, f) in trace.feedback.iter().enumerate() {
        out.push(TraceRecord::Feedback { iteration: i + 1, feedback: f.clone() });
    }
    if let Some(f) = failure {
        out.push(TraceRecord::Failure(f.clone()));
    }
    out
}

pub fn write_trace(path: &Path, trace: &IterationTrace, failure: Option<&FailureRecord>) -> Result<(), TraceError> {
    let mut text = String::new();
    for r in trace_records(trace, failure) {
        text.push_str(&serde_json::to_string(&r).expect("trace record serializes"));
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| TraceError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_trace(path: &Path) -> Result<TraceFile, TraceError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| TraceError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_trace(&text)
}

pub fn parse_trace(text: &str) -> Result<TraceFile, TraceError> {
    let mut trace: Option<IterationTrace> = None;
    let mut failure = None;
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: TraceRecord = serde_json::from_str(line)
            .map_err(|e| TraceError::Parse { line: idx + 1, message: e.to_string() })?;
        if let TraceRecord::Header { version, paper, mode } = record {
            if version != TRACE_VERSION {
                return Err(TraceError::Version(version));
            }
            trace = Some(IterationTrace::new(&paper, mode));
            continue;
        }
        let t = trace.as_mut().ok_or(TraceError::MissingHeader)?;
        match record {
            TraceRecord::Header { .. } => unreachable!(),
            TraceRecord::Step(s) => t.steps.push(s),
            TraceRecord::Article { iteration, body, improvement } => {
                if iteration > 0 {
                    t.improvements.push(improvement);
                }
                t.articles.push(Article { body, iteration });
            }
            TraceRecord::Notes { notes, .. } => t.notes.push(notes),
            TraceRecord::Feedback { feedback, .. } => t.feedback.push(feedback),
            TraceRecord::Failure(f) => failure = Some(f),
        }
    }
    Ok(TraceFile { trace: trace.ok_or(TraceError::MissingHeader)?, failure })
}
