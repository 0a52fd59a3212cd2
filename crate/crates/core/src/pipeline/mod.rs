//! The write / read / advise / revise loop.
//!
//! `p0 = J(x)`, then for each round `i`: the reader takes notes on `p(i-1)`,
//! the editor turns notes into advice, and the journalist revises. Ablation
//! modes drop the reader, the editor, or both.

mod persist;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agents::{AgentError, AgentKind, AgentRole, RoleContext};
use crate::corpus::Paper;
use crate::extraction::{
    self, detect_copy_with, Article, EditorFeedback, ExtractError, ReaderNotes, DEFAULT_COPY_THRESHOLD,
};
use crate::llm::{ChatBackend, ChatMessage, SamplingParams};

pub use persist::{
    parse_trace, read_trace, trace_records, write_trace, FailureRecord, TraceError, TraceFile, TraceRecord, TRACE_VERSION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Full,
    /// The editor advises from the paper and article alone.
    NoReading,
    /// The reader's explanations go straight to the journalist as advice.
    NoSuggestions,
    /// The journalist revises with no outside input.
    #[serde(rename = "no-collab", alias = "no-collaboration")]
    NoCollaboration,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Full, Mode::NoReading, Mode::NoSuggestions, Mode::NoCollaboration];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::NoReading => "no-reading",
            Mode::NoSuggestions => "no-suggestions",
            Mode::NoCollaboration => "no-collab",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "full" => Some(Mode::Full),
            "no-reading" => Some(Mode::NoReading),
            "no-suggestions" => Some(Mode::NoSuggestions),
            "no-collab" | "no-collaboration" => Some(Mode::NoCollaboration),
            _ => None,
        }
    }

    pub fn required_roles(self) -> &'static [AgentKind] {
        match self {
            Mode::Full => &[AgentKind::Journalist, AgentKind::Reader, AgentKind::Editor, AgentKind::Revision],
            Mode::NoReading => &[AgentKind::Journalist, AgentKind::DirectEditor, AgentKind::Revision],
            Mode::NoSuggestions => &[AgentKind::Journalist, AgentKind::Reader, AgentKind::Revision],
            Mode::NoCollaboration => &[AgentKind::Journalist, AgentKind::SelfRevision],
        }
    }

    pub fn uses_reader(self) -> bool {
        matches!(self, Mode::Full | Mode::NoSuggestions)
    }

    pub fn uses_editor(self) -> bool {
        matches!(self, Mode::Full | Mode::NoReading)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub iterations: usize,
    pub select_iteration: usize,
    pub mode: Mode,
    /// Extra attempts after a parse failure or a copied output.
    pub max_agent_retries: u32,
    /// Demonstration text shown to the journalist for the initial write only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_shot: Option<String>,
    pub copy_threshold: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            iterations: 5,
            select_iteration: 3,
            mode: Mode::Full,
            max_agent_retries: 3,
            one_shot: None,
            copy_threshold: DEFAULT_COPY_THRESHOLD,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.select_iteration > self.iterations {
            return Err(PipelineError::InvalidConfig(format!(
                "select_iteration {} exceeds iterations {}",
                self.select_iteration, self.iterations
            )));
        }
        if !(self.copy_threshold > 0.0 && self.copy_threshold <= 1.0) {
            return Err(PipelineError::InvalidConfig(format!(
                "copy_threshold must be in (0, 1], got {}",
                self.copy_threshold
            )));
        }
        Ok(())
    }
}

/// One kind of step in the loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    InitialWriting,
    Reading,
    Editing,
    Revision,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::InitialWriting => "initial_writing",
            Step::Reading => "reading",
            Step::Editing => "editing",
            Step::Revision => "revision",
        })
    }
}

/// One agent call, successful or not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: Step,
    pub iteration: usize,
    pub kind: AgentKind,
    /// 1-based attempt number within the step.
    pub attempt: u32,
    pub messages: Vec<ChatMessage>,
    pub response: Option<String>,
    /// Why this attempt was rejected, if it was.
    pub error: Option<String>,
    pub duration_ms: f64,
}

/// Everything produced for one document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub paper: Paper,
    pub mode: Mode,
    /// `articles[i]` is the article after round `i`; index 0 is the initial writing.
    pub articles: Vec<Article>,
    pub notes: Vec<ReaderNotes>,
    pub feedback: Vec<EditorFeedback>,
    /// Improvement notes from each revision, when the model wrote them.
    pub improvements: Vec<Option<String>>,
    pub steps: Vec<StepRecord>,
}

impl IterationTrace {
    fn new(paper: &Paper, mode: Mode) -> Self {
        Self {
            paper: paper.clone(),
            mode,
            articles: Vec::new(),
            notes: Vec::new(),
            feedback: Vec::new(),
            improvements: Vec::new(),
            steps: Vec::new(),
        }
    }

    /// Number of completed revision rounds.
    pub fn iterations(&self) -> usize {
        self.articles.len().saturating_sub(1)
    }

    pub fn total_duration_ms(&self) -> f64 {
        self.steps.iter().map(|s| s.duration_ms).sum()
    }

    /// Sorted per-kind call counts, retries included.
    pub fn call_counts(&self) -> BTreeMap<AgentKind, usize> {
        let mut out = BTreeMap::new();
        for s in &self.steps {
            *out.entry(s.kind).or_insert(0) += 1;
        }
        out
    }
}

/// Why a step gave up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "detail", rename_all = "snake_case")]
pub enum FailureCause {
    /// The backend failed; the client has already retried transport errors.
    Agent(String),
    /// The output did not follow the section protocol.
    Parse(String),
    /// The output reproduced the source abstract.
    CopiedSource { containment: f64 },
}

impl fmt::Display for FailureCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureCause::Agent(m) => write!(f, "agent error: {m}"),
            FailureCause::Parse(m) => write!(f, "unparseable output: {m}"),
            FailureCause::CopiedSource { containment } => {
                write!(f, "output copies the source (containment {containment:.3})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentFailure {
    pub step: Step,
    pub iteration: usize,
    pub attempts: u32,
    pub cause: FailureCause,
    /// Everything completed before the failure, plus the failed attempts.
    pub partial: IterationTrace,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("invalid pipeline config: {0}")]
    InvalidConfig(String),
    #[error("mode requires a {0} role")]
    MissingRole(AgentKind),
    #[error("document {}: {} at iteration {} failed after {} attempt(s): {}",
        .0.partial.paper.id, .0.step, .0.iteration, .0.attempts, .0.cause)]
    AgentFailure(Box<AgentFailure>),
    #[error("iteration {requested} out of range (trace has {available})")]
    IterationOutOfRange { requested: usize, available: usize },
}

/// The roles available to a run, keyed by kind.
#[derive(Debug, Clone, Default)]
pub struct RoleSet {
    roles: BTreeMap<AgentKind, AgentRole>,
}

impl RoleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, role: AgentRole) {
        self.roles.insert(role.kind(), role);
    }

    pub fn get(&self, kind: AgentKind) -> Result<&AgentRole, PipelineError> {
        self.roles.get(&kind).ok_or(PipelineError::MissingRole(kind))
    }

    pub fn iter(&self) -> impl Iterator<Item = &AgentRole> {
        self.roles.values()
    }

    /// Every kind on one backend.
    pub fn uniform(backend: Arc<dyn ChatBackend>, params: SamplingParams) -> Self {
        Self::from_backends(backend.clone(), backend.clone(), backend, params)
    }

    /// Journalist, revision and self-revision share `journalist`; editor and
    /// direct editor share `editor`.
    pub fn from_backends(
        journalist: Arc<dyn ChatBackend>,
        reader: Arc<dyn ChatBackend>,
        editor: Arc<dyn ChatBackend>,
        params: SamplingParams,
    ) -> Self {
        let mut set = Self::new();
        for kind in AgentKind::ALL {
            let backend = match kind {
                AgentKind::Journalist | AgentKind::Revision | AgentKind::SelfRevision => journalist.clone(),
                AgentKind::Reader => reader.clone(),
                AgentKind::Editor | AgentKind::DirectEditor => editor.clone(),
            };
            set.insert(AgentRole::new(kind, backend, params.clone()));
        }
        set
    }

    pub fn check_mode(&self, mode: Mode) -> Result<(), PipelineError> {
        for &kind in mode.required_roles() {
            self.get(kind)?;
        }
        Ok(())
    }
}

struct Runner<'a> {
    cfg: &'a PipelineConfig,
    trace: IterationTrace,
}

impl Runner<'_> {
    /// Calls `role` until `accept` takes the output, resending the same
    /// messages each time. Backend errors end the step at once.
    fn step<T>(
        &mut self,
        step: Step,
        iteration: usize,
        role: &AgentRole,
        ctx: &RoleContext,
        accept: impl Fn(&str) -> Result<T, FailureCause>,
    ) -> Result<T, PipelineError> {
        let messages = role.render_messages(ctx).map_err(|e| self.fail(step, iteration, 0, agent_cause(e)))?;
        let max_attempts = self.cfg.max_agent_retries + 1;
        let mut attempt = 0;
        loop {
            attempt += 1;
            let started = Instant::now();
            let result = role.invoke_messages(&messages);
            let duration_ms = started.elapsed().as_secs_f64() * 1e3;
            let (response, outcome) = match result {
                Ok(text) => {
                    let outcome = accept(&text);
                    (Some(text), outcome)
                }
                Err(e) => (None, Err(agent_cause(e))),
            };
            self.trace.steps.push(StepRecord {
                step,
                iteration,
                kind: role.kind(),
                attempt,
                messages: messages.clone(),
                response,
                error: outcome.as_ref().err().map(ToString::to_string),
                duration_ms,
            });
            match outcome {
                Ok(v) => return Ok(v),
                Err(cause @ FailureCause::Agent(_)) => return Err(self.fail(step, iteration, attempt, cause)),
                Err(cause) if attempt >= max_attempts => return Err(self.fail(step, iteration, attempt, cause)),
                Err(cause) => log::warn!(
                    "{}: {step} at iteration {iteration}, attempt {attempt}: {cause}; retrying",
                    self.trace.paper.id
                ),
            }
        }
    }

    fn fail(&self, step: Step, iteration: usize, attempts: u32, cause: FailureCause) -> PipelineError {
        PipelineError::AgentFailure(Box::new(AgentFailure {
            step,
            iteration,
            attempts,
            cause,
            partial: self.trace.clone(),
        }))
    }
}

fn agent_cause(e: AgentError) -> FailureCause {
    FailureCause::Agent(e.to_string())
}

fn parse_cause(e: ExtractError) -> FailureCause {
    FailureCause::Parse(e.to_string())
}

/// Reads a revision, falling back to a plain article section when the model
/// used the initial-writing heading instead.
fn parse_revised(raw: &str) -> Result<(String, Option<String>), ExtractError> {
    match extraction::parse_revision(raw) {
        Ok(r) => Ok((r.article, r.improvement)),
        Err(e @ ExtractError::SectionNotFound(_)) => extraction::parse_article(raw).map(|a| (a, None)).map_err(|_| e),
        Err(e) => Err(e),
    }
}

/// Runs the loop for one paper.
pub fn run_document(paper: &Paper, cfg: &PipelineConfig, roles: &RoleSet) -> Result<IterationTrace, PipelineError> {
    cfg.validate()?;
    roles.check_mode(cfg.mode)?;
    let mut run = Runner { cfg, trace: IterationTrace::new(paper, cfg.mode) };
    let x = paper.abstract_text.clone();

    let ctx = RoleContext {
        paper_abstract: Some(x.clone()),
        demonstration: cfg.one_shot.clone(),
        ..Default::default()
    };
    let p0 = run.step(Step::InitialWriting, 0, roles.get(AgentKind::Journalist)?, &ctx, |raw| {
        let body = extraction::parse_article(raw).map_err(parse_cause)?;
        copy_check(cfg, &x, &body)?;
        Ok(body)
    })?;
    run.trace.articles.push(Article { body: p0, iteration: 0 });

    for i in 1..=cfg.iterations {
        let prev = run.trace.articles[i - 1].body.clone();
        let base = RoleContext {
            paper_abstract: Some(x.clone()),
            article: Some(prev.clone()),
            ..Default::default()
        };

        let notes = if cfg.mode.uses_reader() {
            let ctx = RoleContext { paper_abstract: None, ..base.clone() };
            let notes = run.step(Step::Reading, i, roles.get(AgentKind::Reader)?, &ctx, |raw| {
                extraction::parse_notes(raw).map_err(parse_cause)
            })?;
            run.trace.notes.push(notes.clone());
            Some(notes)
        } else {
            None
        };

        let advice = match cfg.mode {
            Mode::Full | Mode::NoReading => {
                let (kind, ctx) = match &notes {
                    Some(n) => (AgentKind::Editor, RoleContext { notes: Some(n.to_protocol()), ..base.clone() }),
                    None => (AgentKind::DirectEditor, base.clone()),
                };
                let fb = run.step(Step::Editing, i, roles.get(kind)?, &ctx, |raw| {
                    extraction::parse_feedback(raw).map_err(parse_cause)
                })?;
                let text = fb.advice_text();
                run.trace.feedback.push(fb);
                Some(text)
            }
            Mode::NoSuggestions => notes.as_ref().map(ReaderNotes::explanations_as_advice),
            Mode::NoCollaboration => None,
        };

        let (kind, ctx) = match advice {
            Some(a) => (AgentKind::Revision, RoleContext { advice: Some(a), ..base }),
            None => (AgentKind::SelfRevision, base),
        };
        let (body, improvement) = run.step(Step::Revision, i, roles.get(kind)?, &ctx, |raw| {
            let (body, improvement) = parse_revised(raw).map_err(parse_cause)?;
            copy_check(cfg, &x, &body)?;
            Ok((body, improvement))
        })?;
        run.trace.articles.push(Article { body, iteration: i });
        run.trace.improvements.push(improvement);
    }
    Ok(run.trace)
}

fn copy_check(cfg: &PipelineConfig, source: &str, article: &str) -> Result<(), FailureCause> {
    if detect_copy_with(article, source, cfg.copy_threshold) {
        return Err(FailureCause::CopiedSource { containment: extraction::containment(article, source) });
    }
    Ok(())
}

/// The article after round `k`.
pub fn select_output(trace: &IterationTrace, k: usize) -> Result<&Article, PipelineError> {
    trace.articles.get(k).ok_or(PipelineError::IterationOutOfRange {
        requested: k,
        available: trace.iterations(),
    })
}

/// Result of a batch run; one entry per input paper, in input order.
#[derive(Debug, Clone)]
pub struct CorpusRun {
    pub results: Vec<Result<IterationTrace, PipelineError>>,
}

impl CorpusRun {
    pub fn traces(&self) -> impl Iterator<Item = &IterationTrace> {
        self.results.iter().filter_map(|r| r.as_ref().ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &PipelineError> {
        self.results.iter().filter_map(|r| r.as_ref().err())
    }
}

/// Runs every paper with at most `worker_cap` documents in flight. A failing
/// document does not stop the batch.
pub fn run_corpus(papers: &[Paper], cfg: &PipelineConfig, roles: &RoleSet, worker_cap: usize) -> CorpusRun {
    run_corpus_with(papers, cfg, roles, worker_cap, |_, _| {})
}

/// As [`run_corpus`], calling `on_done(index, result)` as each document finishes.
pub fn run_corpus_with<F>(
    papers: &[Paper],
    cfg: &PipelineConfig,
    roles: &RoleSet,
    worker_cap: usize,
    on_done: F,
) -> CorpusRun
where
    F: Fn(usize, &Result<IterationTrace, PipelineError>) + Sync,
{
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<IterationTrace, PipelineError>>>> =
        Mutex::new((0..papers.len()).map(|_| None).collect());
    let workers = worker_cap.max(1).min(papers.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(paper) = papers.get(i) else { break };
                let result = run_document(paper, cfg, roles);
                on_done(i, &result);
                slots.lock().unwrap_or_else(|e| e.into_inner())[i] = Some(result);
            });
        }
    });
    let results = slots
        .into_inner()
        .unwrap_or_else(|e| e.into_inner())
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect();
    CorpusRun { results }
}
