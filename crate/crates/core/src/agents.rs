//! Agent roles: prompt templates plus the backend each role talks to.
//!
//! Templates are data. The system message is the role prompt verbatim; the
//! user message is a template with `{placeholder}` markers filled from a
//! [`RoleContext`]. A one-shot demonstration, when given to the journalist,
//! is placed before the paper summary.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::llm::{ChatBackend, ChatMessage, LlmError, SamplingParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentKind {
    Journalist,
    Reader,
    Editor,
    Revision,
    /// Editor variant that advises without reader notes.
    DirectEditor,
    /// Revision variant that works without any outside input.
    SelfRevision,
}

impl AgentKind {
    pub const ALL: [AgentKind; 6] = [
        AgentKind::Journalist,
        AgentKind::Reader,
        AgentKind::Editor,
        AgentKind::Revision,
        AgentKind::DirectEditor,
        AgentKind::SelfRevision,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AgentKind::Journalist => "journalist",
            AgentKind::Reader => "reader",
            AgentKind::Editor => "editor",
            AgentKind::Revision => "revision",
            AgentKind::DirectEditor => "direct_editor",
            AgentKind::SelfRevision => "self_revision",
        }
    }

    /// Context keys the user template must reference, exactly.
    pub fn required_keys(self) -> &'static [&'static str] {
        match self {
            AgentKind::Journalist => &["paper_abstract"],
            AgentKind::Reader => &["article"],
            AgentKind::Editor => &["paper_abstract", "article", "notes"],
            AgentKind::Revision => &["paper_abstract", "article", "advice"],
            AgentKind::DirectEditor | AgentKind::SelfRevision => &["paper_abstract", "article"],
        }
    }

    pub fn default_system_prompt(self) -> &'static str {
        match self {
            AgentKind::Journalist => include_str!("../prompts/journalist.system.txt"),
            AgentKind::Reader => include_str!("../prompts/reader.system.txt"),
            AgentKind::Editor => include_str!("../prompts/editor.system.txt"),
            AgentKind::Revision => include_str!("../prompts/revision.system.txt"),
            AgentKind::DirectEditor => include_str!("../prompts/direct_editor.system.txt"),
            AgentKind::SelfRevision => include_str!("../prompts/self_revision.system.txt"),
        }
    }

    pub fn default_user_template(self) -> &'static str {
        match self {
            AgentKind::Journalist => include_str!("../prompts/journalist.user.txt"),
            AgentKind::Reader => include_str!("../prompts/reader.user.txt"),
            AgentKind::Editor => include_str!("../prompts/editor.user.txt"),
            AgentKind::Revision => include_str!("../prompts/revision.user.txt"),
            AgentKind::DirectEditor => include_str!("../prompts/direct_editor.user.txt"),
            AgentKind::SelfRevision => include_str!("../prompts/self_revision.user.txt"),
        }
    }
}

impl fmt::Display for AgentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgentError {
    #[error("missing context field `{0}`")]
    MissingContext(&'static str),
    #[error("{kind} template: {message}")]
    Template { kind: AgentKind, message: String },
    #[error("{kind}: {source}")]
    Llm { kind: AgentKind, source: LlmError },
}

/// Everything a role may be shown. Which fields are required depends on the role.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoleContext {
    pub paper_abstract: Option<String>,
    pub article: Option<String>,
    pub notes: Option<String>,
    pub advice: Option<String>,
    pub demonstration: Option<String>,
}

impl RoleContext {
    fn field(&self, key: &str) -> Option<&str> {
        let v = match key {
            "paper_abstract" => &self.paper_abstract,
            "article" => &self.article,
            "notes" => &self.notes,
            "advice" => &self.advice,
            _ => return None,
        };
        v.as_deref().filter(|s| !s.trim().is_empty())
    }
}

/// Formats one (abstract, article) pair as a worked example for the journalist.
pub fn format_demonstration(example_abstract: &str, example_article: &str) -> String {
    format!(
        "Example paper summary:\n{}\n\nExample output:\n## Article\n{}",
        example_abstract.trim(),
        example_article.trim()
    )
}

enum Piece {
    Text(String),
    Slot(String),
}

/// Splits a template into literal text and `{name}` slots. Braces that do not
/// enclose a lowercase identifier are kept as text.
fn parse_template(template: &str) -> Vec<Piece> {
    let mut pieces = Vec::new();
    let mut text = String::new();
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        text.push_str(&rest[..open]);
        let after = &rest[open + 1..];
        let name_len = after
            .find(|c: char| !(c.is_ascii_lowercase() || c == '_'))
            .unwrap_or(after.len());
        if name_len > 0 && after[name_len..].starts_with('}') {
            if !text.is_empty() {
                pieces.push(Piece::Text(std::mem::take(&mut text)));
            }
            pieces.push(Piece::Slot(after[..name_len].to_string()));
            rest = &after[name_len + 1..];
        } else {
            text.push('{');
            rest = after;
        }
    }
    text.push_str(rest);
    if !text.is_empty() {
        pieces.push(Piece::Text(text));
    }
    pieces
}

pub fn template_placeholders(template: &str) -> BTreeSet<String> {
    parse_template(template)
        .into_iter()
        .filter_map(|p| match p {
            Piece::Slot(s) => Some(s),
            Piece::Text(_) => None,
        })
        .collect()
}

/// A configured agent: prompts, sampling settings and a backend.
#[derive(Clone)]
pub struct AgentRole {
    kind: AgentKind,
    system_prompt: String,
    user_template: String,
    params: SamplingParams,
    backend: Arc<dyn ChatBackend>,
}

impl fmt::Debug for AgentRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AgentRole")
            .field("kind", &self.kind)
            .field("backend", &self.backend.describe())
            .finish_non_exhaustive()
    }
}

impl AgentRole {
    /// Role with the shipped prompts.
    pub fn new(kind: AgentKind, backend: Arc<dyn ChatBackend>, params: SamplingParams) -> Self {
        Self {
            kind,
            system_prompt: kind.default_system_prompt().trim_end_matches('\n').to_string(),
            user_template: kind.default_user_template().trim_end_matches('\n').to_string(),
            params,
            backend,
        }
    }

    /// Replaces the prompts. The user template must reference exactly the
    /// role's required context keys.
    pub fn with_prompts(mut self, system_prompt: &str, user_template: &str) -> Result<Self, AgentError> {
        validate_template(self.kind, user_template)?;
        if system_prompt.trim().is_empty() {
            return Err(AgentError::Template { kind: self.kind, message: "empty system prompt".into() });
        }
        self.system_prompt = system_prompt.trim_end_matches('\n').to_string();
        self.user_template = user_template.trim_end_matches('\n').to_string();
        Ok(self)
    }

    /// Loads `<kind>.system.txt` and `<kind>.user.txt` from `dir`, keeping the
    /// shipped version of any file that is absent.
    pub fn with_prompt_dir(self, dir: &Path) -> Result<Self, AgentError> {
        let read = |suffix: &str, fallback: &str| -> Result<String, AgentError> {
            let p = dir.join(format!("{}.{suffix}.txt", self.kind.name()));
            if p.is_file() {
                std::fs::read_to_string(&p).map_err(|e| AgentError::Template {
                    kind: self.kind,
                    message: format!("{}: {e}", p.display()),
                })
            } else {
                Ok(fallback.to_string())
            }
        };
        let system = read("system", &self.system_prompt)?;
        let user = read("user", &self.user_template)?;
        self.with_prompts(&system, &user)
    }

    pub fn kind(&self) -> AgentKind {
        self.kind
    }

    pub fn system_prompt(&self) -> &str {
        &self.system_prompt
    }

    pub fn params(&self) -> &SamplingParams {
        &self.params
    }

    pub fn backend(&self) -> &Arc<dyn ChatBackend> {
        &self.backend
    }

    /// Builds the (system, user) message pair for `ctx`.
    pub fn render_messages(&self, ctx: &RoleContext) -> Result<Vec<ChatMessage>, AgentError> {
        for key in self.kind.required_keys() {
            if ctx.field(key).is_none() {
                return Err(AgentError::MissingContext(key));
            }
        }
        let mut user = String::new();
        if self.kind == AgentKind::Journalist {
            if let Some(demo) = ctx.demonstration.as_deref().filter(|d| !d.trim().is_empty()) {
                user.push_str(demo.trim_end());
                user.push_str("\n\n");
            }
        }
        for piece in parse_template(&self.user_template) {
            match piece {
                Piece::Text(t) => user.push_str(&t),
                Piece::Slot(name) => match ctx.field(&name) {
                    Some(v) => user.push_str(v),
                    None => {
                        return Err(AgentError::Template {
                            kind: self.kind,
                            message: format!("unknown placeholder {{{name}}}"),
                        })
                    }
                },
            }
        }
        Ok(vec![ChatMessage::system(self.system_prompt.clone()), ChatMessage::user(user)])
    }

    /// Renders, sends, and returns the raw completion.
    pub fn invoke(&self, ctx: &RoleContext) -> Result<String, AgentError> {
        let messages = self.render_messages(ctx)?;
        self.invoke_messages(&messages)
    }

    /// Sends already-rendered messages, for retries that must resend the same request.
    pub fn invoke_messages(&self, messages: &[ChatMessage]) -> Result<String, AgentError> {
        self.backend
            .complete(&self.params, messages)
            .map_err(|source| AgentError::Llm { kind: self.kind, source })
    }
}

pub fn validate_template(kind: AgentKind, template: &str) -> Result<(), AgentError> {
    let found = template_placeholders(template);
    let expected: BTreeSet<String> = kind.required_keys().iter().map(|s| s.to_string()).collect();
    if found != expected {
        return Err(AgentError::Template {
            kind,
            message: format!("placeholders {found:?} do not match required keys {expected:?}"),
        });
    }
    Ok(())
}

/// Parameter count in billions parsed from a model name such as
/// `Qwen/Qwen1.5-1.8B-Chat`, if one is present.
pub fn model_size_billions(model_name: &str) -> Option<f64> {
    let lower = model_name.to_ascii_lowercase();
    let bytes = lower.as_bytes();
    let mut best = None;
    for (i, &b) in bytes.iter().enumerate() {
        if b != b'b' || i == 0 || !bytes[i - 1].is_ascii_digit() {
            continue;
        }
        if bytes.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric()) {
            continue;
        }
        let start = lower[..i]
            .rfind(|c: char| !(c.is_ascii_digit() || c == '.'))
            .map_or(0, |p| p + 1);
        if let Ok(v) = lower[start..i].trim_start_matches('.').parse::<f64>() {
            best = Some(v);
        }
    }
    best
}

/// Warns when the reader is not configured with a smaller model than the
/// journalist and editor. Returns the warnings; never fails.
pub fn lint_reader_model(reader: &str, journalist: &str, editor: &str) -> Vec<String> {
    let mut warnings = Vec::new();
    for (other_role, other) in [("journalist", journalist), ("editor", editor)] {
        match (model_size_billions(reader), model_size_billions(other)) {
            (Some(r), Some(o)) if r >= o => warnings.push(format!(
                "reader model {reader} ({r}B) is not smaller than the {other_role} model {other} ({o}B)"
            )),
            (None, _) | (_, None) if reader == other => warnings.push(format!(
                "reader uses the same model as the {other_role} ({reader}); a smaller reader is expected"
            )),
            _ => {}
        }
    }
    warnings
}
