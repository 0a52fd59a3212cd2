//! Chat-completion client for OpenAI-compatible endpoints, plus offline
//! backends (canned replies, scripted closures, transcript replay).

mod http;
mod mock;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use http::{ChatClient, HttpReply, Transport, UreqTransport};
pub use mock::{FixtureDirBackend, MockBackend, TranscriptReplay};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum LlmError {
    #[error("request timed out after {attempts} attempt(s)")]
    Timeout { attempts: u32 },
    #[error("transport failure after {attempts} attempt(s): {message}")]
    Transport { message: String, attempts: u32 },
    #[error("server answered HTTP {status}: {body}")]
    HttpStatus { status: u16, body: String },
    #[error("authentication rejected (HTTP {status})")]
    Auth { status: u16 },
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
}

impl LlmError {
    fn retryable(&self) -> bool {
        match self {
            LlmError::Timeout { .. } | LlmError::Transport { .. } => true,
            LlmError::HttpStatus { status, .. } => *status == 429 || *status >= 500,
            _ => false,
        }
    }

    fn with_attempts(self, n: u32) -> Self {
        match self {
            LlmError::Timeout { .. } => LlmError::Timeout { attempts: n },
            LlmError::Transport { message, .. } => LlmError::Transport { message, attempts: n },
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: Role,
    pub content: String,
}

impl ChatMessage {
    pub fn system(content: impl Into<String>) -> Self {
        Self { role: Role::System, content: content.into() }
    }

    pub fn user(content: impl Into<String>) -> Self {
        Self { role: Role::User, content: content.into() }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        Self { role: Role::Assistant, content: content.into() }
    }
}

/// Where and how to reach one chat-completion server.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EndpointConfig {
    pub base_url: String,
    pub model_name: String,
    /// Bearer token. Only ever set from the environment; never read from or
    /// written to config files.
    #[serde(skip)]
    pub api_key: Option<String>,
    pub timeout_secs: u64,
    pub max_retries: u32,
    /// First backoff delay; doubles on every retry.
    pub retry_backoff_ms: u64,
    /// Upper bound on concurrent in-flight requests through one client.
    pub max_connections: usize,
    /// Send non-standard sampling fields such as `repetition_penalty`.
    pub allow_extensions: bool,
}

impl Default for EndpointConfig {
    fn default() -> Self {
        Self {
            base_url: "http://localhost:8000/v1".to_string(),
            model_name: "Qwen/Qwen1.5-7B-Chat-AWQ".to_string(),
            api_key: None,
            timeout_secs: 300,
            max_retries: 3,
            retry_backoff_ms: 500,
            max_connections: 8,
            allow_extensions: false,
        }
    }
}

impl std::fmt::Debug for EndpointConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EndpointConfig")
            .field("base_url", &self.base_url)
            .field("model_name", &self.model_name)
            .field("api_key", &self.api_key.as_ref().map(|_| "<redacted>"))
            .field("timeout_secs", &self.timeout_secs)
            .field("max_retries", &self.max_retries)
            .field("retry_backoff_ms", &self.retry_backoff_ms)
            .field("max_connections", &self.max_connections)
            .field("allow_extensions", &self.allow_extensions)
            .finish()
    }
}

impl EndpointConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.timeout_secs == 0 {
            return Err("timeout_secs must be > 0".into());
        }
        if self.max_connections == 0 {
            return Err("max_connections must be >= 1".into());
        }
        if self.base_url.trim().is_empty() {
            return Err("base_url is empty".into());
        }
        Ok(())
    }

    pub fn timeout(&self) -> Duration {
        Duration::from_secs(self.timeout_secs)
    }

    pub fn completions_url(&self) -> String {
        format!("{}/chat/completions", self.base_url.trim_end_matches('/'))
    }
}

/// Sampling settings shared by every agent call.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplingParams {
    pub top_p: f64,
    pub frequency_penalty: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repetition_penalty: Option<f64>,
    pub max_tokens: u32,
    /// Absent means the server's default temperature.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
}

impl Default for SamplingParams {
    fn default() -> Self {
        Self {
            top_p: 0.4,
            frequency_penalty: 1.0,
            repetition_penalty: Some(1.0),
            max_tokens: 4096,
            temperature: None,
        }
    }
}

impl SamplingParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.top_p > 0.0 && self.top_p <= 1.0) {
            return Err(format!("top_p must be in (0, 1], got {}", self.top_p));
        }
        if self.max_tokens == 0 {
            return Err("max_tokens must be positive".into());
        }
        Ok(())
    }
}

/// Body of `POST {base_url}/chat/completions`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub messages: Vec<ChatMessage>,
    pub top_p: f64,
    pub frequency_penalty: f64,
    pub max_tokens: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repetition_penalty: Option<f64>,
}

impl ChatRequest {
    pub fn new(endpoint: &EndpointConfig, params: &SamplingParams, messages: &[ChatMessage]) -> Self {
        Self {
            model: endpoint.model_name.clone(),
            messages: messages.to_vec(),
            top_p: params.top_p,
            frequency_penalty: params.frequency_penalty,
            max_tokens: params.max_tokens,
            temperature: params.temperature,
            repetition_penalty: params.repetition_penalty.filter(|_| endpoint.allow_extensions),
        }
    }
}

/// Reads `choices[0].message.content` out of a response body.
pub fn parse_completion(body: &str) -> Result<String, LlmError> {
    let value: serde_json::Value =
        serde_json::from_str(body).map_err(|e| LlmError::MalformedResponse(format!("not JSON: {e}")))?;
    let choice = value
        .get("choices")
        .and_then(|c| c.as_array())
        .and_then(|c| c.first())
        .ok_or_else(|| LlmError::MalformedResponse("missing choices".into()))?;
    choice
        .get("message")
        .and_then(|m| m.get("content"))
        .and_then(|c| c.as_str())
        .map(str::to_string)
        .ok_or_else(|| LlmError::MalformedResponse("missing choices[0].message.content".into()))
}

pub(crate) fn check_messages(messages: &[ChatMessage]) -> Result<(), LlmError> {
    match messages.last() {
        None => Err(LlmError::InvalidRequest("no messages".into())),
        Some(m) if m.role != Role::User => {
            Err(LlmError::InvalidRequest("last message must come from the user".into()))
        }
        _ => {
            if messages
                .iter()
                .any(|m| m.role != Role::Assistant && m.content.trim().is_empty())
            {
                return Err(LlmError::InvalidRequest("empty system or user message".into()));
            }
            Ok(())
        }
    }
}

/// Anything that can answer a chat request.
pub trait ChatBackend: Send + Sync {
    fn complete(&self, params: &SamplingParams, messages: &[ChatMessage]) -> Result<String, LlmError>;

    /// Short human-readable description for logs and lints.
    fn describe(&self) -> String;
}
