use std::sync::{Condvar, Mutex};
use std::time::Duration;

use super::{check_messages, parse_completion, ChatBackend, ChatMessage, ChatRequest, EndpointConfig, LlmError, SamplingParams};

/// Status code and body of one HTTP exchange.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HttpReply {
    pub status: u16,
    pub body: String,
}

/// One POST of a JSON body. Implementations report network failures as
/// `LlmError::Transport` or `LlmError::Timeout`; status handling is the client's job.
pub trait Transport: Send + Sync {
    fn post_json(
        &self,
        url: &str,
        bearer: Option<&str>,
        body: &str,
        timeout: Duration,
    ) -> Result<HttpReply, LlmError>;
}

/// Blocking HTTP transport.
pub struct UreqTransport {
    agent: ureq::Agent,
}

impl UreqTransport {
    pub fn new(timeout: Duration) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .http_status_as_error(false)
            .build()
            .into();
        Self { agent }
    }
}

impl Transport for UreqTransport {
    fn post_json(
        &self,
        url: &str,
        bearer: Option<&str>,
        body: &str,
        _timeout: Duration,
    ) -> Result<HttpReply, LlmError> {
        let mut req = self.agent.post(url).header("Content-Type", "application/json");
        if let Some(key) = bearer {
            req = req.header("Authorization", &format!("Bearer {key}"));
        }
        let mut resp = req.send(body).map_err(map_ureq_error)?;
        let status = resp.status().as_u16();
        let body = resp.body_mut().read_to_string().map_err(map_ureq_error)?;
        Ok(HttpReply { status, body })
    }
}

fn map_ureq_error(e: ureq::Error) -> LlmError {
    match e {
        ureq::Error::Timeout(_) => LlmError::Timeout { attempts: 1 },
        ureq::Error::Io(io) if io.kind() == std::io::ErrorKind::TimedOut => LlmError::Timeout { attempts: 1 },
        other => LlmError::Transport { message: other.to_string(), attempts: 1 },
    }
}

/// Counting semaphore bounding in-flight requests.
struct Gate {
    free: Mutex<usize>,
    cv: Condvar,
}

impl Gate {
    fn new(n: usize) -> Self {
        Self { free: Mutex::new(n.max(1)), cv: Condvar::new() }
    }

    fn acquire(&self) -> GateGuard<'_> {
        let mut free = self.free.lock().unwrap_or_else(|e| e.into_inner());
        while *free == 0 {
            free = self.cv.wait(free).unwrap_or_else(|e| e.into_inner());
        }
        *free -= 1;
        GateGuard(self)
    }
}

struct GateGuard<'a>(&'a Gate);

impl Drop for GateGuard<'_> {
    fn drop(&mut self) {
        *self.0.free.lock().unwrap_or_else(|e| e.into_inner()) += 1;
        self.0.cv.notify_one();
    }
}

/// OpenAI-compatible chat client with retry and exponential backoff.
pub struct ChatClient<T: Transport = UreqTransport> {
    endpoint: EndpointConfig,
    transport: T,
    gate: Gate,
}

impl ChatClient<UreqTransport> {
    pub fn new(endpoint: EndpointConfig) -> Self {
        let transport = UreqTransport::new(endpoint.timeout());
        Self::with_transport(endpoint, transport)
    }
}

impl<T: Transport> ChatClient<T> {
    pub fn with_transport(endpoint: EndpointConfig, transport: T) -> Self {
        let gate = Gate::new(endpoint.max_connections);
        Self { endpoint, transport, gate }
    }

    pub fn endpoint(&self) -> &EndpointConfig {
        &self.endpoint
    }

    fn attempt(&self, url: &str, body: &str) -> Result<String, LlmError> {
        let _slot = self.gate.acquire();
        let reply = self
            .transport
            .post_json(url, self.endpoint.api_key.as_deref(), body, self.endpoint.timeout())?;
        match reply.status {
            200..=299 => parse_completion(&reply.body),
            401 | 403 => Err(LlmError::Auth { status: reply.status }),
            status => Err(LlmError::HttpStatus {
                status,
                body: reply.body.chars().take(500).collect(),
            }),
        }
    }
}

impl<T: Transport> ChatBackend for ChatClient<T> {
    fn complete(&self, params: &SamplingParams, messages: &[ChatMessage]) -> Result<String, LlmError> {
        check_messages(messages)?;
        let request = ChatRequest::new(&self.endpoint, params, messages);
        let body = serde_json::to_string(&request)
            .map_err(|e| LlmError::InvalidRequest(e.to_string()))?;
        let url = self.endpoint.completions_url();

        let mut backoff = Duration::from_millis(self.endpoint.retry_backoff_ms);
        let mut attempts = 0u32;
        loop {
            attempts += 1;
            match self.attempt(&url, &body) {
                Ok(text) => return Ok(text),
                Err(e) if e.retryable() && attempts <= self.endpoint.max_retries => {
                    log::warn!("{} attempt {attempts} failed: {e}; retrying", self.endpoint.base_url);
                    std::thread::sleep(backoff);
                    backoff = backoff.saturating_mul(2);
                }
                Err(e) => return Err(e.with_attempts(attempts)),
            }
        }
    }

    fn describe(&self) -> String {
        format!("{} @ {}", self.endpoint.model_name, self.endpoint.base_url)
    }
}
