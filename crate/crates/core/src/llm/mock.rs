use std::collections::{HashMap, VecDeque};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use super::{check_messages, ChatBackend, ChatMessage, LlmError, SamplingParams};

type Script = dyn Fn(&[ChatMessage]) -> Result<String, LlmError> + Send + Sync;

enum Responder {
    Canned(String),
    Cycle(Vec<String>),
    Script(Box<Script>),
}

/// In-process backend for tests: canned, cycling or scripted replies, with a
/// call counter and a log of every request.
pub struct MockBackend {
    responder: Responder,
    calls: AtomicUsize,
    requests: Mutex<Vec<Vec<ChatMessage>>>,
}

impl MockBackend {
    fn with(responder: Responder) -> Self {
        Self { responder, calls: AtomicUsize::new(0), requests: Mutex::new(Vec::new()) }
    }

    pub fn canned(reply: impl Into<String>) -> Self {
        Self::with(Responder::Canned(reply.into()))
    }

    /// Replies in order, wrapping around.
    pub fn cycle<I, S>(replies: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let replies: Vec<String> = replies.into_iter().map(Into::into).collect();
        assert!(!replies.is_empty(), "cycle needs at least one reply");
        Self::with(Responder::Cycle(replies))
    }

    pub fn scripted<F>(f: F) -> Self
    where
        F: Fn(&[ChatMessage]) -> Result<String, LlmError> + Send + Sync + 'static,
    {
        Self::with(Responder::Script(Box::new(f)))
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    pub fn requests(&self) -> Vec<Vec<ChatMessage>> {
        self.requests.lock().unwrap_or_else(|e| e.into_inner()).clone()
    }
}

impl ChatBackend for MockBackend {
    fn complete(&self, _params: &SamplingParams, messages: &[ChatMessage]) -> Result<String, LlmError> {
        check_messages(messages)?;
        let n = self.calls.fetch_add(1, Ordering::SeqCst);
        self.requests
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .push(messages.to_vec());
        match &self.responder {
            Responder::Canned(r) => Ok(r.clone()),
            Responder::Cycle(rs) => Ok(rs[n % rs.len()].clone()),
            Responder::Script(f) => f(messages),
        }
    }

    fn describe(&self) -> String {
        "mock".to_string()
    }
}

/// Stable key for a rendered request.
pub fn request_key(messages: &[ChatMessage]) -> String {
    let mut h = Sha256::new();
    for m in messages {
        h.update(format!("{:?}", m.role).as_bytes());
        h.update([0u8]);
        h.update(m.content.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Replays recorded (request, response) pairs.
///
/// Repeated identical requests consume recorded replies in order; the last
/// one is kept and served again once the queue runs dry.
#[derive(Default)]
pub struct TranscriptReplay {
    replies: Mutex<HashMap<String, VecDeque<String>>>,
}

impl TranscriptReplay {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self, messages: &[ChatMessage], response: impl Into<String>) {
        self.replies
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .entry(request_key(messages))
            .or_default()
            .push_back(response.into());
    }

    pub fn len(&self) -> usize {
        self.replies.lock().unwrap_or_else(|e| e.into_inner()).values().map(VecDeque::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Reads every line of a JSONL file that carries `messages` and `response`
    /// fields; other lines are skipped.
    pub fn load_jsonl(&self, path: &Path) -> std::io::Result<usize> {
        let text = std::fs::read_to_string(path)?;
        let mut n = 0;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let Ok(v) = serde_json::from_str::<serde_json::Value>(line) else { continue };
            let (Some(msgs), Some(resp)) = (v.get("messages"), v.get("response").and_then(|r| r.as_str()))
            else {
                continue;
            };
            if let Ok(messages) = serde_json::from_value::<Vec<ChatMessage>>(msgs.clone()) {
                self.record(&messages, resp);
                n += 1;
            }
        }
        Ok(n)
    }

    pub fn lookup(&self, messages: &[ChatMessage]) -> Option<String> {
        let mut map = self.replies.lock().unwrap_or_else(|e| e.into_inner());
        let queue = map.get_mut(&request_key(messages))?;
        if queue.len() > 1 {
            queue.pop_front()
        } else {
            queue.front().cloned()
        }
    }
}

impl ChatBackend for TranscriptReplay {
    fn complete(&self, _params: &SamplingParams, messages: &[ChatMessage]) -> Result<String, LlmError> {
        check_messages(messages)?;
        self.lookup(messages).ok_or_else(|| LlmError::Transport {
            message: format!("no recorded reply for request {}", &request_key(messages)[..12]),
            attempts: 1,
        })
    }

    fn describe(&self) -> String {
        "transcript-replay".to_string()
    }
}

/// Offline backend read from a fixture directory.
///
/// Recorded transcripts (`*.jsonl` files with `messages`/`response` lines)
/// take priority. Otherwise the reply is one of the role's canned files,
/// `<role>.md` or `<role>/*.md`, picked by a hash of the request so the
/// choice is deterministic.
pub struct FixtureDirBackend {
    label: String,
    replay: Arc<TranscriptReplay>,
    canned: Vec<String>,
}

impl FixtureDirBackend {
    /// `role_names` are tried in order; the first with canned files wins.
    pub fn load(dir: &Path, role_names: &[&str], replay: Arc<TranscriptReplay>) -> std::io::Result<Self> {
        let mut canned = Vec::new();
        for role in role_names {
            let single = dir.join(format!("{role}.md"));
            if single.is_file() {
                canned.push(std::fs::read_to_string(&single)?);
            }
            let sub = dir.join(role);
            if sub.is_dir() {
                let mut files: Vec<_> = std::fs::read_dir(&sub)?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "md"))
                    .collect();
                files.sort();
                for f in files {
                    canned.push(std::fs::read_to_string(f)?);
                }
            }
            if !canned.is_empty() {
                break;
            }
        }
        Ok(Self { label: format!("fixture:{}:{}", dir.display(), role_names[0]), replay, canned })
    }

    /// Loads every `*.jsonl` transcript in `dir` into one shared replay table.
    pub fn load_transcripts(dir: &Path) -> std::io::Result<Arc<TranscriptReplay>> {
        let replay = TranscriptReplay::new();
        if dir.is_dir() {
            let mut files: Vec<_> = std::fs::read_dir(dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
                .collect();
            files.sort();
            for f in files {
                replay.load_jsonl(&f)?;
            }
        }
        Ok(Arc::new(replay))
    }

    pub fn canned_count(&self) -> usize {
        self.canned.len()
    }
}

impl ChatBackend for FixtureDirBackend {
    fn complete(&self, _params: &SamplingParams, messages: &[ChatMessage]) -> Result<String, LlmError> {
        check_messages(messages)?;
        if let Some(r) = self.replay.lookup(messages) {
            return Ok(r);
        }
        if self.canned.is_empty() {
            return Err(LlmError::Transport {
                message: format!("{}: no transcript and no canned reply", self.label),
                attempts: 1,
            });
        }
        let key = request_key(messages);
        let idx = u64::from_str_radix(&key[..12], 16).unwrap_or(0) as usize % self.canned.len();
        Ok(self.canned[idx].clone())
    }

    fn describe(&self) -> String {
        self.label.clone()
    }
}
