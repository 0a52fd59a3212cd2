//! Scripted backends that answer each role in the section protocol.
#![allow(dead_code)]

use std::sync::Arc;

use newsroom::corpus::Paper;
use newsroom::llm::{ChatBackend, ChatMessage, LlmError, MockBackend, SamplingParams};
use newsroom::pipeline::RoleSet;

pub const ABSTRACT: &str = "We present a paper-based microfluidic diagnostic platform that detects \
Plasmodium falciparum antigens in whole blood, interprets results with convolutional neural networks \
and records data on a distributed ledger.";

pub fn paper(id: &str) -> Paper {
    Paper::new(id, ABSTRACT)
}

/// Text after `label` in the user message, up to the next blank line.
pub fn field<'a>(user: &'a str, label: &str) -> Option<&'a str> {
    let start = user.find(label)? + label.len();
    let rest = &user[start..];
    Some(rest.split("\n\n").next().unwrap_or(rest).trim())
}

fn user(msgs: &[ChatMessage]) -> &str {
    &msgs.last().unwrap().content
}

fn system(msgs: &[ChatMessage]) -> &str {
    &msgs[0].content
}

pub fn respond(msgs: &[ChatMessage]) -> Result<String, LlmError> {
    let sys = system(msgs);
    let user = user(msgs);
    if sys.starts_with("You are a general reader") {
        let article = field(user, "Article:\n").unwrap_or("");
        let n = article.split_whitespace().count();
        return Ok(format!(
            "### Extraction\n1. \"test\" - first sentence.\n2. \"phone\" - second sentence.\n\
             ### Explanation\n1. A test checks blood for illness ({n} words read).\n2. A phone runs the app."
        ));
    }
    if sys.starts_with("You are a senior editor") {
        return Ok("## Evaluation for reader's notes\n\
                   - Content accuracy of reader's notes: Mostly right.\n\
                   - Lexical and technical complexity of reader's notes: Simple.\n\
                   - Information conveyance of reader's notes: Clear.\n\
                   ## Advice\n1. Use shorter sentences.\n2. Explain each term once."
            .to_string());
    }
    if let Some(prev) = field(user, "Previous article:\n") {
        let round = prev.matches("Round").count() + 1;
        return Ok(format!(
            "## Improvement\nShorter sentences.\n## Revised Article\n{prev} Round {round} makes it easy."
        ));
    }
    Ok("## Article\nA cheap test on paper can spot malaria. A phone reads it.".to_string())
}

/// Separate counting backends for the journalist side, reader and editor.
pub struct Backends {
    pub journalist: Arc<MockBackend>,
    pub reader: Arc<MockBackend>,
    pub editor: Arc<MockBackend>,
}

impl Backends {
    pub fn new() -> Self {
        Self::with_journalist(MockBackend::scripted(respond))
    }

    pub fn with_journalist(journalist: MockBackend) -> Self {
        Self {
            journalist: Arc::new(journalist),
            reader: Arc::new(MockBackend::scripted(respond)),
            editor: Arc::new(MockBackend::scripted(respond)),
        }
    }

    pub fn roles(&self) -> RoleSet {
        RoleSet::from_backends(
            self.journalist.clone() as Arc<dyn ChatBackend>,
            self.reader.clone() as Arc<dyn ChatBackend>,
            self.editor.clone() as Arc<dyn ChatBackend>,
            SamplingParams::default(),
        )
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.journalist.calls(), self.reader.calls(), self.editor.calls())
    }
}

/// A journalist that writes normally but echoes the abstract when revising.
pub fn echoing_reviser() -> MockBackend {
    MockBackend::scripted(|msgs| {
        let user = &msgs.last().unwrap().content;
        match field(user, "Paper summary:\n") {
            Some(x) if user.contains("Previous article:") => Ok(format!("## Revised Article\n{x}")),
            _ => respond(msgs),
        }
    })
}
