//! Parsing of the markdown section protocol the agents exchange.
//!
//! Every agent answers with `#`-headed sections: the journalist with
//! `## Article`, the reader with `### Extraction` / `### Explanation`, the
//! editor with `## Evaluation for reader's notes` / `## Advice` and the
//! revising journalist with `## Improvement` / `## Revised Article`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text_metrics::tokenize::word_tokens;

pub const ARTICLE: &str = "Article";
pub const EXTRACTION: &str = "Extraction";
pub const EXPLANATION: &str = "Explanation";
pub const EVALUATION: &str = "Evaluation for reader's notes";
pub const ADVICE: &str = "Advice";
pub const IMPROVEMENT: &str = "Improvement";
pub const REVISED_ARTICLE: &str = "Revised Article";

const ACCURACY_LABEL: &str = "Content accuracy of reader's notes";
const COMPLEXITY_LABEL: &str = "Lexical and technical complexity of reader's notes";
const CONVEYANCE_LABEL: &str = "Information conveyance of reader's notes";

/// Containment ratio at or above which a text counts as a copy.
pub const DEFAULT_COPY_THRESHOLD: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum ExtractError {
    #[error("section \"{0}\" not found")]
    SectionNotFound(String),
    #[error("section \"{0}\" is empty")]
    EmptySection(String),
    #[error("section \"{0}\" has no numbered items")]
    EmptyItems(String),
    #[error("advice section has no numbered items")]
    EmptyAdvice,
}

/// Reader notes: extracted technical terms and their explanations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReaderNotes {
    pub extraction_items: Vec<String>,
    pub explanation_items: Vec<String>,
    pub raw: String,
}

/// The editor's evaluation of the reader notes and its ordered advice list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditorFeedback {
    pub accuracy_eval: String,
    pub complexity_eval: String,
    pub conveyance_eval: String,
    pub advice_items: Vec<String>,
    pub raw: String,
}

/// One version of the popular-science article; iteration 0 is the initial writing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Article {
    pub body: String,
    pub iteration: usize,
}

/// Output of a revision step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Revision {
    pub improvement: Option<String>,
    pub article: String,
}

struct Heading<'a> {
    level: usize,
    text: &'a str,
}

fn parse_heading(line: &str) -> Option<Heading<'_>> {
    let t = line.trim_start();
    let level = t.chars().take_while(|&c| c == '#').count();
    if level == 0 || level > 6 {
        return None;
    }
    let rest = &t[level..];
    if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
        return None;
    }
    Some(Heading {
        level,
        text: rest.trim().trim_end_matches('#').trim(),
    })
}

/// A bare line standing in for a heading, e.g. `**Advice**` or `Advice:`.
fn pseudo_heading_text(line: &str) -> Option<&str> {
    let t = line.trim();
    if let Some(inner) = t.strip_prefix("**").and_then(|s| s.strip_suffix("**")) {
        return Some(inner.trim().trim_end_matches(':').trim());
    }
    t.strip_suffix(':').map(str::trim)
}

fn normalize(text: &str) -> String {
    text.replace('\u{2019}', "'").to_lowercase()
}

/// Returns the trimmed body under the first heading titled `heading`.
///
/// Matching tries, in order: exact heading text, case-insensitive text, then
/// un-hashed pseudo-headings such as `**Advice**`. The body runs to the next
/// heading of the same or a higher level, or to the end of input.
pub fn extract_section(raw: &str, heading: &str) -> Result<String, ExtractError> {
    let lines: Vec<&str> = raw.lines().collect();
    let wanted = heading.trim();
    let wanted_norm = normalize(wanted);

    let found = lines
        .iter()
        .enumerate()
        .find_map(|(i, l)| parse_heading(l).filter(|h| h.text == wanted).map(|h| (i, h.level)))
        .or_else(|| {
            lines.iter().enumerate().find_map(|(i, l)| {
                parse_heading(l)
                    .filter(|h| normalize(h.text) == wanted_norm)
                    .map(|h| (i, h.level))
            })
        })
        .or_else(|| {
            lines.iter().enumerate().find_map(|(i, l)| {
                pseudo_heading_text(l)
                    .filter(|t| normalize(t) == wanted_norm)
                    .map(|_| (i, 0))
            })
        });

    let (start, level) = found.ok_or_else(|| ExtractError::SectionNotFound(wanted.to_string()))?;
    let end = lines[start + 1..]
        .iter()
        .position(|l| parse_heading(l).is_some_and(|h| level == 0 || h.level <= level))
        .map_or(lines.len(), |p| start + 1 + p);
    let body = lines[start + 1..end].join("\n");
    let body = body.trim();
    if body.is_empty() {
        return Err(ExtractError::EmptySection(wanted.to_string()));
    }
    Ok(body.to_string())
}

fn item_marker(line: &str) -> Option<&str> {
    let t = line.trim_start();
    let digits = t.chars().take_while(char::is_ascii_digit).count();
    if digits == 0 {
        return None;
    }
    let rest = &t[digits..];
    let rest = rest.strip_prefix('.')?;
    if rest.starts_with([' ', '\t']) {
        Some(rest.trim_start())
    } else {
        None
    }
}

/// Splits a section body into numbered items. Lines before the first marker
/// are ignored; non-blank lines after a marker continue the current item.
pub fn split_items(body: &str) -> Vec<String> {
    let mut items: Vec<String> = Vec::new();
    for line in body.lines() {
        if let Some(content) = item_marker(line) {
            items.push(content.to_string());
        } else if let Some(current) = items.last_mut() {
            if !line.trim().is_empty() {
                current.push('\n');
                current.push_str(line);
            }
        }
    }
    items.into_iter().map(|i| i.trim().to_string()).collect()
}

fn numbered(items: &[String]) -> String {
    items
        .iter()
        .enumerate()
        .map(|(i, item)| format!("{}. {}", i + 1, item))
        .collect::<Vec<_>>()
        .join("\n")
}

fn items_of(raw: &str, heading: &str) -> Result<Vec<String>, ExtractError> {
    let items = match extract_section(raw, heading) {
        Ok(body) => split_items(&body),
        Err(ExtractError::EmptySection(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    if items.is_empty() {
        return Err(ExtractError::EmptyItems(heading.to_string()));
    }
    Ok(items)
}

pub fn parse_notes(raw: &str) -> Result<ReaderNotes, ExtractError> {
    Ok(ReaderNotes {
        extraction_items: items_of(raw, EXTRACTION)?,
        explanation_items: items_of(raw, EXPLANATION)?,
        raw: raw.to_string(),
    })
}

impl ReaderNotes {
    /// Renders the notes back into the reader's output format.
    pub fn to_protocol(&self) -> String {
        format!(
            "### {EXTRACTION}\n{}\n### {EXPLANATION}\n{}\n",
            numbered(&self.extraction_items),
            numbered(&self.explanation_items)
        )
    }

    /// Explanation items as a numbered list, used where notes stand in for advice.
    pub fn explanations_as_advice(&self) -> String {
        numbered(&self.explanation_items)
    }
}

fn strip_bullet(line: &str) -> &str {
    let t = line.trim_start();
    if let Some(rest) = t.strip_prefix("- ").or_else(|| t.strip_prefix("* ")) {
        return rest;
    }
    item_marker(t).unwrap_or(t)
}

fn eval_fields(body: &str) -> HashMap<&'static str, String> {
    let labels = [ACCURACY_LABEL, COMPLEXITY_LABEL, CONVEYANCE_LABEL];
    let mut out = HashMap::new();
    let mut current: Option<&'static str> = None;
    for line in body.lines() {
        let content = strip_bullet(line).trim_start_matches("**");
        let norm = normalize(content);
        let hit = labels.iter().find(|l| {
            let key = normalize(l);
            let short = key.trim_end_matches(" of reader's notes").to_string();
            norm.starts_with(&key) || norm.starts_with(&short)
        });
        if let Some(&label) = hit {
            let value = content
                .split_once(':')
                .map(|(_, v)| v.trim().trim_start_matches("**").trim())
                .unwrap_or("");
            out.insert(label, value.to_string());
            current = Some(label);
        } else if let Some(label) = current {
            if !line.trim().is_empty() {
                let v = out.entry(label).or_default();
                if !v.is_empty() {
                    v.push('\n');
                }
                v.push_str(line.trim());
            }
        }
    }
    out
}

/// Parses editor output. Evaluation bullets are optional; the advice list is not.
pub fn parse_feedback(raw: &str) -> Result<EditorFeedback, ExtractError> {
    let advice_items = match items_of(raw, ADVICE) {
        Ok(items) => items,
        Err(ExtractError::EmptyItems(_)) => return Err(ExtractError::EmptyAdvice),
        Err(e) => return Err(e),
    };
    let mut evals = extract_section(raw, EVALUATION)
        .map(|b| eval_fields(&b))
        .unwrap_or_default();
    Ok(EditorFeedback {
        accuracy_eval: evals.remove(ACCURACY_LABEL).unwrap_or_default(),
        complexity_eval: evals.remove(COMPLEXITY_LABEL).unwrap_or_default(),
        conveyance_eval: evals.remove(CONVEYANCE_LABEL).unwrap_or_default(),
        advice_items,
        raw: raw.to_string(),
    })
}

impl EditorFeedback {
    /// Renders the feedback back into the editor's output format. Empty
    /// evaluation fields are left out.
    pub fn to_protocol(&self) -> String {
        let bullets: Vec<String> = [
            (ACCURACY_LABEL, &self.accuracy_eval),
            (COMPLEXITY_LABEL, &self.complexity_eval),
            (CONVEYANCE_LABEL, &self.conveyance_eval),
        ]
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(l, v)| format!("- {l}: {v}"))
        .collect();
        let mut out = String::new();
        if !bullets.is_empty() {
            out.push_str(&format!("## {EVALUATION}\n{}\n", bullets.join("\n")));
        }
        out.push_str(&format!("## {ADVICE}\n{}\n", numbered(&self.advice_items)));
        out
    }

    /// The advice list in the numbered form handed to the revising journalist.
    pub fn advice_text(&self) -> String {
        numbered(&self.advice_items)
    }
}

/// Extracts the article body from initial-writing output.
pub fn parse_article(raw: &str) -> Result<String, ExtractError> {
    extract_section(raw, ARTICLE)
}

/// Extracts the revised article and the optional improvement notes.
pub fn parse_revision(raw: &str) -> Result<Revision, ExtractError> {
    let article = extract_section(raw, REVISED_ARTICLE)?;
    Ok(Revision {
        improvement: extract_section(raw, IMPROVEMENT).ok(),
        article,
    })
}

/// Token-multiset containment: shared tokens over the smaller text's token count.
pub fn containment(a: &str, b: &str) -> f64 {
    let count = |text: &str| {
        let mut m: HashMap<String, usize> = HashMap::new();
        for t in word_tokens(text) {
            *m.entry(t.to_lowercase()).or_default() += 1;
        }
        m
    };
    let (ca, cb) = (count(a), count(b));
    let na: usize = ca.values().sum();
    let nb: usize = cb.values().sum();
    let smaller = na.min(nb);
    if smaller == 0 {
        return if a.trim() == b.trim() { 1.0 } else { 0.0 };
    }
    let shared: usize = ca
        .iter()
        .map(|(tok, &n)| n.min(cb.get(tok).copied().unwrap_or(0)))
        .sum();
    shared as f64 / smaller as f64
}

/// Flags `candidate` as a copy-through of `source`.
pub fn detect_copy(candidate: &str, source: &str) -> bool {
    detect_copy_with(candidate, source, DEFAULT_COPY_THRESHOLD)
}

pub fn detect_copy_with(candidate: &str, source: &str, threshold: f64) -> bool {
    containment(candidate, source) >= threshold
}
