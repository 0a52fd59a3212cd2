//! Familiar-word lexicon for the Dale-Chall score.

use std::collections::HashSet;
use std::path::Path;

use super::MetricsError;

const BUNDLED_DALE_CHALL: &str = include_str!("../../data/dale_chall.txt");

/// A set of familiar lowercase word forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    familiar_words: HashSet<String>,
    source_label: String,
}

impl Lexicon {
    /// Parses the line format: one word per line, `#` comments and blank lines ignored.
    pub fn parse(contents: &str, source_label: impl Into<String>) -> Result<Self, MetricsError> {
        let familiar_words: HashSet<String> = contents
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_lowercase().replace('\u{2019}', "'"))
            .collect();
        if familiar_words.is_empty() {
            return Err(MetricsError::EmptyLexicon);
        }
        Ok(Self {
            familiar_words,
            source_label: source_label.into(),
        })
    }

    pub fn from_words<I, S>(words: I, source_label: impl Into<String>) -> Result<Self, MetricsError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let joined: Vec<String> = words.into_iter().map(|w| w.as_ref().to_string()).collect();
        Self::parse(&joined.join("\n"), source_label)
    }

    pub fn load(path: &Path) -> Result<Self, MetricsError> {
        let contents = std::fs::read_to_string(path).map_err(|e| MetricsError::LexiconIo {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&contents, path.display().to_string())
    }

    /// The Dale-Chall list compiled into the binary.
    pub fn dale_chall() -> Self {
        Self::parse(BUNDLED_DALE_CHALL, "bundled:dale_chall.txt").expect("bundled lexicon is non-empty")
    }

    pub fn len(&self) -> usize {
        self.familiar_words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.familiar_words.is_empty()
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn contains_exact(&self, word: &str) -> bool {
        self.familiar_words.contains(word)
    }

    /// Whether a word token counts as familiar.
    ///
    /// Lookup lowercases, drops a possessive `'s`, then tries the raw form and
    /// regular-inflection stems. Digit-only tokens are familiar. A hyphenated
    /// token is familiar when the whole form or every part is.
    pub fn is_familiar(&self, token: &str) -> bool {
        if token.chars().all(|c| c.is_ascii_digit()) {
            return true;
        }
        let mut word = token.to_lowercase().replace('\u{2019}', "'");
        if let Some(stripped) = word.strip_suffix("'s") {
            word = stripped.to_string();
        }
        if self.known_form(&word) {
            return true;
        }
        if word.contains('-') {
            return word.split('-').all(|part| !part.is_empty() && self.is_familiar(part));
        }
        false
    }

    fn known_form(&self, word: &str) -> bool {
        inflection_candidates(word)
            .iter()
            .any(|c| self.familiar_words.contains(c.as_str()))
    }
}

fn is_consonant(c: char) -> bool {
    c.is_ascii_alphabetic() && !matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

/// The raw form followed by stems for -s, -es, -ed and -ing endings.
pub(crate) fn inflection_candidates(word: &str) -> Vec<String> {
    let mut out = vec![word.to_string()];
    if let Some(stem) = word.strip_suffix("ies") {
        out.push(format!("{stem}y"));
    }
    if let Some(stem) = word.strip_suffix("es") {
        out.push(stem.to_string());
    }
    if let Some(stem) = word.strip_suffix('s') {
        if !stem.ends_with('s') {
            out.push(stem.to_string());
        }
    }
    if let Some(stem) = word.strip_suffix("ed") {
        push_verb_stems(&mut out, stem);
        if let Some(base) = stem.strip_suffix('i') {
            out.push(format!("{base}y"));
        }
    }
    if let Some(stem) = word.strip_suffix("ing") {
        push_verb_stems(&mut out, stem);
        if let Some(base) = stem.strip_suffix('y') {
            out.push(format!("{base}ie"));
        }
    }
    out.retain(|c| !c.is_empty());
    out
}

fn push_verb_stems(out: &mut Vec<String>, stem: &str) {
    if stem.is_empty() {
        return;
    }
    out.push(stem.to_string());
    out.push(format!("{stem}e"));
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n >= 2 && chars[n - 1] == chars[n - 2] && is_consonant(chars[n - 1]) {
        out.push(chars[..n - 1].iter().collect());
    }
}
