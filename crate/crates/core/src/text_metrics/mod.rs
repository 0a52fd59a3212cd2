//! Readability analytics: Coleman-Liau index, Flesch-Kincaid grade level and
//! the Dale-Chall readability score, all computed from one shared set of
//! text counts.
//!
//! ```
//! use newsroom::text_metrics::{score_all, Lexicon};
//!
//! let lex = Lexicon::dale_chall();
//! let s = score_all("The quick brown fox jumps over the lazy dog.", &lex).unwrap();
//! assert!((s.cli - 3.78).abs() < 0.01);
//! assert!((s.fkgl - 2.34).abs() < 0.02);
//! assert!((s.dcrs - 0.45).abs() < 0.01);
//! ```

mod lexicon;
mod syllables;
pub(crate) mod tokenize;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lexicon::Lexicon;
pub use syllables::count_syllables;
pub use tokenize::{segment_sentences, tokenize_words};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("text contains no words")]
    EmptyText,
    #[error("lexicon is empty")]
    EmptyLexicon,
    #[error("cannot read lexicon {path}: {message}")]
    LexiconIo { path: String, message: String },
}

/// Raw counts every formula is computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextStats {
    pub sentence_count: u32,
    pub word_count: u32,
    /// Alphabetic characters inside word tokens; digits excluded.
    pub letter_count: u32,
    pub syllable_count: u32,
    pub difficult_word_count: u32,
}

const CLI_LETTERS: f64 = 0.0588;
const CLI_SENTENCES: f64 = 0.296;
const CLI_CONST: f64 = 15.8;

const FK_WORDS_PER_SENTENCE: f64 = 0.39;
const FK_SYLLABLES_PER_WORD: f64 = 11.8;
const FK_CONST: f64 = 15.59;

const DC_DIFFICULT_PCT: f64 = 0.1579;
const DC_WORDS_PER_SENTENCE: f64 = 0.0496;
const DC_ADJUSTMENT: f64 = 3.6365;
const DC_ADJUSTMENT_THRESHOLD_PCT: f64 = 5.0;

impl TextStats {
    /// Counts `text`. Difficult words are only counted when a lexicon is given.
    pub fn compute(text: &str, lexicon: Option<&Lexicon>) -> Result<Self, MetricsError> {
        let words = tokenize_words(text)?;
        let sentences = segment_sentences(text)?;
        let mut stats = TextStats {
            sentence_count: sentences.len() as u32,
            word_count: words.len() as u32,
            letter_count: 0,
            syllable_count: 0,
            difficult_word_count: 0,
        };
        for w in &words {
            stats.letter_count += w.chars().filter(|c| c.is_alphabetic()).count() as u32;
            stats.syllable_count += count_syllables(w);
            if let Some(lex) = lexicon {
                if !lex.is_familiar(w) {
                    stats.difficult_word_count += 1;
                }
            }
        }
        Ok(stats)
    }

    pub fn words_per_sentence(&self) -> f64 {
        f64::from(self.word_count) / f64::from(self.sentence_count)
    }

    pub fn coleman_liau(&self) -> f64 {
        let per_100_words = 100.0 / f64::from(self.word_count);
        let letters = f64::from(self.letter_count) * per_100_words;
        let sentences = f64::from(self.sentence_count) * per_100_words;
        CLI_LETTERS * letters - CLI_SENTENCES * sentences - CLI_CONST
    }

    pub fn flesch_kincaid(&self) -> f64 {
        let syllables_per_word = f64::from(self.syllable_count) / f64::from(self.word_count);
        FK_WORDS_PER_SENTENCE * self.words_per_sentence() + FK_SYLLABLES_PER_WORD * syllables_per_word
            - FK_CONST
    }

    /// Percentage of words outside the familiar list.
    pub fn difficult_pct(&self) -> f64 {
        100.0 * f64::from(self.difficult_word_count) / f64::from(self.word_count)
    }

    pub fn dale_chall(&self) -> f64 {
        let pct = self.difficult_pct();
        let raw = DC_DIFFICULT_PCT * pct + DC_WORDS_PER_SENTENCE * self.words_per_sentence();
        if pct > DC_ADJUSTMENT_THRESHOLD_PCT {
            raw + DC_ADJUSTMENT
        } else {
            raw
        }
    }
}

/// The three readability values for one text and the counts behind them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityScores {
    pub cli: f64,
    pub fkgl: f64,
    pub dcrs: f64,
    pub stats: TextStats,
}

impl ReadabilityScores {
    pub fn from_stats(stats: TextStats) -> Self {
        Self {
            cli: stats.coleman_liau(),
            fkgl: stats.flesch_kincaid(),
            dcrs: stats.dale_chall(),
            stats,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.cli, self.fkgl, self.dcrs]
    }
}

pub fn coleman_liau(text: &str) -> Result<f64, MetricsError> {
    Ok(TextStats::compute(text, None)?.coleman_liau())
}

pub fn flesch_kincaid(text: &str) -> Result<f64, MetricsError> {
    Ok(TextStats::compute(text, None)?.flesch_kincaid())
}

pub fn dale_chall(text: &str, lexicon: &Lexicon) -> Result<f64, MetricsError> {
    if lexicon.is_empty() {
        return Err(MetricsError::EmptyLexicon);
    }
    Ok(TextStats::compute(text, Some(lexicon))?.dale_chall())
}

pub fn score_all(text: &str, lexicon: &Lexicon) -> Result<ReadabilityScores, MetricsError> {
    if lexicon.is_empty() {
        return Err(MetricsError::EmptyLexicon);
    }
    Ok(ReadabilityScores::from_stats(TextStats::compute(text, Some(lexicon))?))
}
