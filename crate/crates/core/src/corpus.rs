//! Parallel corpora of abstracts and lay summaries: JSONL loading,
//! deterministic splits and corpus statistics.
//!
//! One JSON object per line with `id` and `abstract` (required) and
//! `summary` and `dataset` (optional).

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text_metrics::{segment_sentences, tokenize_words, MetricsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub enum Dataset {
    #[serde(rename = "SCITech", alias = "scitech")]
    SciTech,
    #[serde(rename = "eLife", alias = "elife")]
    ELife,
    #[serde(rename = "PLOS", alias = "plos")]
    Plos,
    #[default]
    #[serde(rename = "custom")]
    Custom,
}

impl Dataset {
    /// Column order used in reports.
    pub const REPORT_ORDER: [Dataset; 3] = [Dataset::SciTech, Dataset::ELife, Dataset::Plos];

    pub fn label(self) -> &'static str {
        match self {
            Dataset::SciTech => "SCITech",
            Dataset::ELife => "eLife",
            Dataset::Plos => "PLOS",
            Dataset::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "scitech" => Some(Dataset::SciTech),
            "elife" => Some(Dataset::ELife),
            "plos" => Some(Dataset::Plos),
            "custom" => Some(Dataset::Custom),
            _ => None,
        }
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One source document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Paper {
    pub id: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
    #[serde(rename = "summary", default, skip_serializing_if = "Option::is_none")]
    pub reference_summary: Option<String>,
    #[serde(rename = "dataset", default)]
    pub source_dataset: Dataset,
}

impl Paper {
    pub fn new(id: impl Into<String>, abstract_text: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            abstract_text: abstract_text.into(),
            reference_summary: None,
            source_dataset: Dataset::Custom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("line {line}: missing field `{key}`")]
    MissingField { line: usize, key: &'static str },
    #[error("line {line}: field `{key}` is empty")]
    EmptyField { line: usize, key: &'static str },
    #[error("line {line}: duplicate id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("bad split ratios: {0}")]
    BadRatios(String),
    #[error("split manifest lists {missing} id(s) absent from the corpus, e.g. `{example}`")]
    ManifestMismatch { missing: usize, example: String },
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("document {id}: {source}")]
    Metrics { id: String, source: MetricsError },
}

fn io_err(path: &Path, e: std::io::Error) -> CorpusError {
    CorpusError::Io { path: path.display().to_string(), message: e.to_string() }
}

fn string_field(
    obj: &serde_json::Map<String, serde_json::Value>,
    key: &'static str,
    line: usize,
) -> Result<Option<String>, CorpusError> {
    match obj.get(key) {
        None | Some(serde_json::Value::Null) => Ok(None),
        Some(serde_json::Value::String(s)) => Ok(Some(s.clone())),
        Some(serde_json::Value::Number(n)) if key == "id" => Ok(Some(n.to_string())),
        Some(other) => Err(CorpusError::ParseError {
            line,
            message: format!("field `{key}` must be a string, got {other}"),
        }),
    }
}

/// Parses JSONL text. `default_dataset` applies to lines without a `dataset` key.
/// Blank lines are skipped; line numbers in errors are 1-based.
pub fn parse_jsonl(text: &str, default_dataset: Dataset) -> Result<Vec<Paper>, CorpusError> {
    let mut papers = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(raw)
            .map_err(|e| CorpusError::ParseError { line, message: e.to_string() })?;
        let obj = value
            .as_object()
            .ok_or_else(|| CorpusError::ParseError { line, message: "not a JSON object".into() })?;
        let id = string_field(obj, "id", line)?.ok_or(CorpusError::MissingField { line, key: "id" })?;
        let abstract_text =
            string_field(obj, "abstract", line)?.ok_or(CorpusError::MissingField { line, key: "abstract" })?;
        if id.trim().is_empty() {
            return Err(CorpusError::EmptyField { line, key: "id" });
        }
        if abstract_text.trim().is_empty() {
            return Err(CorpusError::EmptyField { line, key: "abstract" });
        }
        let source_dataset = match string_field(obj, "dataset", line)? {
            None => default_dataset,
            Some(name) => Dataset::parse(&name).ok_or_else(|| CorpusError::ParseError {
                line,
                message: format!("unknown dataset `{name}`"),
            })?,
        };
        if !seen.insert(id.clone()) {
            return Err(CorpusError::DuplicateId { line, id });
        }
        papers.push(Paper {
            id,
            abstract_text,
            reference_summary: string_field(obj, "summary", line)?.filter(|s| !s.trim().is_empty()),
            source_dataset,
        });
    }
    Ok(papers)
}

pub fn load_jsonl(path: &Path, default_dataset: Dataset) -> Result<Vec<Paper>, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_jsonl(&text, default_dataset)
}

pub fn write_jsonl(path: &Path, papers: &[Paper]) -> Result<(), CorpusError> {
    let mut out = String::new();
    for p in papers {
        out.push_str(&serde_json::to_string(p).expect("paper serializes"));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| io_err(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitRatios {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
}

impl Default for SplitRatios {
    fn default() -> Self {
        Self { train: 0.9, validation: 0.05, test: 0.05 }
    }
}

impl SplitRatios {
    pub fn validate(&self) -> Result<(), CorpusError> {
        let parts = [self.train, self.validation, self.test];
        if parts.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(CorpusError::BadRatios(format!("{parts:?} contains a negative or non-finite share")));
        }
        let sum: f64 = parts.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(CorpusError::BadRatios(format!("{parts:?} sums to {sum}, not 1")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Splits {
    pub train: Vec<Paper>,
    pub validation: Vec<Paper>,
    pub test: Vec<Paper>,
}

impl Splits {
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.train.len(), self.validation.len(), self.test.len())
    }
}

/// Seeded shuffle, then validation and test take their rounded shares and
/// train takes the remainder.
pub fn split_corpus(papers: &[Paper], ratios: SplitRatios, seed: u64) -> Result<Splits, CorpusError> {
    ratios.validate()?;
    let n = papers.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_val = ((ratios.validation * n as f64).round() as usize).min(n);
    let n_test = ((ratios.test * n as f64).round() as usize).min(n - n_val);
    let take = |idx: &[usize]| idx.iter().map(|&i| papers[i].clone()).collect::<Vec<_>>();
    Ok(Splits {
        validation: take(&order[..n_val]),
        test: take(&order[n_val..n_val + n_test]),
        train: take(&order[n_val + n_test..]),
    })
}

/// Reads a split manifest: one test id per line, `#` comments and blank lines ignored.
pub fn load_manifest(path: &Path) -> Result<Vec<String>, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

/// Fixed split: listed ids form the test set, everything else is train, in
/// input order. Validation stays empty.
pub fn split_by_manifest(papers: &[Paper], test_ids: &[String]) -> Result<Splits, CorpusError> {
    let wanted: HashSet<&str> = test_ids.iter().map(String::as_str).collect();
    let present: HashSet<&str> = papers.iter().map(|p| p.id.as_str()).collect();
    let missing: Vec<&&str> = wanted.iter().filter(|id| !present.contains(**id)).collect();
    if let Some(example) = missing.iter().min() {
        return Err(CorpusError::ManifestMismatch { missing: missing.len(), example: example.to_string() });
    }
    let (test, train) = papers.iter().cloned().partition(|p| wanted.contains(p.id.as_str()));
    Ok(Splits { train, validation: Vec::new(), test })
}

/// Averages of word and sentence counts over a corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub pair_count: usize,
    pub avg_words_ori: f64,
    pub avg_sentences_ori: f64,
    /// Averages over the papers that carry a reference summary; `None` when none do.
    pub avg_words_pln: Option<f64>,
    pub avg_sentences_pln: Option<f64>,
}

fn counts(id: &str, text: &str) -> Result<(usize, usize), CorpusError> {
    let wrap = |source| CorpusError::Metrics { id: id.to_string(), source };
    Ok((tokenize_words(text).map_err(wrap)?.len(), segment_sentences(text).map_err(wrap)?.len()))
}

pub fn corpus_stats(papers: &[Paper]) -> Result<CorpusStats, CorpusError> {
    if papers.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let (mut w_ori, mut s_ori, mut w_pln, mut s_pln, mut n_pln) = (0usize, 0usize, 0usize, 0usize, 0usize);
    for p in papers {
        let (w, s) = counts(&p.id, &p.abstract_text)?;
        w_ori += w;
        s_ori += s;
        if let Some(summary) = &p.reference_summary {
            let (w, s) = counts(&p.id, summary)?;
            w_pln += w;
            s_pln += s;
            n_pln += 1;
        }
    }
    let n = papers.len() as f64;
    let avg_pln = |total: usize| (n_pln > 0).then(|| total as f64 / n_pln as f64);
    Ok(CorpusStats {
        pair_count: papers.len(),
        avg_words_ori: w_ori as f64 / n,
        avg_sentences_ori: s_ori as f64 / n,
        avg_words_pln: avg_pln(w_pln),
        avg_sentences_pln: avg_pln(s_pln),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(n: usize) -> Vec<Paper> {
        (0..n).map(|i| Paper::new(format!("doc{i:03}"), format!("Abstract number {i}."))).collect()
    }

    #[test]
    fn parses_a_line() {
        let papers = parse_jsonl(r#"{"id":"a","abstract":"X.","summary":"Y."}"#, Dataset::ELife).unwrap();
        assert_eq!(
            papers,
            vec![Paper {
                id: "a".into(),
                abstract_text: "X.".into(),
                reference_summary: Some("Y.".into()),
                source_dataset: Dataset::ELife
            }]
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "{\"id\":\"a\",\"abstract\":\"X.\"}\n\n{\"id\":\"b\"}\n";
        assert_eq!(parse_jsonl(text, Dataset::Custom), Err(CorpusError::MissingField { line: 3, key: "abstract" }));
        assert!(matches!(
            parse_jsonl("{\"id\":\"a\",\"abstract\":\"X.\"}\nnot json", Dataset::Custom),
            Err(CorpusError::ParseError { line: 2, .. })
        ));
        assert_eq!(
            parse_jsonl("{\"id\":\"a\",\"abstract\":\"X.\"}\n{\"id\":\"a\",\"abstract\":\"Z.\"}", Dataset::Custom),
            Err(CorpusError::DuplicateId { line: 2, id: "a".into() })
        );
        assert_eq!(
            parse_jsonl("{\"id\":\"a\",\"abstract\":\" \"}", Dataset::Custom),
            Err(CorpusError::EmptyField { line: 1, key: "abstract" })
        );
    }

    #[test]
    fn dataset_key_overrides_default() {
        let p = parse_jsonl(r#"{"id":7,"abstract":"X.","dataset":"PLOS"}"#, Dataset::ELife).unwrap();
        assert_eq!(p[0].source_dataset, Dataset::Plos);
        assert_eq!(p[0].id, "7");
    }

    #[test]
    fn ninety_five_five() {
        let papers = synthetic(100);
        let s = split_corpus(&papers, SplitRatios::default(), 7).unwrap();
        assert_eq!(s.sizes(), (90, 5, 5));
        assert_eq!(s, split_corpus(&papers, SplitRatios::default(), 7).unwrap());
        assert_ne!(s.test, split_corpus(&papers, SplitRatios::default(), 8).unwrap().test);
        let mut all: Vec<_> = s.train.iter().chain(&s.validation).chain(&s.test).map(|p| p.id.clone()).collect();
        all.sort();
        assert_eq!(all, papers.iter().map(|p| p.id.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn bad_ratios() {
        let r = SplitRatios { train: 0.5, validation: 0.5, test: 0.5 };
        assert!(matches!(split_corpus(&synthetic(3), r, 0), Err(CorpusError::BadRatios(_))));
    }

    #[test]
    fn tiny_corpus_never_overflows() {
        let r = SplitRatios { train: 0.0, validation: 0.5, test: 0.5 };
        assert_eq!(split_corpus(&synthetic(1), r, 0).unwrap().sizes(), (0, 1, 0));
    }

    #[test]
    fn manifest_split() {
        let papers = synthetic(10);
        let s = split_by_manifest(&papers, &["doc003".into(), "doc007".into()]).unwrap();
        assert_eq!(s.sizes(), (8, 0, 2));
        assert_eq!(s.test[0].id, "doc003");
        assert!(matches!(
            split_by_manifest(&papers, &["nope".into()]),
            Err(CorpusError::ManifestMismatch { missing: 1, .. })
        ));
    }

    #[test]
    fn stats() {
        let mut p = Paper::new("a", "One two three four five. Six seven eight nine ten.");
        assert_eq!(
            corpus_stats(std::slice::from_ref(&p)).unwrap(),
            CorpusStats {
                pair_count: 1,
                avg_words_ori: 10.0,
                avg_sentences_ori: 2.0,
                avg_words_pln: None,
                avg_sentences_pln: None
            }
        );
        p.reference_summary = Some("Short one.".into());
        assert_eq!(corpus_stats(&[p]).unwrap().avg_words_pln, Some(2.0));
        assert_eq!(corpus_stats(&[]), Err(CorpusError::EmptyCorpus));
    }

    #[test]
    fn jsonl_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut papers = synthetic(3);
        papers[1].reference_summary = Some("Lay.".into());
        papers[2].source_dataset = Dataset::SciTech;
        write_jsonl(&path, &papers).unwrap();
        assert_eq!(load_jsonl(&path, Dataset::Custom).unwrap(), papers);
    }
}
