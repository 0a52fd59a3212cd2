//! Scoring generated articles and aggregating the scores into method
//! comparisons and per-iteration trends.

mod report;
mod significance;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Dataset;
use crate::pipeline::IterationTrace;
use crate::text_metrics::{score_all, Lexicon, MetricsError, ReadabilityScores};

pub use report::{render_markdown, render_trend_csv, write_report, write_trend_csv, Report};
pub use significance::{marker, paired_significance, SignificanceOptions, TestKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("document {id}: {source}")]
    Metrics { id: String, source: MetricsError },
    #[error("averages must be positive, got {0}")]
    NonPositiveAverage(f64),
    #[error("paired samples differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least 2 pairs, got {0}")]
    TooFewPairs(usize),
    #[error("scores contain NaN or infinity")]
    NonFinite,
    #[error("traces have different iteration counts ({first} vs {other})")]
    RaggedTraces { first: usize, other: usize },
    #[error("nothing to aggregate")]
    EmptyInput,
    #[error("method {method} has no score for document {id} ({dataset})")]
    Misaligned { method: String, id: String, dataset: Dataset },
    #[error("unknown reference method {0}")]
    UnknownReference(String),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Cli,
    Fkgl,
    Dcrs,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Cli, Metric::Fkgl, Metric::Dcrs];

    pub fn label(self) -> &'static str {
        match self {
            Metric::Cli => "CLI",
            Metric::Fkgl => "FKGL",
            Metric::Dcrs => "DCRS",
        }
    }

    pub fn of(self, s: &ReadabilityScores) -> f64 {
        match self {
            Metric::Cli => s.cli,
            Metric::Fkgl => s.fkgl,
            Metric::Dcrs => s.dcrs,
        }
    }
}

/// One text to score.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalDoc {
    pub id: String,
    pub dataset: Dataset,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocScore {
    pub id: String,
    pub dataset: Dataset,
    pub scores: ReadabilityScores,
}

/// Per-dataset means of (CLI, FKGL, DCRS).
pub type CellMeans = BTreeMap<Dataset, [f64; 3]>;

fn score_one(doc: &EvalDoc, lexicon: &Lexicon) -> Result<DocScore, EvalError> {
    let scores = score_all(&doc.text, lexicon)
        .map_err(|source| EvalError::Metrics { id: doc.id.clone(), source })?;
    Ok(DocScore { id: doc.id.clone(), dataset: doc.dataset, scores })
}

/// Scores every document, in parallel for large inputs. Output order follows input order.
pub fn score_documents(docs: &[EvalDoc], lexicon: &Lexicon) -> Result<Vec<DocScore>, EvalError> {
    const CHUNK: usize = 256;
    if docs.len() <= CHUNK {
        return docs.iter().map(|d| score_one(d, lexicon)).collect();
    }
    let chunks: Vec<Result<Vec<DocScore>, EvalError>> = std::thread::scope(|s| {
        let handles: Vec<_> = docs
            .chunks(CHUNK)
            .map(|chunk| s.spawn(move || chunk.iter().map(|d| score_one(d, lexicon)).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("scoring thread panicked")).collect()
    });
    let mut out = Vec::with_capacity(docs.len());
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

pub fn cell_means(scores: &[DocScore]) -> CellMeans {
    let mut sums: BTreeMap<Dataset, ([f64; 3], usize)> = BTreeMap::new();
    for d in scores {
        let e = sums.entry(d.dataset).or_insert(([0.0; 3], 0));
        for (acc, v) in e.0.iter_mut().zip(d.scores.as_array()) {
            *acc += v;
        }
        e.1 += 1;
    }
    sums.into_iter().map(|(ds, (s, n))| (ds, s.map(|v| v / n as f64))).collect()
}

/// Arithmetic mean of every cell value.
pub fn average_of_cells(cells: &CellMeans) -> Result<f64, EvalError> {
    let values: Vec<f64> = cells.values().flatten().copied().collect();
    if values.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Relative reduction, in percent, from `method_avg` down to `reference_avg`.
pub fn improvement_pct(method_avg: f64, reference_avg: f64) -> Result<f64, EvalError> {
    if !method_avg.is_finite() || method_avg <= 0.0 {
        return Err(EvalError::NonPositiveAverage(method_avg));
    }
    Ok(100.0 * (method_avg - reference_avg) / method_avg)
}

/// Aggregated scores for one system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method_name: String,
    pub per_document: Vec<DocScore>,
    pub cell_means: CellMeans,
    pub avg: f64,
    /// How much the reference improves on this method, in percent.
    pub impr_vs_reference: Option<f64>,
}

impl MethodResult {
    pub fn from_scores(method_name: impl Into<String>, per_document: Vec<DocScore>) -> Result<Self, EvalError> {
        let cells = cell_means(&per_document);
        Self::from_cells(method_name, per_document, cells)
    }

    /// For published tables where only the cell means are known.
    pub fn from_cells(
        method_name: impl Into<String>,
        per_document: Vec<DocScore>,
        cell_means: CellMeans,
    ) -> Result<Self, EvalError> {
        let avg = average_of_cells(&cell_means)?;
        Ok(Self { method_name: method_name.into(), per_document, cell_means, avg, impr_vs_reference: None })
    }

    fn metric_values(&self, dataset: Dataset, metric: Metric) -> BTreeMap<&str, f64> {
        self.per_document
            .iter()
            .filter(|d| d.dataset == dataset)
            .map(|d| (d.id.as_str(), metric.of(&d.scores)))
            .collect()
    }
}

/// Scores `docs` and aggregates them as `method_name`.
pub fn evaluate_articles(
    method_name: impl Into<String>,
    docs: &[EvalDoc],
    lexicon: &Lexicon,
) -> Result<MethodResult, EvalError> {
    if docs.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    MethodResult::from_scores(method_name, score_documents(docs, lexicon)?)
}

/// p-value of one method against the reference for one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSignificance {
    pub method: String,
    pub dataset: Dataset,
    pub metric: Metric,
    pub p_value: f64,
}

/// Fills in improvement figures and significance against `reference`.
/// Cells with fewer than two aligned documents get no p-value.
pub fn compare_methods(
    mut methods: Vec<MethodResult>,
    reference: &str,
    opts: &SignificanceOptions,
) -> Result<Report, EvalError> {
    let ref_idx = methods
        .iter()
        .position(|m| m.method_name == reference)
        .ok_or_else(|| EvalError::UnknownReference(reference.to_string()))?;
    let ref_avg = methods[ref_idx].avg;
    let mut significance = Vec::new();
    for i in 0..methods.len() {
        // undefined for a non-positive average; the table shows a dash
        methods[i].impr_vs_reference = improvement_pct(methods[i].avg, ref_avg).ok();
        if i == ref_idx {
            continue;
        }
        let (m, r) = (&methods[i], &methods[ref_idx]);
        for (&dataset, _) in r.cell_means.iter().filter(|(ds, _)| m.cell_means.contains_key(ds)) {
            for metric in Metric::ALL {
                let ours = m.metric_values(dataset, metric);
                let theirs = r.metric_values(dataset, metric);
                if ours.len() < 2 {
                    continue;
                }
                let mut a = Vec::with_capacity(theirs.len());
                let mut b = Vec::with_capacity(theirs.len());
                for (id, v) in &theirs {
                    let other = ours.get(id).ok_or_else(|| EvalError::Misaligned {
                        method: m.method_name.clone(),
                        id: id.to_string(),
                        dataset,
                    })?;
                    a.push(*other);
                    b.push(*v);
                }
                if ours.len() != theirs.len() {
                    return Err(EvalError::LengthMismatch { left: ours.len(), right: theirs.len() });
                }
                let p_value = paired_significance(&a, &b, opts)?;
                significance.push(CellSignificance { method: m.method_name.clone(), dataset, metric, p_value });
            }
        }
    }
    Ok(Report { reference: reference.to_string(), methods, significance, options: *opts })
}

/// Mean scores of one iteration across documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub iteration: usize,
    pub label: String,
    pub cli: f64,
    pub fkgl: f64,
    pub dcrs: f64,
}

pub fn iteration_label(i: usize) -> String {
    if i == 0 {
        "initial writing".to_string()
    } else {
        format!("iteration {i}")
    }
}

/// Per-iteration metric means over all traces, iteration 0 first.
pub fn trend_table(traces: &[IterationTrace], lexicon: &Lexicon) -> Result<Vec<TrendRow>, EvalError> {
    let first = traces.first().ok_or(EvalError::EmptyInput)?.iterations();
    if let Some(t) = traces.iter().find(|t| t.iterations() != first) {
        return Err(EvalError::RaggedTraces { first, other: t.iterations() });
    }
    (0..=first)
        .map(|i| {
            let docs: Vec<EvalDoc> = traces
                .iter()
                .map(|t| EvalDoc {
                    id: format!("{}@{i}", t.paper.id),
                    dataset: t.paper.source_dataset,
                    text: t.articles[i].body.clone(),
                })
                .collect();
            let scores = score_documents(&docs, lexicon)?;
            let n = scores.len() as f64;
            let mean = |m: Metric| scores.iter().map(|s| m.of(&s.scores)).sum::<f64>() / n;
            Ok(TrendRow {
                iteration: i,
                label: iteration_label(i),
                cli: mean(Metric::Cli),
                fkgl: mean(Metric::Fkgl),
                dcrs: mean(Metric::Dcrs),
            })
        })
        .collect()
}
