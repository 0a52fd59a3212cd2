//! Report files: machine-readable JSON, a markdown comparison table and the
//! per-iteration trend CSV.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{marker, CellSignificance, EvalError, Metric, MethodResult, SignificanceOptions, TrendRow};
use crate::corpus::Dataset;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub reference: String,
    pub methods: Vec<MethodResult>,
    pub significance: Vec<CellSignificance>,
    pub options: SignificanceOptions,
}

impl Report {
    fn p_value(&self, method: &str, dataset: Dataset, metric: Metric) -> Option<f64> {
        self.significance
            .iter()
            .find(|s| s.method == method && s.dataset == dataset && s.metric == metric)
            .map(|s| s.p_value)
    }
}

/// Table with one row per method, two decimals, significance markers on
/// cells that differ from the reference.
pub fn render_markdown(report: &Report) -> String {
    let datasets: BTreeSet<Dataset> = report.methods.iter().flat_map(|m| m.cell_means.keys().copied()).collect();
    let mut out = String::from("| Method |");
    let mut rule = String::from("|---|");
    for ds in &datasets {
        for m in Metric::ALL {
            let _ = write!(out, " {} {} |", ds.label(), m.label());
            rule.push_str("---:|");
        }
    }
    out.push_str(" Avg. | Impr.(%) |\n");
    rule.push_str("---:|---:|\n");
    out.push_str(&rule);
    for method in &report.methods {
        let _ = write!(out, "| {} |", method.method_name);
        for ds in &datasets {
            for (k, metric) in Metric::ALL.iter().enumerate() {
                match method.cell_means.get(ds) {
                    Some(cells) => {
                        let mark = report.p_value(&method.method_name, *ds, *metric).map_or("", marker);
                        let _ = write!(out, " {:.2}{mark} |", cells[k]);
                    }
                    None => out.push_str(" - |"),
                }
            }
        }
        let impr = match method.impr_vs_reference {
            Some(v) if method.method_name != report.reference => format!("{v:.2}"),
            _ => "-".to_string(),
        };
        let _ = writeln!(out, " {:.2} | {impr} |", method.avg);
    }
    let _ = writeln!(
        out,
        "\nReference: {}. † p < 0.05, †† p < 0.01 ({:?}, {} resamples, seed {}).",
        report.reference, report.options.test, report.options.resamples, report.options.seed
    );
    out
}

pub fn render_trend_csv(rows: &[TrendRow]) -> String {
    let mut out = String::from("iteration,label,cli,fkgl,dcrs\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.iteration, r.label, r.cli, r.fkgl, r.dcrs);
    }
    out
}

fn write(path: &Path, text: &str) -> Result<(), EvalError> {
    std::fs::write(path, text).map_err(|e| EvalError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Writes `results.json` and `results.md` into `dir`.
pub fn write_report(dir: &Path, report: &Report) -> Result<(), EvalError> {
    std::fs::create_dir_all(dir).map_err(|e| EvalError::Io { path: dir.display().to_string(), message: e.to_string() })?;
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    write(&dir.join("results.json"), &json)?;
    write(&dir.join("results.md"), &render_markdown(report))
}

pub fn write_trend_csv(path: &Path, rows: &[TrendRow]) -> Result<(), EvalError> {
    write(path, &render_trend_csv(rows))
}
