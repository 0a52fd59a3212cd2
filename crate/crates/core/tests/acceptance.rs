//! Acceptance suite. Prints one PASS/FAIL line per criterion, then fails the
//! test if any criterion failed.

#[path = "support/metrics_cases.rs"]
#[allow(dead_code)]
mod metrics_cases;
#[path = "support/protocol_mock.rs"]
mod protocol_mock;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use newsroom::corpus::{corpus_stats, load_jsonl, parse_jsonl, split_corpus, CorpusError, Dataset, Paper, SplitRatios};
use newsroom::evaluator::{average_of_cells, improvement_pct, iteration_label, trend_table, MethodResult};
use newsroom::extraction::{detect_copy, parse_feedback, parse_notes, EditorFeedback, ReaderNotes};
use newsroom::pipeline::{read_trace, run_document, select_output, FailureCause, Mode, PipelineConfig, PipelineError, Step};
use newsroom::text_metrics::{dale_chall, score_all, Lexicon};
use protocol_mock::{echoing_reviser, paper, Backends};

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/cases").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn within(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol + 1e-9
}

fn timed(limit: Duration, f: impl FnOnce()) {
    let start = Instant::now();
    f();
    let took = start.elapsed();
    assert!(took < limit, "took {took:?}, limit {limit:?}");
}

fn metrics_oracle() {
    timed(Duration::from_secs(5), || {
        let lex = Lexicon::dale_chall();
        assert!(metrics_cases::ORACLE_CASES.len() >= 20);
        for case in metrics_cases::ORACLE_CASES {
            let s = score_all(case.text, &lex).unwrap();
            for (got, want) in s.as_array().iter().zip(case.scores) {
                assert!(within(*got, want, 0.01), "{:?}: {got} vs {want}", case.text);
            }
        }
        let pangram = score_all("The quick brown fox jumps over the lazy dog.", &lex).unwrap();
        assert!(within(pangram.cli, 3.78, 0.01) && within(pangram.fkgl, 2.34, 0.01) && within(pangram.dcrs, 0.45, 0.01));
        let hi = score_all("Hi.", &lex).unwrap();
        assert!(within(hi.cli, -33.64, 0.01) && within(hi.fkgl, -3.40, 0.01));
        let v = dale_chall("Microfluidic diagnostics everywhere.", &lex).unwrap();
        assert!(within(v, 14.31, 0.01), "{v}");
    });
}

fn derived_columns() {
    let cells = BTreeMap::from([
        (Dataset::SciTech, [12.69, 10.16, 9.79]),
        (Dataset::ELife, [11.60, 10.10, 9.46]),
        (Dataset::Plos, [12.74, 10.00, 9.69]),
    ]);
    let ours = MethodResult::from_cells("ours", vec![], cells.clone()).unwrap();
    assert!(within(ours.avg, 10.69, 0.01), "avg {}", ours.avg);
    assert!(within(average_of_cells(&cells).unwrap(), 10.69, 0.01));
    let row = improvement_pct(13.24, 10.69).unwrap();
    assert!(within(row, 19.26, 0.01), "{row}");
    let worked = improvement_pct(12.43, 10.69).unwrap();
    assert!(within(worked, 14.0, 0.05), "{worked}");
}

fn directional_check() {
    timed(Duration::from_secs(1), || {
        let lex = Lexicon::dale_chall();
        let source = score_all(&fixture("malaria_abstract.txt"), &lex).unwrap();
        let article = score_all(&fixture("malaria_article.txt"), &lex).unwrap();
        assert!(article.cli < source.cli, "CLI {} vs {}", article.cli, source.cli);
        assert!(article.fkgl < source.fkgl, "FKGL {} vs {}", article.fkgl, source.fkgl);
    });
}

fn loop_structure() {
    timed(Duration::from_secs(10), || {
        for n in [0usize, 1, 3, 5] {
            for mode in Mode::ALL {
                let b = Backends::new();
                let cfg = PipelineConfig { iterations: n, select_iteration: n.min(3), mode, ..Default::default() };
                let trace = run_document(&paper("doc"), &cfg, &b.roles()).unwrap();
                let (r, e) = match mode {
                    Mode::Full => (n, n),
                    Mode::NoReading => (0, n),
                    Mode::NoSuggestions => (n, 0),
                    Mode::NoCollaboration => (0, 0),
                };
                assert_eq!(b.counts(), (n + 1, r, e), "{mode} n={n}");
                assert_eq!((trace.articles.len(), trace.notes.len(), trace.feedback.len()), (n + 1, r, e));
                if n >= 3 {
                    assert_eq!(select_output(&trace, 3).unwrap(), &trace.articles[3]);
                }
            }
        }
    });
}

fn protocol_parsing() {
    for (i, (notes_n, advice_n)) in [(4, 4), (4, 4), (5, 5)].into_iter().enumerate() {
        let notes = parse_notes(&fixture(&format!("notes_iter{}.md", i + 1))).unwrap();
        assert_eq!((notes.extraction_items.len(), notes.explanation_items.len()), (notes_n, notes_n));
        let fb = parse_feedback(&fixture(&format!("advice_iter{}.md", i + 1))).unwrap();
        assert_eq!(fb.advice_items.len(), advice_n, "advice iteration {}", i + 1);

        let n2 = parse_notes(&notes.to_protocol()).unwrap();
        assert_eq!((n2.extraction_items, n2.explanation_items), (notes.extraction_items.clone(), notes.explanation_items.clone()));
        let f2 = parse_feedback(&fb.to_protocol()).unwrap();
        assert_eq!(
            (f2.accuracy_eval, f2.complexity_eval, f2.conveyance_eval, f2.advice_items),
            (fb.accuracy_eval.clone(), fb.complexity_eval.clone(), fb.conveyance_eval.clone(), fb.advice_items.clone())
        );
        assert_eq!(serde_json::from_str::<ReaderNotes>(&serde_json::to_string(&notes).unwrap()).unwrap(), notes);
        assert_eq!(serde_json::from_str::<EditorFeedback>(&serde_json::to_string(&fb).unwrap()).unwrap(), fb);
    }
}

fn copy_detection() {
    let src = fixture("malaria_abstract.txt");
    assert!(detect_copy(&src, &src));
    let extra = src.split_whitespace().count().div_ceil(20);
    assert!(detect_copy(&format!("{src} {}", "filler ".repeat(extra)), &src));
    assert!(!detect_copy("Bright kites drift over quiet summer hills.", &src));

    let b = Backends::with_journalist(echoing_reviser());
    let cfg = PipelineConfig { iterations: 2, select_iteration: 1, ..Default::default() };
    match run_document(&paper("copy"), &cfg, &b.roles()) {
        Err(PipelineError::AgentFailure(f)) => {
            assert_eq!(f.step, Step::Revision);
            assert_eq!(f.attempts, cfg.max_agent_retries + 1);
            assert!(matches!(f.cause, FailureCause::CopiedSource { .. }));
            let revisions = f.partial.steps.iter().filter(|s| s.step == Step::Revision).count();
            assert_eq!(revisions as u32, cfg.max_agent_retries + 1);
        }
        other => panic!("expected AgentFailure, got {:?}", other.map(|t| t.articles.len())),
    }
}

fn synthetic(n: usize) -> Vec<Paper> {
    (0..n).map(|i| Paper::new(format!("s{i}"), format!("Synthetic abstract {i}."))).collect()
}

fn corpus_suite() -> Option<String> {
    let papers = synthetic(100);
    let a = split_corpus(&papers, SplitRatios::default(), 7).unwrap();
    assert_eq!(a.sizes(), (90, 5, 5));
    assert_eq!(a, split_corpus(&papers, SplitRatios::default(), 7).unwrap());
    let bad = "{\"id\": \"a\", \"abstract\": \"x\"}\n{\"id\": \"b\"}\n";
    assert!(matches!(parse_jsonl(bad, Dataset::Custom), Err(CorpusError::MissingField { line: 2, .. })));
    let bad = "{\"id\": \"a\", \"abstract\": \"x\"}\n\n{broken\n";
    assert!(matches!(parse_jsonl(bad, Dataset::Custom), Err(CorpusError::ParseError { line: 3, .. })));

    // optional checks against downloaded corpora
    let mut notes = Vec::new();
    match std::env::var_os("NEWSROOM_ELIFE_JSONL") {
        Some(p) => {
            let stats = corpus_stats(&load_jsonl(Path::new(&p), Dataset::ELife).unwrap()).unwrap();
            assert_eq!(stats.pair_count, 4828);
            notes.push("eLife pairs checked");
        }
        None => notes.push("eLife check skipped (NEWSROOM_ELIFE_JSONL unset)"),
    }
    match std::env::var_os("NEWSROOM_SCITECH_JSONL") {
        Some(p) => {
            let stats = corpus_stats(&load_jsonl(Path::new(&p), Dataset::SciTech).unwrap()).unwrap();
            assert!((stats.avg_words_ori / 216.8 - 1.0).abs() <= 0.02, "avg words {}", stats.avg_words_ori);
            notes.push("SCITech words checked");
        }
        None => notes.push("SCITech check skipped (NEWSROOM_SCITECH_JSONL unset)"),
    }
    Some(notes.join("; "))
}

fn offline_run() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    timed(Duration::from_secs(30), || {
        let o = Command::new(env!("CARGO_BIN_EXE_newsroom"))
            .arg("run")
            .arg("--corpus")
            .arg(root.join("fixtures/corpus/sample.jsonl"))
            .arg("--backend")
            .arg(format!("mock:{}", root.join("fixtures/mock_backend").display()))
            .args(["--iterations", "5", "--out"])
            .arg(&out)
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    });
    let mut traces = Vec::new();
    for entry in std::fs::read_dir(out.join("traces")).unwrap() {
        let file = read_trace(&entry.unwrap().path()).unwrap();
        assert!(file.failure.is_none());
        traces.push(file.trace);
    }
    assert_eq!(traces.len(), 3);
    let rows = trend_table(&traces, &Lexicon::dale_chall()).unwrap();
    assert_eq!(rows.iter().map(|r| r.iteration).collect::<Vec<_>>(), (0..=5).collect::<Vec<_>>());
    assert_eq!(rows[0].label, "initial writing");
    assert_eq!(rows[0].label, iteration_label(0));
    let csv = std::fs::read_to_string(out.join("trend.csv")).unwrap();
    assert_eq!(csv.lines().count(), 7);
    assert!(csv.lines().nth(1).unwrap().starts_with("0,initial writing,"));
}

/// Written straight to stderr so the lines show up without `--nocapture`.
fn report(line: String) {
    use std::io::Write as _;
    let _ = writeln!(std::io::stderr(), "{line}");
}

fn check(n: usize, name: &str, f: impl FnOnce() -> Option<String>) -> bool {
    let prev = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let result = catch_unwind(AssertUnwindSafe(f));
    std::panic::set_hook(prev);
    match result {
        Ok(note) => {
            let note = note.map(|s| format!(" ({s})")).unwrap_or_default();
            report(format!("PASS criterion {n}: {name}{note}"));
            true
        }
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            report(format!("FAIL criterion {n}: {name}: {msg}"));
            false
        }
    }
}

#[test]
fn acceptance() {
    let none = |f: fn()| move || {
        f();
        None
    };
    let results = [
        check(1, "readability oracle fixtures", none(metrics_oracle)),
        check(2, "average and improvement columns", none(derived_columns)),
        check(3, "article reads easier than its source", none(directional_check)),
        check(4, "loop call counts per mode", none(loop_structure)),
        check(5, "notes and advice parsing", none(protocol_parsing)),
        check(6, "copy detection", none(copy_detection)),
        check(7, "corpus splits and line errors", corpus_suite),
        check(8, "offline end-to-end run", none(offline_run)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
