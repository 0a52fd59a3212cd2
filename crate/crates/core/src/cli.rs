//! Command-line interface. `newsroom <subcommand> --help` lists the flags.
//!
//! Failures are reported as one JSON object on stderr with a nonzero exit
//! status: `{"error": ..., "module": ..., "context": ...}`.

use std::collections::HashSet;
use std::ffi::OsString;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::agents::{AgentKind, RoleContext};
use crate::config::{ConfigError, CorpusFile, RunConfig, API_KEY_ENV};
use crate::corpus::{self, CorpusError, Dataset, Paper};
use crate::evaluator::{
    self, compare_methods, evaluate_articles, render_markdown, trend_table, write_report, write_trend_csv, EvalDoc,
    EvalError, MethodResult, SignificanceOptions, TestKind,
};
use crate::pipeline::{
    read_trace, run_corpus_with, select_output, write_trace, FailureRecord, IterationTrace, Mode, PipelineError,
    TraceError,
};
use crate::text_metrics::{score_all, Lexicon, MetricsError};

#[derive(Debug, Parser)]
#[command(name = "newsroom", version, about = "Journalist / reader / editor article pipeline and readability evaluator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the pipeline over a corpus and write traces and selected articles
    Run(RunCmd),
    /// Score article sets and write a comparison report
    Evaluate(EvaluateCmd),
    /// Run all four modes on one corpus and compare them
    Ablate(AblateCmd),
    /// Per-iteration readability means from a directory of traces
    Trend(TrendCmd),
    /// Readability scores of one text file ("-" for stdin)
    Metrics(MetricsCmd),
    /// Word and sentence statistics of a corpus
    Stats(StatsCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    NoReading,
    NoSuggestions,
    NoCollab,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::NoReading => Mode::NoReading,
            ModeArg::NoSuggestions => Mode::NoSuggestions,
            ModeArg::NoCollab => Mode::NoCollaboration,
        }
    }
}

/// Flags shared by `run` and `ablate`; each overrides the config file.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML run configuration
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Corpus JSONL file(s); replaces the configured list
    #[arg(long)]
    pub corpus: Vec<PathBuf>,
    /// Dataset label for --corpus files whose lines carry none
    #[arg(long, default_value = "custom")]
    pub dataset: String,
    /// Number of revision rounds
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Round whose article is the output
    #[arg(long)]
    pub select: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Documents processed in parallel
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// live, or mock:<fixture-dir> for offline replay
    #[arg(long)]
    pub backend: Option<String>,
    /// Process at most this many papers
    #[arg(long)]
    pub limit: Option<usize>,
    /// Print the effective configuration as TOML and exit
    #[arg(long)]
    pub print_config: bool,
}

#[derive(Debug, Args)]
pub struct RunCmd {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Validate and render the initial prompts without calling any model
    #[arg(long)]
    pub dry_run: bool,
}

#[derive(Debug, Args)]
pub struct AblateCmd {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateCmd {
    /// Article set as NAME=PATH; PATH is a selected.jsonl file or a run directory
    #[arg(long = "input", required = true)]
    pub inputs: Vec<String>,
    /// Method the others are compared against
    #[arg(long)]
    pub reference: Option<String>,
    #[arg(long, default_value = "eval")]
    pub out: PathBuf,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub resamples: usize,
    /// Use a paired t-test instead of the bootstrap
    #[arg(long)]
    pub t_test: bool,
}

#[derive(Debug, Args)]
pub struct TrendCmd {
    /// Directory of trace files (a run's traces/ directory or the run directory)
    #[arg(long)]
    pub traces: PathBuf,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsCmd {
    pub file: PathBuf,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Print scores and counts as JSON
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct StatsCmd {
    #[arg(long, required = true)]
    pub corpus: Vec<PathBuf>,
    #[arg(long, default_value = "custom")]
    pub dataset: String,
    /// Test-id manifest; adds split sizes to the output
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// An error with the module it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub module: &'static str,
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
}

impl CliError {
    fn new(module: &'static str, error: impl ToString) -> Self {
        Self { module, error: error.to_string(), context: None }
    }

    fn context(mut self, ctx: impl Into<String>) -> Self {
        self.context = Some(ctx.into());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("error serializes")
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Corpus(c) => c.into(),
            other => Self::new("config", other),
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        Self::new("corpus", e)
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        Self::new("evaluator", e)
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        Self::new("pipeline", e)
    }
}

impl From<TraceError> for CliError {
    fn from(e: TraceError) -> Self {
        Self::new("pipeline", e)
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        Self::new("text_metrics", e)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::new("io", e).context(path.display().to_string())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}

fn parse_dataset(s: &str) -> Result<Dataset, CliError> {
    Dataset::parse(s).ok_or_else(|| CliError::new("cli", format!("unknown dataset `{s}`")))
}

fn load_lexicon(path: Option<&Path>) -> Result<Lexicon, CliError> {
    match path {
        None => Ok(Lexicon::dale_chall()),
        Some(p) => Lexicon::load(p).map_err(|e| CliError::new("text_metrics", e)),
    }
}

/// Config file (or defaults) with command-line overrides applied.
pub fn effective_config(args: &CommonArgs) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if !args.corpus.is_empty() {
        let dataset = parse_dataset(&args.dataset)?;
        cfg.corpus.files = args.corpus.iter().map(|p| CorpusFile { path: p.clone(), dataset }).collect();
    }
    if let Some(n) = args.iterations {
        cfg.pipeline.iterations = n;
        if args.select.is_none() && cfg.pipeline.select_iteration > n {
            cfg.pipeline.select_iteration = n;
        }
    }
    if let Some(k) = args.select {
        cfg.pipeline.select_iteration = k;
    }
    if let Some(m) = args.mode {
        cfg.pipeline.mode = m.into();
    }
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
        cfg.significance.seed = s;
    }
    if let Some(o) = &args.out {
        cfg.out_dir = o.clone();
    }
    if let Some(b) = &args.backend {
        cfg.backend = b.clone();
    }
    if let Some(l) = args.limit {
        cfg.corpus.limit = Some(l);
    }
    Ok(cfg)
}

fn prepare(args: &CommonArgs) -> Result<Option<RunConfig>, CliError> {
    let mut cfg = effective_config(args)?;
    if args.print_config {
        print!("{}", cfg.to_toml());
        return Ok(None);
    }
    cfg.validate()?;
    if cfg.corpus.files.is_empty() {
        return Err(CliError::new("config", "no corpus given (use --corpus or [corpus].files)"));
    }
    for w in cfg.lint() {
        log::warn!("{w}");
    }
    cfg.apply_env_secrets(|k| std::env::var(k).ok());
    if cfg.backend == "live" && cfg.roles.journalist.endpoint.api_key.is_none() {
        log::info!("no API key set; export {API_KEY_ENV} if the endpoint needs one");
    }
    Ok(Some(cfg))
}

/// One selected article as written to `selected.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectedArticle {
    pub id: String,
    pub dataset: Dataset,
    pub iteration: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub mode: Mode,
    pub documents: usize,
    pub succeeded: usize,
    pub failed: usize,
    pub iterations: usize,
    pub select_iteration: usize,
    pub out_dir: PathBuf,
}

fn file_stem_for(id: &str, used: &mut HashSet<String>) -> String {
    let base: String = id
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '_') { c } else { '_' })
        .collect();
    let mut name = base.clone();
    let mut n = 1;
    while !used.insert(name.clone()) {
        n += 1;
        name = format!("{base}-{n}");
    }
    name
}

/// Runs the pipeline for `papers` and writes everything under `out`.
fn run_to_dir(cfg: &RunConfig, papers: &[Paper], out: &Path) -> Result<(RunSummary, Vec<IterationTrace>), CliError> {
    let pcfg = cfg.pipeline_config()?;
    let roles = cfg.build_roles()?;
    let traces_dir = out.join("traces");
    std::fs::create_dir_all(&traces_dir).map_err(|e| io_error(&traces_dir, e))?;

    let mut used = HashSet::new();
    let stems: Vec<String> = papers.iter().map(|p| file_stem_for(&p.id, &mut used)).collect();
    let total = papers.len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    let run = run_corpus_with(papers, &pcfg, &roles, cfg.workers, |i, result| {
        let n = done.fetch_add(1, std::sync::atomic::Ordering::SeqCst) + 1;
        let path = traces_dir.join(format!("{}.jsonl", stems[i]));
        let written = match result {
            Ok(trace) => write_trace(&path, trace, None),
            Err(PipelineError::AgentFailure(f)) => write_trace(&path, &f.partial, Some(&FailureRecord::from(f.as_ref()))),
            Err(_) => Ok(()),
        };
        if let Err(e) = written {
            log::error!("{e}");
        }
        match result {
            Ok(_) => log::info!("[{n}/{total}] {} done", papers[i].id),
            Err(e) => log::warn!("[{n}/{total}] {e}"),
        }
    });

    let mut selected = String::new();
    let mut failures = String::new();
    let mut traces = Vec::new();
    for (i, result) in run.results.into_iter().enumerate() {
        match result {
            Ok(trace) => {
                let article = select_output(&trace, pcfg.select_iteration)?;
                let rec = SelectedArticle {
                    id: trace.paper.id.clone(),
                    dataset: trace.paper.source_dataset,
                    iteration: article.iteration,
                    text: article.body.clone(),
                };
                selected.push_str(&serde_json::to_string(&rec).expect("serializes"));
                selected.push('\n');
                write_file(&out.join("articles").join(format!("{}.md", stems[i])), &article.body)?;
                traces.push(trace);
            }
            Err(e) => {
                let line = serde_json::json!({"id": papers[i].id, "error": e.to_string()});
                failures.push_str(&line.to_string());
                failures.push('\n');
            }
        }
    }
    write_file(&out.join("selected.jsonl"), &selected)?;
    if !failures.is_empty() {
        write_file(&out.join("failures.jsonl"), &failures)?;
    }
    if !traces.is_empty() {
        let rows = trend_table(&traces, &cfg.load_lexicon()?)?;
        write_trend_csv(&out.join("trend.csv"), &rows)?;
    }
    let summary = RunSummary {
        mode: pcfg.mode,
        documents: papers.len(),
        succeeded: traces.len(),
        failed: papers.len() - traces.len(),
        iterations: pcfg.iterations,
        select_iteration: pcfg.select_iteration,
        out_dir: out.to_path_buf(),
    };
    write_file(&out.join("run.json"), &serde_json::to_string_pretty(&summary).expect("serializes"))?;
    Ok((summary, traces))
}

fn cmd_run(cmd: &RunCmd) -> Result<(), CliError> {
    let Some(cfg) = prepare(&cmd.common)? else { return Ok(()) };
    let papers = cfg.load_papers()?;
    if cmd.dry_run {
        let pcfg = cfg.pipeline_config()?;
        let roles = cfg.build_roles()?;
        roles.check_mode(pcfg.mode)?;
        let journalist = roles.get(AgentKind::Journalist)?;
        for p in &papers {
            let ctx = RoleContext {
                paper_abstract: Some(p.abstract_text.clone()),
                demonstration: pcfg.one_shot.clone(),
                ..Default::default()
            };
            let messages = journalist
                .render_messages(&ctx)
                .map_err(|e| CliError::new("agents", e).context(p.id.clone()))?;
            println!("{}", serde_json::json!({"id": p.id, "step": "initial_writing", "messages": messages}));
        }
        eprintln!("dry run: {} paper(s), mode {}, no requests sent", papers.len(), pcfg.mode);
        return Ok(());
    }
    if papers.is_empty() {
        return Err(CliError::new("corpus", "selected subset is empty"));
    }
    let (summary, _) = run_to_dir(&cfg, &papers, &cfg.out_dir)?;
    println!("{}", serde_json::to_string(&summary).expect("serializes"));
    if summary.succeeded == 0 {
        return Err(CliError::new("pipeline", "every document failed").context(cfg.out_dir.display().to_string()));
    }
    Ok(())
}

fn read_selected(path: &Path) -> Result<Vec<EvalDoc>, CliError> {
    let file = if path.is_dir() { path.join("selected.jsonl") } else { path.to_path_buf() };
    let text = std::fs::read_to_string(&file).map_err(|e| io_error(&file, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str::<EvalDoc>(l).map_err(|e| {
                CliError::new("evaluator", e).context(format!("{}:{}", file.display(), i + 1))
            })
        })
        .collect()
}

fn evaluate_sets(
    sets: &[(String, Vec<EvalDoc>)],
    reference: &str,
    lexicon: &Lexicon,
    opts: &SignificanceOptions,
    out: &Path,
) -> Result<String, CliError> {
    let mut methods: Vec<MethodResult> = Vec::new();
    for (name, docs) in sets {
        methods.push(evaluate_articles(name.clone(), docs, lexicon).map_err(|e| CliError::from(e).context(name.clone()))?);
    }
    let report = compare_methods(methods, reference, opts)?;
    write_report(out, &report)?;
    Ok(render_markdown(&report))
}

fn cmd_evaluate(cmd: &EvaluateCmd) -> Result<(), CliError> {
    let mut sets = Vec::new();
    for spec in &cmd.inputs {
        let (name, path) = match spec.split_once('=') {
            Some((n, p)) => (n.to_string(), PathBuf::from(p)),
            None => {
                let p = PathBuf::from(spec);
                let stem = if p.is_dir() { p.file_name() } else { p.file_stem() };
                (stem.map_or_else(|| spec.clone(), |s| s.to_string_lossy().into_owned()), p)
            }
        };
        sets.push((name, read_selected(&path)?));
    }
    let reference = cmd.reference.clone().unwrap_or_else(|| sets[0].0.clone());
    let opts = SignificanceOptions {
        test: if cmd.t_test { TestKind::TTest } else { TestKind::Bootstrap },
        resamples: cmd.resamples,
        seed: cmd.seed,
    };
    let lexicon = load_lexicon(cmd.lexicon.as_deref())?;
    print!("{}", evaluate_sets(&sets, &reference, &lexicon, &opts, &cmd.out)?);
    Ok(())
}

fn cmd_ablate(cmd: &AblateCmd) -> Result<(), CliError> {
    let Some(cfg) = prepare(&cmd.common)? else { return Ok(()) };
    let papers = cfg.load_papers()?;
    if papers.is_empty() {
        return Err(CliError::new("corpus", "selected subset is empty"));
    }
    let mut sets = Vec::new();
    for mode in Mode::ALL {
        let mut mcfg = cfg.clone();
        mcfg.pipeline.mode = mode;
        let out = cfg.out_dir.join(mode.name());
        let (summary, traces) = run_to_dir(&mcfg, &papers, &out)?;
        println!("{}", serde_json::to_string(&summary).expect("serializes"));
        let docs: Vec<EvalDoc> = traces
            .iter()
            .map(|t| {
                let a = select_output(t, mcfg.pipeline.select_iteration)?;
                Ok(EvalDoc { id: t.paper.id.clone(), dataset: t.paper.source_dataset, text: a.body.clone() })
            })
            .collect::<Result<_, PipelineError>>()?;
        if docs.is_empty() {
            return Err(CliError::new("pipeline", "every document failed").context(mode.name()));
        }
        sets.push((mode.name().to_string(), docs));
    }
    // compare on documents that every mode completed
    let common: HashSet<String> = sets
        .iter()
        .map(|(_, d)| d.iter().map(|x| x.id.clone()).collect::<HashSet<_>>())
        .reduce(|a, b| a.intersection(&b).cloned().collect())
        .unwrap_or_default();
    for (_, docs) in &mut sets {
        docs.retain(|d| common.contains(&d.id));
    }
    let lexicon = cfg.load_lexicon()?;
    let md = evaluate_sets(&sets, Mode::Full.name(), &lexicon, &cfg.significance, &cfg.out_dir.join("ablation"))?;
    print!("{md}");
    Ok(())
}

fn trace_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let dir = if dir.join("traces").is_dir() { dir.join("traces") } else { dir.to_path_buf() };
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| io_error(&dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
        .collect();
    files.sort();
    Ok(files)
}

fn cmd_trend(cmd: &TrendCmd) -> Result<(), CliError> {
    let mut traces = Vec::new();
    for f in trace_files(&cmd.traces)? {
        let file = read_trace(&f).map_err(|e| CliError::from(e).context(f.display().to_string()))?;
        if file.failure.is_none() {
            traces.push(file.trace);
        }
    }
    let rows = trend_table(&traces, &load_lexicon(cmd.lexicon.as_deref())?)?;
    match &cmd.out {
        Some(p) => write_trend_csv(p, &rows)?,
        None => print!("{}", evaluator::render_trend_csv(&rows)),
    }
    Ok(())
}

fn cmd_metrics(cmd: &MetricsCmd) -> Result<(), CliError> {
    let text = if cmd.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| io_error(Path::new("-"), e))?;
        s
    } else {
        std::fs::read_to_string(&cmd.file).map_err(|e| io_error(&cmd.file, e))?
    };
    let lex = load_lexicon(cmd.lexicon.as_deref())?;
    let s = score_all(&text, &lex).map_err(|e| CliError::from(e).context(cmd.file.display().to_string()))?;
    if cmd.json {
        println!("{}", serde_json::to_string(&s).expect("serializes"));
    } else {
        println!("cli {:.2}\nfkgl {:.2}\ndcrs {:.2}", s.cli, s.fkgl, s.dcrs);
    }
    Ok(())
}

fn cmd_stats(cmd: &StatsCmd) -> Result<(), CliError> {
    let dataset = parse_dataset(&cmd.dataset)?;
    let mut papers = Vec::new();
    for p in &cmd.corpus {
        papers.extend(corpus::load_jsonl(p, dataset).map_err(|e| CliError::from(e).context(p.display().to_string()))?);
    }
    let stats = corpus::corpus_stats(&papers)?;
    let mut out = serde_json::to_value(&stats).expect("serializes");
    if let Some(m) = &cmd.manifest {
        let splits = corpus::split_by_manifest(&papers, &corpus::load_manifest(m)?)?;
        let (train, validation, test) = splits.sizes();
        out["split"] = serde_json::json!({"train": train, "validation": validation, "test": test});
    }
    println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Run(c) => cmd_run(c),
        Command::Evaluate(c) => cmd_evaluate(c),
        Command::Ablate(c) => cmd_ablate(c),
        Command::Trend(c) => cmd_trend(c),
        Command::Metrics(c) => cmd_metrics(c),
        Command::Stats(c) => cmd_stats(c),
    }
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn overrides_apply() {
        let cli = Cli::try_parse_from([
            "newsroom", "run", "--iterations", "2", "--mode", "no-collab", "--seed", "9", "--backend", "mock:x",
        ])
        .unwrap();
        let Command::Run(run) = cli.command else { panic!() };
        let cfg = effective_config(&run.common).unwrap();
        assert_eq!(cfg.pipeline.iterations, 2);
        assert_eq!(cfg.pipeline.select_iteration, 2);
        assert_eq!(cfg.pipeline.mode, Mode::NoCollaboration);
        assert_eq!((cfg.seed, cfg.significance.seed), (9, 9));
        assert_eq!(cfg.backend, "mock:x");
    }

    #[test]
    fn file_stems_are_unique_and_safe() {
        let mut used = HashSet::new();
        assert_eq!(file_stem_for("10.1/abc", &mut used), "10.1_abc");
        assert_eq!(file_stem_for("10.1:abc", &mut used), "10.1_abc-2");
    }

    #[test]
    fn errors_are_single_json_lines() {
        let e = CliError::new("corpus", "line 3: missing field `abstract`").context("x.jsonl");
        let line = e.to_json_line();
        assert!(!line.contains('\n'));
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["module"], "corpus");
    }
}
