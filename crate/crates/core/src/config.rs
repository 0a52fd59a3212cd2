//! Run configuration: a TOML file, command-line overrides, and API keys
//! from the environment.
//!
//! The schema is documented in `docs/config.md`; `crates/core/config/example.toml` is a
//! complete example.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agents::{format_demonstration, lint_reader_model, AgentKind, AgentRole};
use crate::corpus::{self, CorpusError, Dataset, Paper, SplitRatios};
use crate::evaluator::SignificanceOptions;
use crate::llm::{ChatBackend, ChatClient, EndpointConfig, FixtureDirBackend, SamplingParams, TranscriptReplay};
use crate::pipeline::{PipelineConfig, RoleSet};
use crate::text_metrics::Lexicon;

pub const API_KEY_ENV: &str = "NEWSROOM_API_KEY";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("{what} not found: {path}")]
    MissingFile { what: &'static str, path: String },
    #[error("bad backend spec `{0}` (expected live or mock:<dir>)")]
    BadBackend(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// Endpoint and sampling settings for one role.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RoleConfig {
    pub endpoint: EndpointConfig,
    /// Falls back to the top-level `[sampling]` table when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingParams>,
}

impl RoleConfig {
    fn with_model(model: &str) -> Self {
        Self {
            endpoint: EndpointConfig { model_name: model.to_string(), ..Default::default() },
            sampling: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RolesConfig {
    pub journalist: RoleConfig,
    pub reader: RoleConfig,
    pub editor: RoleConfig,
    /// Defaults to the journalist's endpoint, sharing one client.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revision: Option<RoleConfig>,
}

impl Default for RolesConfig {
    fn default() -> Self {
        Self {
            journalist: RoleConfig::with_model("Qwen/Qwen1.5-7B-Chat-AWQ"),
            reader: RoleConfig::with_model("Qwen/Qwen1.5-1.8B-Chat-AWQ"),
            editor: RoleConfig::with_model("Qwen/Qwen1.5-7B-Chat-AWQ"),
            revision: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Subset {
    #[default]
    All,
    Train,
    Validation,
    Test,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub path: PathBuf,
    #[serde(default)]
    pub dataset: Dataset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusConfig {
    pub files: Vec<CorpusFile>,
    /// Which split the pipeline runs on.
    pub subset: Subset,
    pub ratios: SplitRatios,
    /// Test-id list; when set, replaces the seeded split.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<PathBuf>,
    /// Cap on the number of papers processed, after splitting.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct OneShotConfig {
    /// Corpus to draw the demonstration pair from, picked with the run seed.
    /// Ignored when `pipeline.one_shot` is set explicitly.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pool: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub workers: usize,
    pub out_dir: PathBuf,
    /// `live` or `mock:<fixture-dir>`.
    pub backend: String,
    /// Familiar-word list; the bundled list when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lexicon: Option<PathBuf>,
    /// Directory of `<role>.system.txt` / `<role>.user.txt` overrides.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prompts_dir: Option<PathBuf>,
    pub pipeline: PipelineConfig,
    pub sampling: SamplingParams,
    pub roles: RolesConfig,
    pub corpus: CorpusConfig,
    pub one_shot: OneShotConfig,
    pub significance: SignificanceOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            workers: 4,
            out_dir: PathBuf::from("out"),
            backend: "live".to_string(),
            lexicon: None,
            prompts_dir: None,
            pipeline: PipelineConfig::default(),
            sampling: SamplingParams::default(),
            roles: RolesConfig::default(),
            corpus: CorpusConfig::default(),
            one_shot: OneShotConfig::default(),
            significance: SignificanceOptions::default(),
        }
    }
}

/// Where role calls go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendSpec {
    Live,
    Mock(PathBuf),
}

impl BackendSpec {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s.split_once(':') {
            None if s == "live" => Ok(BackendSpec::Live),
            Some(("mock", dir)) if !dir.is_empty() => Ok(BackendSpec::Mock(PathBuf::from(dir))),
            _ => Err(ConfigError::BadBackend(s.to_string())),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.message().to_string()))
    }

    /// Loads a file. Relative paths in it are taken relative to the
    /// working directory, so a printed config reloads unchanged.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Checks values and that every referenced file exists.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.pipeline.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if self.workers == 0 {
            return Err(ConfigError::Invalid("workers must be >= 1".into()));
        }
        self.corpus.ratios.validate()?;
        let mut roles = vec![("journalist", &self.roles.journalist), ("reader", &self.roles.reader), ("editor", &self.roles.editor)];
        if let Some(r) = &self.roles.revision {
            roles.push(("revision", r));
        }
        for (name, r) in roles {
            r.endpoint.validate().map_err(|e| ConfigError::Invalid(format!("roles.{name}.endpoint: {e}")))?;
            r.sampling
                .as_ref()
                .unwrap_or(&self.sampling)
                .validate()
                .map_err(|e| ConfigError::Invalid(format!("roles.{name}.sampling: {e}")))?;
        }
        let must_exist = |what: &'static str, p: &Path, dir: bool| {
            let ok = if dir { p.is_dir() } else { p.is_file() };
            if ok {
                Ok(())
            } else {
                Err(ConfigError::MissingFile { what, path: p.display().to_string() })
            }
        };
        for f in &self.corpus.files {
            must_exist("corpus file", &f.path, false)?;
        }
        if let Some(p) = &self.lexicon {
            must_exist("lexicon", p, false)?;
        }
        if let Some(p) = &self.prompts_dir {
            must_exist("prompts directory", p, true)?;
        }
        if let Some(p) = &self.corpus.manifest {
            must_exist("split manifest", p, false)?;
        }
        if let Some(p) = &self.one_shot.pool {
            must_exist("one-shot pool", p, false)?;
        }
        if let BackendSpec::Mock(dir) = BackendSpec::parse(&self.backend)? {
            must_exist("mock fixture directory", &dir, true)?;
        }
        Ok(())
    }

    /// Reader-size lint; warnings only.
    pub fn lint(&self) -> Vec<String> {
        lint_reader_model(
            &self.roles.reader.endpoint.model_name,
            &self.roles.journalist.endpoint.model_name,
            &self.roles.editor.endpoint.model_name,
        )
    }

    /// Fills API keys from `NEWSROOM_API_KEY_<ROLE>` or `NEWSROOM_API_KEY`.
    /// Only keys are taken from the environment.
    pub fn apply_env_secrets(&mut self, lookup: impl Fn(&str) -> Option<String>) {
        let key_for = |role: &str| lookup(&format!("{API_KEY_ENV}_{}", role.to_ascii_uppercase())).or_else(|| lookup(API_KEY_ENV));
        let set = |role: &str, rc: &mut RoleConfig| {
            if let Some(k) = key_for(role).filter(|k| !k.is_empty()) {
                rc.endpoint.api_key = Some(k);
            }
        };
        set("journalist", &mut self.roles.journalist);
        set("reader", &mut self.roles.reader);
        set("editor", &mut self.roles.editor);
        if let Some(r) = self.roles.revision.as_mut() {
            set("revision", r);
        }
    }

    pub fn load_lexicon(&self) -> Result<Lexicon, ConfigError> {
        match &self.lexicon {
            None => Ok(Lexicon::dale_chall()),
            Some(p) => Lexicon::load(p).map_err(|e| ConfigError::Invalid(e.to_string())),
        }
    }

    /// Loads every corpus file and applies the configured split and limit.
    pub fn load_papers(&self) -> Result<Vec<Paper>, ConfigError> {
        let mut papers = Vec::new();
        for f in &self.corpus.files {
            papers.extend(corpus::load_jsonl(&f.path, f.dataset)?);
        }
        let mut selected = match (self.corpus.subset, &self.corpus.manifest) {
            (Subset::All, _) => papers,
            (subset, manifest) => {
                let splits = match manifest {
                    Some(m) => corpus::split_by_manifest(&papers, &corpus::load_manifest(m)?)?,
                    None => corpus::split_corpus(&papers, self.corpus.ratios, self.seed)?,
                };
                match subset {
                    Subset::Train => splits.train,
                    Subset::Validation => splits.validation,
                    _ => splits.test,
                }
            }
        };
        if let Some(n) = self.corpus.limit {
            selected.truncate(n);
        }
        Ok(selected)
    }

    /// The journalist's demonstration: explicit text, or one pair drawn from the pool.
    pub fn demonstration(&self) -> Result<Option<String>, ConfigError> {
        if let Some(text) = &self.pipeline.one_shot {
            return Ok(Some(text.clone()));
        }
        let Some(pool) = &self.one_shot.pool else { return Ok(None) };
        let candidates: Vec<Paper> = corpus::load_jsonl(pool, Dataset::Custom)?
            .into_iter()
            .filter(|p| p.reference_summary.is_some())
            .collect();
        let pick = candidates
            .choose(&mut ChaCha8Rng::seed_from_u64(self.seed))
            .ok_or_else(|| ConfigError::Invalid("one-shot pool has no paper with a summary".into()))?;
        Ok(Some(format_demonstration(&pick.abstract_text, pick.reference_summary.as_deref().unwrap_or(""))))
    }

    /// Pipeline settings with the demonstration resolved.
    pub fn pipeline_config(&self) -> Result<PipelineConfig, ConfigError> {
        Ok(PipelineConfig { one_shot: self.demonstration()?, ..self.pipeline.clone() })
    }

    fn sampling_for(&self, rc: &RoleConfig) -> SamplingParams {
        rc.sampling.clone().unwrap_or_else(|| self.sampling.clone())
    }

    /// Builds all six roles on the configured backend. No request is sent.
    pub fn build_roles(&self) -> Result<RoleSet, ConfigError> {
        let backend = BackendSpec::parse(&self.backend)?;
        let journalist_rc = &self.roles.journalist;
        let revision_rc = self.roles.revision.as_ref().unwrap_or(journalist_rc);
        let plan: [(AgentKind, &RoleConfig); 6] = [
            (AgentKind::Journalist, journalist_rc),
            (AgentKind::Reader, &self.roles.reader),
            (AgentKind::Editor, &self.roles.editor),
            (AgentKind::Revision, revision_rc),
            (AgentKind::DirectEditor, &self.roles.editor),
            (AgentKind::SelfRevision, revision_rc),
        ];
        let mut set = RoleSet::new();
        match backend {
            BackendSpec::Live => {
                // one client per distinct endpoint so connection caps are shared
                let mut clients: Vec<(EndpointConfig, Arc<dyn ChatBackend>)> = Vec::new();
                for (kind, rc) in plan {
                    let client = match clients.iter().find(|(e, _)| *e == rc.endpoint) {
                        Some((_, c)) => c.clone(),
                        None => {
                            let c: Arc<dyn ChatBackend> = Arc::new(ChatClient::new(rc.endpoint.clone()));
                            clients.push((rc.endpoint.clone(), c.clone()));
                            c
                        }
                    };
                    set.insert(self.role(kind, client, rc)?);
                }
            }
            BackendSpec::Mock(dir) => {
                let io = |e: std::io::Error| ConfigError::Io { path: dir.display().to_string(), message: e.to_string() };
                let replay: Arc<TranscriptReplay> = FixtureDirBackend::load_transcripts(&dir).map_err(io)?;
                for (kind, rc) in plan {
                    let names = match kind {
                        AgentKind::DirectEditor => vec!["direct_editor", "editor"],
                        AgentKind::SelfRevision => vec!["self_revision", "revision"],
                        k => vec![k.name()],
                    };
                    let b = FixtureDirBackend::load(&dir, &names, replay.clone()).map_err(io)?;
                    set.insert(self.role(kind, Arc::new(b), rc)?);
                }
            }
        }
        Ok(set)
    }

    fn role(&self, kind: AgentKind, backend: Arc<dyn ChatBackend>, rc: &RoleConfig) -> Result<AgentRole, ConfigError> {
        let role = AgentRole::new(kind, backend, self.sampling_for(rc));
        match &self.prompts_dir {
            Some(dir) => role.with_prompt_dir(dir).map_err(|e| ConfigError::Invalid(e.to_string())),
            None => Ok(role),
        }
    }
}
