mod cluster;
mod evaluate;
mod extract;
mod restify;

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use mono2rest_core::restify::{parse_javap, MethodSignature};
use mono2rest_core::semantics::{
    method_terms, EmbeddingProvider, FileEmbeddings, TermList, TrigramEmbedder,
};
use mono2rest_core::{EmbeddingVector, MethodRef};

use crate::artifacts::{read_text, Metadata, TOOL_NAME, TOOL_VERSION};
use crate::config::PipelineConfig;
use crate::error::CliError;

pub use cluster::cmd_cluster;
pub use evaluate::cmd_evaluate;
pub use extract::cmd_extract;
pub use restify::cmd_restify;

pub const GRAPH_FILE: &str = "graph.json";
pub const DOT_FILE: &str = "callgraph.dot";
pub const TERMS_FILE: &str = "terms.json";
pub const CLUSTERING_FILE: &str = "clustering.json";
pub const STATS_FILE: &str = "stats.csv";
pub const API_TREE_FILE: &str = "api-tree.json";
pub const EVALUATION_JSON: &str = "evaluation.json";
pub const EVALUATION_TXT: &str = "evaluation.txt";

enum Provider {
    Trigram(TrigramEmbedder),
    File(FileEmbeddings<f64>),
}

/// Inputs shared by every stage: provider, signatures and metadata.
struct Session<'a> {
    cfg: &'a PipelineConfig,
    provider: Provider,
    signatures: BTreeMap<String, MethodSignature>,
    metadata: Metadata,
}

impl<'a> Session<'a> {
    fn open(cfg: &'a PipelineConfig) -> Result<Self, CliError> {
        cfg.check_inputs()?;
        fs::create_dir_all(&cfg.out_dir).map_err(|e| CliError::io(&cfg.out_dir, e))?;
        let provider = match (&cfg.embeddings, cfg.fallback_embedder) {
            (Some(path), false) => Provider::File(
                FileEmbeddings::from_json(&read_text(path)?)
                    .map_err(|e| CliError::input(path, e))?,
            ),
            _ => Provider::Trigram(TrigramEmbedder::default()),
        };
        let mut signatures = BTreeMap::new();
        if let Some(path) = &cfg.signatures {
            let parsed = parse_javap(&read_text(path)?);
            for w in &parsed.warnings {
                log::debug!(
                    "{}:{}: {} in {:?}",
                    path.display(),
                    w.line,
                    w.reason,
                    w.text
                );
            }
            if !parsed.warnings.is_empty() {
                log::warn!(
                    "{}: {} lines skipped",
                    path.display(),
                    parsed.warnings.len()
                );
            }
            signatures = parsed.signatures;
        }
        let mut session = Self {
            cfg,
            provider,
            signatures,
            metadata: Metadata {
                tool: TOOL_NAME.to_string(),
                version: TOOL_VERSION.to_string(),
                config_hash: cfg.fingerprint()?,
                seed: cfg.optimizer.rng_seed,
                embedding_mode: cfg.embedding_mode,
                embedding_provider: String::new(),
            },
        };
        session.metadata.embedding_provider = session.provider().id();
        Ok(session)
    }

    fn provider(&self) -> &dyn EmbeddingProvider<f64> {
        match &self.provider {
            Provider::Trigram(t) => t,
            Provider::File(f) => f,
        }
    }

    fn out(&self, name: &str) -> PathBuf {
        self.cfg.out_dir.join(name)
    }

    /// Listing entry for `method`. Constructors never appear in listings,
    /// so they get a stand-in built from the key.
    fn signature_of(&self, method: &MethodRef) -> Option<Cow<'_, MethodSignature>> {
        match self.signatures.get(&method.key()) {
            Some(sig) => Some(Cow::Borrowed(sig)),
            None if method.is_constructor() => {
                Some(Cow::Owned(MethodSignature::from_method(method)))
            }
            None => None,
        }
    }

    fn terms_of(&self, method: &MethodRef) -> Result<TermList, CliError> {
        let sig = self.signature_of(method);
        Ok(method_terms(
            method,
            sig.as_deref(),
            self.cfg.embedding_mode,
        )?)
    }

    fn embed_method(&self, method: &MethodRef) -> Result<EmbeddingVector, CliError> {
        Ok(self.provider().embed(&self.terms_of(method)?)?)
    }
}

/// Runs extract, cluster, restify and, when a reference is configured,
/// evaluate. Returns the written artifacts in order.
pub fn cmd_pipeline(cfg: &PipelineConfig) -> Result<Vec<PathBuf>, CliError> {
    let mut written = cmd_extract(cfg)?;
    let graph = cfg.out_dir.join(GRAPH_FILE);
    written.extend(cmd_cluster(cfg, &graph)?);
    let clustering = cfg.out_dir.join(CLUSTERING_FILE);
    written.extend(cmd_restify(cfg, &graph, &clustering)?);
    if cfg.reference.is_some() {
        written.extend(cmd_evaluate(cfg, &clustering)?);
    }
    Ok(written)
}
