use std::fs;
use std::path::Path;

use mono2rest_core::clustering::SemSimNormalization;
use mono2rest_core::semantics::EmbeddingMode;
use mono2rest_core::{CallGraph, ObjectiveVector, OptimizerConfig};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const TOOL_NAME: &str = "mono2rest";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance block carried by every artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
    pub embedding_mode: EmbeddingMode,
    pub embedding_provider: String,
}

impl Metadata {
    /// `# key=value` lines for text artifacts.
    pub fn comment_lines(&self, prefix: &str) -> String {
        format!(
            "{prefix} tool={} version={}\n{prefix} config_hash={}\n{prefix} seed={}\n{prefix} embedding_mode={} embedding_provider={}\n",
            self.tool, self.version, self.config_hash, self.seed, self.embedding_mode, self.embedding_provider
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphArtifact {
    pub metadata: Metadata,
    /// Keys of methods with no surviving call edge, kept because the
    /// signature listing declares them.
    #[serde(default)]
    pub isolated: Vec<String>,
    pub graph: CallGraph,
}

/// One entry of the terms manifest handed to external embedders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermsEntry {
    pub key: String,
    pub terms: String,
    pub signature: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterEntry {
    pub id: usize,
    pub name: String,
    pub methods: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontPoint {
    pub coupling: f64,
    pub cohesion: f64,
    pub semsim: f64,
    pub chosen: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusteringArtifact {
    pub metadata: Metadata,
    pub k: usize,
    pub objectives: ObjectiveVector,
    pub semsim_normalization: SemSimNormalization,
    pub clusters: Vec<ClusterEntry>,
    pub pareto_front: Vec<FrontPoint>,
    pub config: OptimizerConfig,
    pub seed: u64,
}

pub(crate) fn cluster_name(id: usize) -> String {
    format!("c{id}")
}

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::input(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("artifact serializes");
    text.push('\n');
    write_text(path, &text)
}
