use std::fs;
use std::path::{Path, PathBuf};

use mono2rest_core::restify::DEFAULT_GROUP_THRESHOLD;
use mono2rest_core::semantics::EmbeddingMode;
use mono2rest_core::OptimizerConfig;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Everything a pipeline run depends on. Loaded from a TOML file whose
/// keys mirror the command-line flags; flags override file values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// java-callgraph output.
    pub edges: Option<PathBuf>,
    /// Concatenated `javap` listings.
    pub signatures: Option<PathBuf>,
    /// Precomputed embeddings; the trigram embedder is used when absent.
    pub embeddings: Option<PathBuf>,
    /// Precomputed verb classifications; the lexicon is used when absent.
    pub classifications: Option<PathBuf>,
    /// Reference decomposition; evaluation is skipped when absent.
    pub reference: Option<PathBuf>,
    pub app_prefixes: Vec<String>,
    pub embedding_mode: EmbeddingMode,
    /// Ignore `embeddings` and use the trigram embedder.
    pub fallback_embedder: bool,
    pub expose_roots: bool,
    pub group_threshold: f64,
    pub optimal_match: bool,
    pub out_dir: PathBuf,
    pub optimizer: OptimizerConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            edges: None,
            signatures: None,
            embeddings: None,
            classifications: None,
            reference: None,
            app_prefixes: Vec::new(),
            embedding_mode: EmbeddingMode::NameOnly,
            fallback_embedder: false,
            expose_roots: false,
            group_threshold: DEFAULT_GROUP_THRESHOLD,
            optimal_match: false,
            out_dir: PathBuf::from("out"),
            optimizer: OptimizerConfig::default(),
        }
    }
}

impl PipelineConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Reads a config file. Relative paths inside it are taken relative to
    /// the file's directory.
    pub fn from_toml_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Self::from_toml_str(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in cfg.input_paths_mut() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        if cfg.out_dir.is_relative() {
            cfg.out_dir = base.join(&cfg.out_dir);
        }
        Ok(cfg)
    }

    fn input_paths_mut(&mut self) -> impl Iterator<Item = &mut PathBuf> {
        [
            &mut self.edges,
            &mut self.signatures,
            &mut self.embeddings,
            &mut self.classifications,
            &mut self.reference,
        ]
        .into_iter()
        .flatten()
    }

    fn inputs(&self) -> [(&'static str, Option<&PathBuf>); 5] {
        [
            ("edges", self.edges.as_ref()),
            ("signatures", self.signatures.as_ref()),
            ("embeddings", self.embeddings.as_ref()),
            ("classifications", self.classifications.as_ref()),
            ("reference", self.reference.as_ref()),
        ]
    }

    /// Fails when a configured input file does not exist.
    pub fn check_inputs(&self) -> Result<(), CliError> {
        for (role, path) in self.inputs() {
            if let Some(p) = path {
                if !p.is_file() {
                    return Err(CliError::Config(format!(
                        "{role} file not found: {}",
                        p.display()
                    )));
                }
            }
        }
        if !(0.0..=1.0).contains(&self.group_threshold) {
            return Err(CliError::Config(format!(
                "group_threshold must lie in [0, 1], got {}",
                self.group_threshold
            )));
        }
        self.optimizer
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))
    }

    /// SHA-256 over the settings and the contents of the input files.
    /// Paths and the output directory are left out, so the same inputs in
    /// another location hash the same.
    pub fn fingerprint(&self) -> Result<String, CliError> {
        let mut settings = serde_json::to_value(self).expect("config serializes");
        let obj = settings.as_object_mut().expect("config is a map");
        obj.remove("out_dir");
        let mut inputs = serde_json::Map::new();
        for (role, path) in self.inputs() {
            obj.remove(role);
            let digest = match path {
                Some(p) => {
                    let bytes = fs::read(p).map_err(|e| CliError::io(p, e))?;
                    Value::String(hex::encode(Sha256::digest(&bytes)))
                }
                None => Value::Null,
            };
            inputs.insert(role.to_string(), digest);
        }
        let canonical = json!({"settings": settings, "inputs": inputs}).to_string();
        Ok(hex::encode(Sha256::digest(canonical.as_bytes())))
    }
}
