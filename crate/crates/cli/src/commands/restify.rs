use std::path::{Path, PathBuf};

use mono2rest_core::restify::{
    build_api_tree, classify_http, export_openapi, select_exposed_methods, ApiTree, Classifier,
    ExposedOperation, ExposureReason, FileClassifier, LexiconClassifier, MethodSignature,
    PosTagger, RestifyError,
};
use mono2rest_core::semantics::{EmbeddingProvider, SemanticsError, TrigramEmbedder};
use mono2rest_core::{CallGraph, ClusteringSolution, HttpVerb};
use serde::Serialize;

use super::{Provider, Session, API_TREE_FILE};
use crate::artifacts::{
    cluster_name, read_json, read_text, write_json, ClusteringArtifact, GraphArtifact, Metadata,
};
use crate::config::PipelineConfig;
use crate::error::CliError;

#[derive(Serialize)]
struct ExposedRecord {
    method: String,
    reason: ExposureReason,
    verb: HttpVerb,
    confidence: f64,
    fallback: bool,
}

#[derive(Serialize)]
struct ClusterTree {
    id: usize,
    name: String,
    exposed: Vec<ExposedRecord>,
    tree: ApiTree,
}

#[derive(Serialize)]
struct ApiTreeArtifact<'a> {
    metadata: &'a Metadata,
    expose_roots: bool,
    clusters: Vec<ClusterTree>,
}

fn solution_for(
    graph: &CallGraph,
    clustering: &ClusteringArtifact,
) -> Result<ClusteringSolution, CliError> {
    let mut assignment = vec![None; graph.len()];
    let mut assigned = 0;
    for c in &clustering.clusters {
        for key in &c.methods {
            let slot = graph
                .index_of(key)
                .and_then(|i| assignment.get_mut(i))
                .filter(|s| s.is_none())
                .ok_or(RestifyError::ClusteringMismatch {
                    expected: graph.len(),
                    got: assigned + 1,
                })?;
            *slot = Some(c.id);
            assigned += 1;
        }
    }
    let assignment: Option<Vec<usize>> = assignment.into_iter().collect();
    let assignment = assignment.ok_or(RestifyError::ClusteringMismatch {
        expected: graph.len(),
        got: assigned,
    })?;
    Ok(ClusteringSolution::new(
        assignment,
        clustering.clusters.len(),
    )?)
}

/// Writes one OpenAPI document per cluster plus the combined URI trees.
pub fn cmd_restify(
    cfg: &PipelineConfig,
    graph_path: &Path,
    clustering_path: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    let session = Session::open(cfg)?;
    let graph = read_json::<GraphArtifact>(graph_path)?.graph;
    let clustering: ClusteringArtifact = read_json(clustering_path)?;
    let solution = solution_for(&graph, &clustering)?;

    let classifier: Box<dyn Classifier> = match &cfg.classifications {
        Some(path) => Box::new(
            FileClassifier::from_json(&read_text(path)?).map_err(|e| CliError::input(path, e))?,
        ),
        None => Box::new(LexiconClassifier),
    };
    let tagger = PosTagger::new();
    let exposed = select_exposed_methods(
        &graph,
        &solution,
        cfg.expose_roots.then_some(&session.signatures),
    )?;
    let trigram = TrigramEmbedder::default();
    let metadata_json = serde_json::to_value(&session.metadata).expect("metadata serializes");

    let mut written = Vec::new();
    let mut trees = Vec::new();
    for (id, methods) in exposed.iter().enumerate() {
        let mut ops = Vec::with_capacity(methods.len());
        let mut records = Vec::with_capacity(methods.len());
        for e in methods {
            let m = &graph.nodes()[e.node];
            let signature = session
                .signatures
                .get(&m.key())
                .cloned()
                .unwrap_or_else(|| MethodSignature::from_method(m));
            let classification = classify_http(&signature, classifier.as_ref());
            records.push(ExposedRecord {
                method: m.key(),
                reason: e.reason,
                verb: classification.verb,
                confidence: classification.confidence,
                fallback: classification.fallback,
            });
            ops.push(ExposedOperation {
                signature,
                classification,
            });
        }
        let name = cluster_name(id);
        let build = |embedder: &dyn EmbeddingProvider<f64>| {
            build_api_tree(&name, &ops, &tagger, embedder, cfg.group_threshold)
        };
        let tree = match &session.provider {
            Provider::File(file) => match build(file) {
                Err(RestifyError::Semantics(SemanticsError::UnknownText(key))) => {
                    log::warn!("{name}: embeddings file lacks {key:?}; grouping classes with the trigram embedder");
                    build(&trigram)?
                }
                other => other?,
            },
            Provider::Trigram(t) => build(t)?,
        };
        let doc = export_openapi(&tree, crate::artifacts::TOOL_VERSION, Some(&metadata_json))?;
        for w in &doc.warnings {
            log::warn!("{w}");
        }
        let path = session.out(&format!("openapi-{name}.json"));
        write_json(&path, &doc.document)?;
        written.push(path);
        trees.push(ClusterTree {
            id,
            name,
            exposed: records,
            tree,
        });
    }
    let path = session.out(API_TREE_FILE);
    write_json(
        &path,
        &ApiTreeArtifact {
            metadata: &session.metadata,
            expose_roots: session.cfg.expose_roots,
            clusters: trees,
        },
    )?;
    written.push(path);
    Ok(written)
}
