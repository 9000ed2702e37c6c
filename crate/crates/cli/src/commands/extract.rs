use std::path::PathBuf;

use mono2rest_core::callgraph::{export_dot, parse_callgraph_text, refine_graph};
use mono2rest_core::semantics::signature_terms;
use mono2rest_core::MethodRef;

use super::{Session, DOT_FILE, GRAPH_FILE, TERMS_FILE};
use crate::artifacts::{read_text, write_json, write_text, GraphArtifact, TermsEntry};
use crate::config::PipelineConfig;
use crate::error::CliError;

/// Parses and refines the call graph; writes the graph, its DOT rendering
/// and the terms manifest for external embedders.
pub fn cmd_extract(cfg: &PipelineConfig) -> Result<Vec<PathBuf>, CliError> {
    let session = Session::open(cfg)?;
    let edges = cfg
        .edges
        .as_ref()
        .ok_or_else(|| CliError::Config("no edges file given".into()))?;
    let parsed = parse_callgraph_text(&read_text(edges)?);
    for w in &parsed.warnings {
        log::debug!(
            "{}:{}: {} in {:?}",
            edges.display(),
            w.line,
            w.reason,
            w.text
        );
    }
    if !parsed.warnings.is_empty() {
        log::warn!(
            "{}: {} lines skipped",
            edges.display(),
            parsed.warnings.len()
        );
    }
    let declared: Vec<MethodRef> = session
        .signatures
        .values()
        .map(|s| s.method.clone())
        .collect();
    let graph = refine_graph(&parsed.records, &cfg.app_prefixes, &declared)?;
    log::info!(
        "call graph: {} methods, {} edges",
        graph.len(),
        graph.edges().len()
    );

    let terms = graph
        .nodes()
        .iter()
        .map(|m| {
            let sig = session.signature_of(m);
            Ok(TermsEntry {
                key: m.key(),
                terms: session.terms_of(m)?.text(),
                signature: Some(signature_terms(m, sig.as_deref())),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let isolated: Vec<String> = graph
        .isolated_nodes()
        .into_iter()
        .map(|i| graph.nodes()[i].key())
        .collect();
    if !isolated.is_empty() {
        log::info!("{} declared methods have no call edges", isolated.len());
    }
    let dot = format!(
        "{}{}",
        session.metadata.comment_lines("//"),
        export_dot(&graph, None)?
    );
    let paths = [
        session.out(GRAPH_FILE),
        session.out(DOT_FILE),
        session.out(TERMS_FILE),
    ];
    write_json(
        &paths[0],
        &GraphArtifact {
            metadata: session.metadata.clone(),
            isolated,
            graph,
        },
    )?;
    write_text(&paths[1], &dot)?;
    write_json(&paths[2], &terms)?;
    Ok(paths.to_vec())
}
