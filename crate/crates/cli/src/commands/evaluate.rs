use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use mono2rest_core::evaluation::{
    aggregate_embedding, embed_reference_service, match_clusters, method_overlap_report,
    MatchStrategy, OverlapReport, ReferenceFile,
};
use mono2rest_core::{MatchResult, MethodRef};
use serde::Serialize;

use super::{Session, EVALUATION_JSON, EVALUATION_TXT};
use crate::artifacts::{
    read_json, read_text, write_json, write_text, ClusteringArtifact, Metadata,
};
use crate::config::PipelineConfig;
use crate::error::CliError;

#[derive(Serialize)]
struct EvaluationArtifact<'a> {
    metadata: &'a Metadata,
    matching: &'a MatchResult,
    overlap: &'a OverlapReport,
}

fn table(metadata: &Metadata, result: &MatchResult, overlap: &OverlapReport) -> String {
    let mut out = metadata.comment_lines("#");
    let width = result
        .pairs
        .iter()
        .map(|p| p.reference.len())
        .chain(std::iter::once("reference".len()))
        .max()
        .unwrap_or(0);
    let w = |out: &mut String, line: String| writeln!(out, "{line}").expect("writing to a string");
    w(
        &mut out,
        format!("{:<8} {:<width$} {:>7}", "cluster", "reference", "score"),
    );
    for p in &result.pairs {
        w(
            &mut out,
            format!(
                "{:<8} {:<width$} {:>7.4}",
                format!("c{}", p.cluster),
                p.reference,
                p.score
            ),
        );
    }
    let list = |items: Vec<String>| {
        if items.is_empty() {
            "-".to_string()
        } else {
            items.join(", ")
        }
    };
    w(
        &mut out,
        format!(
            "unmatched clusters: {}",
            list(
                result
                    .unmatched_clusters
                    .iter()
                    .map(|c| format!("c{c}"))
                    .collect()
            )
        ),
    );
    w(
        &mut out,
        format!(
            "unmatched references: {}",
            list(result.unmatched_references.clone())
        ),
    );
    w(
        &mut out,
        format!(
            "methods: {} common, {} only in monolith, {} only in reference",
            overlap.common, overlap.only_monolith, overlap.only_reference
        ),
    );
    out
}

/// Matches the clusters against the reference decomposition.
pub fn cmd_evaluate(
    cfg: &PipelineConfig,
    clustering_path: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    let session = Session::open(cfg)?;
    let reference_path = cfg
        .reference
        .as_ref()
        .ok_or_else(|| CliError::Config("no reference file given".into()))?;
    let reference = ReferenceFile::from_json(&read_text(reference_path)?)
        .map_err(|e| CliError::input(reference_path, e))?;
    let clustering: ClusteringArtifact = read_json(clustering_path)?;

    let mut clusters = Vec::new();
    for c in &clustering.clusters {
        let vectors = c
            .methods
            .iter()
            .map(|key| {
                let m =
                    MethodRef::parse_key(key).map_err(|e| CliError::input(clustering_path, e))?;
                session.embed_method(&m)
            })
            .collect::<Result<Vec<_>, _>>()?;
        clusters.push((c.id, aggregate_embedding(&vectors)?));
    }
    let services = reference
        .services
        .iter()
        .map(|s| {
            Ok((
                s.name.clone(),
                embed_reference_service(s, session.provider(), cfg.embedding_mode)?,
            ))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let strategy = if cfg.optimal_match {
        MatchStrategy::Optimal
    } else {
        MatchStrategy::Greedy
    };
    let result = match_clusters(&clusters, &services, strategy)?;

    let monolith: Vec<String> = clustering
        .clusters
        .iter()
        .flat_map(|c| c.methods.iter().cloned())
        .collect();
    let reference_methods: Vec<String> = reference
        .services
        .iter()
        .flat_map(|s| s.methods.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let overlap = method_overlap_report(&monolith, &reference_methods);

    let paths = [session.out(EVALUATION_JSON), session.out(EVALUATION_TXT)];
    write_json(
        &paths[0],
        &EvaluationArtifact {
            metadata: &session.metadata,
            matching: &result,
            overlap: &overlap,
        },
    )?;
    write_text(&paths[1], &table(&session.metadata, &result, &overlap))?;
    Ok(paths.to_vec())
}
