use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use mono2rest_core::clustering::run_optimizer;
use mono2rest_core::semantics::SimilarityMatrix;

use super::{Session, CLUSTERING_FILE, STATS_FILE};
use crate::artifacts::{
    cluster_name, read_json, write_json, write_text, ClusterEntry, ClusteringArtifact, FrontPoint,
    GraphArtifact,
};
use crate::config::PipelineConfig;
use crate::error::CliError;

const STATS_HEADER: &str =
    "generation,coupling_best,coupling_mean,cohesion_best,cohesion_mean,semsim_best,semsim_mean";

/// Embeds every method, runs the optimizer and writes the chosen
/// decomposition and per-generation statistics.
pub fn cmd_cluster(cfg: &PipelineConfig, graph_path: &Path) -> Result<Vec<PathBuf>, CliError> {
    let session = Session::open(cfg)?;
    let graph = read_json::<GraphArtifact>(graph_path)?.graph;
    let vectors = graph
        .nodes()
        .iter()
        .map(|m| session.embed_method(m))
        .collect::<Result<Vec<_>, _>>()?;
    let sim = SimilarityMatrix::build(&vectors)?;
    log::info!(
        "optimizing k={} over {} methods ({} generations, population {})",
        cfg.optimizer.k,
        graph.len(),
        cfg.optimizer.generations,
        cfg.optimizer.population_size
    );
    let run = run_optimizer(&graph, &sim, &cfg.optimizer)?;
    let chosen = run.chosen_solution().canonical();
    let objectives = *run.chosen_objectives();
    log::info!(
        "chosen: coupling {:.4}, cohesion {:.4}, semsim {:.4}",
        objectives.coupling,
        objectives.cohesion,
        objectives.semsim
    );

    let clusters = chosen
        .clusters()
        .into_iter()
        .enumerate()
        .map(|(id, members)| ClusterEntry {
            id,
            name: cluster_name(id),
            methods: members.iter().map(|&i| graph.nodes()[i].key()).collect(),
        })
        .collect();
    let pareto_front = run
        .pareto_front
        .iter()
        .enumerate()
        .map(|(i, (_, o))| FrontPoint {
            coupling: o.coupling,
            cohesion: o.cohesion,
            semsim: o.semsim,
            chosen: i == run.chosen,
        })
        .collect();
    let artifact = ClusteringArtifact {
        metadata: session.metadata.clone(),
        k: cfg.optimizer.k,
        objectives,
        semsim_normalization: cfg.optimizer.semsim_normalization,
        clusters,
        pareto_front,
        config: cfg.optimizer.clone(),
        seed: cfg.optimizer.rng_seed,
    };

    let mut csv = session.metadata.comment_lines("#");
    csv.push_str(STATS_HEADER);
    csv.push('\n');
    for s in &run.stats {
        writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            s.generation,
            s.best.coupling,
            s.mean.coupling,
            s.best.cohesion,
            s.mean.cohesion,
            s.best.semsim,
            s.mean.semsim
        )
        .expect("writing to a string");
    }

    let paths = [session.out(CLUSTERING_FILE), session.out(STATS_FILE)];
    write_json(&paths[0], &artifact)?;
    write_text(&paths[1], &csv)?;
    Ok(paths.to_vec())
}
